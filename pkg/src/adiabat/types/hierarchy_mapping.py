from collections import abc
from typing import Any, Iterable, Iterator, Mapping, Tuple, Union


OtherMapping = Mapping[str, Any]
KVPair = Tuple[str, Any]
Items = Iterable[KVPair]


def normalize_key(key: str) -> str:
    """
    Normalize a dotted key: surrounding whitespace is dropped and dashes become underscores, so that
    `tolerance.max-steps` and `tolerance.max_steps` address the same entry.

    :param key: The key to normalize
    :return: The normalized key
    """
    key = key.strip().replace('-', '_')
    if not key or any(not part for part in key.split('.')):
        raise KeyError(f'Malformed key {repr(key)}')

    return key


class HierarchyMapping(abc.MutableMapping):
    """
    A mapping whose keys are dotted paths into nested sections. After
    ```
    hm = HierarchyMapping({'provider': {'name': 'hirzebruch', 'a': 1}})
    ```
    the leaves are reachable as `hm['provider.name']` and sections as attributes, `hm.provider.a`.
    Iteration yields the dotted leaf keys in insertion order, which keeps serialized output stable.
    """
    def __init__(self, data: Union[OtherMapping, Items] = None):
        """
        Initialize the `HierarchyMapping` instance.

        :param data: Nested mappings or (dotted key, value) pairs to start from.
        """
        super().__setattr__('_data', {})
        if data is not None:
            if isinstance(data, abc.Mapping):
                data = data.items()

            for key, value in data:
                self[key] = value

    def __repr__(self) -> str:
        return f'HierarchyMapping({self.serialize()!r})'

    def _walk(self, path: str, create: bool = False) -> Tuple['HierarchyMapping', str]:
        """
        Resolve the section holding the last component of `path`.

        :param path: A normalized dotted key
        :param create: Whether missing sections are created on the way
        :return: The holding section and the last component
        """
        section = self
        *parents, leaf = path.split('.')
        for name in parents:
            child = section._data.get(name)
            if child is None and create:
                child = HierarchyMapping()
                section._data[name] = child

            if not isinstance(child, HierarchyMapping):
                raise KeyError(path)

            section = child

        return section, leaf

    def __getitem__(self, key: str) -> Any:
        section, leaf = self._walk(normalize_key(key))
        try:
            return section._data[leaf]
        except KeyError as err:
            raise KeyError(key) from err

    def __setitem__(self, key: str, value: Any):
        section, leaf = self._walk(normalize_key(key), create=True)
        if isinstance(value, abc.Mapping):
            value = HierarchyMapping(value)

        section._data[leaf] = value

    def __delitem__(self, key: str):
        section, leaf = self._walk(normalize_key(key))
        try:
            del section._data[leaf]
        except KeyError as err:
            raise KeyError(key) from err

    def __contains__(self, key: object) -> bool:
        if not isinstance(key, str):
            return False

        try:
            self[key]
        except KeyError:
            return False

        return True

    def __iter__(self) -> Iterator[str]:
        for name, value in self._data.items():
            if isinstance(value, HierarchyMapping):
                for inner in value:
                    yield f'{name}.{inner}'
            else:
                yield name

    def __len__(self) -> int:
        return sum(1 for _ in self)

    def __getattr__(self, item: str) -> Any:
        try:
            return self._data[item]
        except KeyError as err:
            raise AttributeError(f'Member {repr(item)} doesn\'t exist under {repr(self)}') from err

    def __setattr__(self, item: str, value: Any):
        self[item] = value

    def copy(self) -> 'HierarchyMapping':
        """
        Deep-copies this HierarchyMapping.

        :return: The deep copy
        """
        return HierarchyMapping(self.serialize())

    def serialize(self) -> dict:
        """
        Return nested plain dicts, suitable for `json.dump`.

        :return: The serializable object.
        """
        return {
            name: value.serialize() if isinstance(value, HierarchyMapping) else value
            for name, value in self._data.items()
        }

    @staticmethod
    def deserialize(state) -> 'HierarchyMapping':
        """
        Deserialize the returned value of `serialize`.

        :param state: The returned value of `serialize`
        :return: The deserialized object
        """
        if not isinstance(state, dict):
            raise ValueError('Invalid state')

        return HierarchyMapping(state)
