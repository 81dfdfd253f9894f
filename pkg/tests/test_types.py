import pytest
from adiabat.types import HierarchyMapping, ObjectFactory


def test_hierarchy_mapping():
    """
    Test dotted access, attribute access and serialization of nested sections
    """
    mapping = HierarchyMapping({'provider': {'name': 'hirzebruch', 'a': 1}})
    mapping['flow.max-steps'] = 10
    assert mapping['provider.name'] == 'hirzebruch', 'Leaves are reachable by dotted keys'
    assert mapping.provider.a == 1, 'Sections are reachable as attributes'
    assert list(mapping) == ['provider.name', 'provider.a', 'flow.max_steps'], 'Keys keep insertion order'
    assert 'flow.max_steps' in mapping and 'flow.dt' not in mapping, 'Membership follows the leaves'

    copied = mapping.copy()
    copied['provider.a'] = 2
    assert mapping['provider.a'] == 1, 'Copies are deep'
    assert HierarchyMapping.deserialize(mapping.serialize()) == mapping, 'Serialized state restores the mapping'

    del mapping['provider.a']
    assert len(mapping) == 2, 'Deleted leaves are gone'

    with pytest.raises(KeyError):
        mapping['provider..name']

    with pytest.raises(AttributeError):
        getattr(mapping, 'grid')


def test_object_factory():
    """
    Test registration and creation of named builders
    """
    factory = ObjectFactory()

    @factory.builder('pair')
    def pair(first, second=0):
        return first, second

    assert factory.names == ('pair',), 'Builders are listed by name'
    assert factory.create('pair', 1, second=2) == (1, 2), 'Arguments are forwarded'

    with pytest.raises(KeyError):
        factory.register('pair', pair)

    with pytest.raises(ValueError):
        factory.create('triple')
