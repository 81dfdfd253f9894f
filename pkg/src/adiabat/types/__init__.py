from .hierarchy_mapping import HierarchyMapping
from .object_factory import ObjectFactory
