# Import the providers so they register themselves with the factory
from .geometry import providers

__version__ = '0.1.0'
