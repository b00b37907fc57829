"""Polycyclic group cryptography workbench."""

from .platform import PlatformGroup, by_name, resolve
from .rng import Rng

__version__ = "0.1.0"

__all__ = ["PlatformGroup", "Rng", "by_name", "resolve"]
