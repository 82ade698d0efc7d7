"""Seeded generators for NFV resource-allocation experiments."""

__version__ = "0.1.0"
