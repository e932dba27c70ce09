"""Engel-like characterizations of radicals: exact Lie algebra and finite group workbench."""

__version__ = "0.1.0"
