"""Reflection complexity of infinite words."""

__version__ = "0.1.0"
