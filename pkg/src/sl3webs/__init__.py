"""Exact SL3 web and cluster computations."""

__version__ = "0.1.0"
