"""Spectral-radius extremal graphs with bounded maximum degree."""

__version__ = "0.1.0"
