"""Exact computer algebra for physical conformal superalgebras."""

__version__ = "0.1.0"
