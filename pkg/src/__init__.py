"""Exact star-product engine package initialization."""

__version__ = "1.0.0"
