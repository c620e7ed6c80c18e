"""Suzuki 2-group toolkit."""

__version__ = "0.1.0"
