"""Exact-arithmetic polytope engine with flag-counting identity checks."""

__version__ = "0.1.0"
