"""Exact symbol calculus for constant-rank differential operators."""

__version__ = "0.1.0"
