"""Exact computations with lines on quartic surfaces in P^3."""
__version__ = "0.1.0"
