"""Exact generation and identity checking for generalized Fibonacci polynomials."""

__version__ = "0.1.0"
