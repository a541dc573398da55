"""Exact arithmetic for Markoff m-triples with two k-Fibonacci components."""

__version__ = "0.1.0"
