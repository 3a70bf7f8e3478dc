"""Exact values, spectral bounds and semidefinite bounds for biindependent pairs
in bipartite graphs."""

__version__ = "0.1.0"
