"""Cluster combinatorics of valued quivers with a finite-field cross-check."""

__version__ = "0.1.0"
