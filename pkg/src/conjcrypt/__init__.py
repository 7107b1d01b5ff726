"""Simulation laboratory for conjugate-coding probabilistic encryption."""

__version__ = "0.1.0"
