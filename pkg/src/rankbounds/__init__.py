"""Exact rank lower bounds and verified decompositions over Q."""

__version__ = "1.0.0"
