"""Exact desk-scale machinery for multiclass versus binary learnability."""

__version__ = "0.1.0"
