"""Greedy routing on planar triangulations with rank coordinates."""

__version__ = "0.1.0"
