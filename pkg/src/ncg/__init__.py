"""Exact engine for noncommutative differential geometry on finite groups and
the 2D bicrossproduct spacetime."""

__version__ = "0.1.0"
