"""Exact-arithmetic realization-space models for polytopes and cones."""

__version__ = "0.1.0"
