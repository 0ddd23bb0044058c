"""Exact computations for rank-2 generalized cluster scattering diagrams."""

__version__ = "0.1.0"
