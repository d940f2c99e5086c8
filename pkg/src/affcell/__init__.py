"""Exact affine Hecke and affine q-Schur algebra computations in type A~."""

from .coeff import LaurentHalf
from .weyl import AffinePerm, from_window, compose, inverse, omega, simple

__version__ = "0.1.0"

__all__ = ["LaurentHalf", "AffinePerm", "from_window", "compose", "inverse", "omega", "simple"]
