"""Exact Clebsch-Gordan algebra, spin-orbit factorization and projector matrix elements."""
from .exactnum import CQSqrt, QSqrt
from .wigner import HalfInt, cg, sixj, two

__version__ = "0.1.0"

__all__ = ["QSqrt", "CQSqrt", "HalfInt", "cg", "sixj", "two", "__version__"]
