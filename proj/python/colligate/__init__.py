"""Realization, multiplication and factorization of Schur-Agler colligations."""

from ._core import *  # noqa: F401,F403
from ._core import Error, NoWitnessError, Variant  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
