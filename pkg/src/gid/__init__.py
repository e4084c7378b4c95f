"""Generalized-inverse-based decoding over prime fields."""

from .errors import *  # noqa: F401,F403
from .field import GF2, PrimeField, support, weight, weight_support

__version__ = "0.1.0"
