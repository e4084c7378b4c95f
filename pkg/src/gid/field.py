"""Arithmetic in prime fields F_q and Hamming weight utilities.

Field elements are plain integers (or numpy arrays of integers) stored as
canonical residues in ``[0, q)``. Vectors and matrices throughout the package
are numpy arrays with dtype :attr:`PrimeField.dtype`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import FieldError, ZeroInverse

MAX_ORDER = 1 << 16


def is_prime(q: int) -> bool:
    """Trial-division primality test."""
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_q.

    Parameters
    ----------
    q : int
        A prime at most ``2**16``. Prime powers (extension fields) are rejected.
    """

    q: int

    def __post_init__(self) -> None:
        q = self.q
        if not isinstance(q, (int, np.integer)) or isinstance(q, bool):
            raise FieldError(f"field order must be an integer, got {q!r}")
        object.__setattr__(self, "q", int(q))
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
        if not is_prime(q):
            raise FieldError(f"q={q} is not prime; only prime fields F_q are supported")

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.uint8) if self.q <= 256 else np.dtype(np.uint16)

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def inv(self, a: int) -> int:
        """Multiplicative inverse of ``a``; raises :class:`ZeroInverse` for 0."""
        a = int(a) % self.q
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.q}")
        return pow(a, self.q - 2, self.q)

    @functools.cached_property
    def inv_table(self) -> np.ndarray:
        """Lookup table ``t`` with ``t[a] = a^{-1}`` (and ``t[0] = 0``)."""
        table = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            table[a] = pow(a, self.q - 2, self.q)
        return table

    # -- arrays ------------------------------------------------------------

    def asarray(self, values) -> np.ndarray:
        """Reduce arbitrary integers to canonical residues."""
        arr = np.asarray(values)
        if arr.size == 0:
            return arr.astype(self.dtype)
        if arr.dtype.kind not in "iub":
            raise FieldError(f"expected integer entries, got dtype {arr.dtype}")
        return np.mod(arr.astype(np.int64), self.q).astype(self.dtype)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=self.dtype)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64).astype(self.dtype)

    def random_nonzero(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(1, self.q, size=shape, dtype=np.int64).astype(self.dtype)


GF2 = PrimeField(2)


def as_field(field: PrimeField | int) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


def weight(v) -> int:
    """Hamming weight: the number of nonzero entries."""
    return int(np.count_nonzero(v))


def support(v) -> tuple[int, ...]:
    """1-based sorted positions of the nonzero entries of ``v``."""
    return tuple(int(i) + 1 for i in np.flatnonzero(np.asarray(v)))


def weight_support(v) -> tuple[int, tuple[int, ...]]:
    """Return ``(weight, support)`` of ``v`` with a 1-based support."""
    supp = support(v)
    return len(supp), supp
