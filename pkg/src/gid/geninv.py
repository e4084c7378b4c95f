"""Generalized inverses over F_q and the solution spaces they parameterize.

A generalized inverse (GI) of ``A`` is any ``X`` with ``A X A = A``. Given a
decomposition ``P A Q = [V | I_r]`` every GI has the form

    X = Q [X1; I_r - V X1] P,       X1 arbitrary of size k x r,

so ``X b = Q [X1 b_bar; b_bar - V X1 b_bar]`` with ``b_bar = P b``. Since
``X1 b_bar`` reaches every vector of F_q^k when ``b_bar != 0``, the products
``X b`` sweep the whole coset ``{x : A x = b}``.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import CapExceeded, ConfigError, DimensionMismatch, NotAGI, ZeroSyndrome, ZeroVector
from .field import PrimeField, as_field
from .matrix import (
    Form,
    Transformation,
    decompose,
    inverse,
    mat_mul,
    mat_vec,
    row_echelon,
)

ENUM_CAP = 1 << 24


def is_gi(A: np.ndarray, X: np.ndarray, field: PrimeField | int) -> bool:
    """True iff ``A X A = A``."""
    F = as_field(field)
    A = np.asarray(A)
    X = np.asarray(X)
    m, n = A.shape
    if X.shape != (n, m):
        raise DimensionMismatch(f"a GI of a {m}x{n} matrix must be {n}x{m}, got {X.shape}")
    return bool(np.array_equal(mat_mul(mat_mul(A, X, F), A, F), F.asarray(A)))


def _require_prange(T: Transformation) -> None:
    if not T.is_prange:
        raise ConfigError(f"expected a [V | I_r] transformation, got {T.form.name}")


class GenInverse:
    """A GI ``X``, optionally tied to its block parameterization ``(T, X1)``.

    With an origin, :meth:`apply` evaluates ``X b`` from two small products
    without materializing ``X``; :attr:`X` is built on first access.
    """

    def __init__(
        self,
        field: PrimeField | int,
        X: np.ndarray | None = None,
        T: Transformation | None = None,
        X1: np.ndarray | None = None,
    ) -> None:
        self.field = as_field(field)
        if X is None and (T is None or X1 is None):
            raise ConfigError("need either X or a (transformation, X1) origin")
        if T is not None:
            _require_prange(T)
            X1 = self.field.asarray(X1)
            if X1.shape != (T.k, T.r):
                raise DimensionMismatch(f"X1 must be {T.k}x{T.r}, got {X1.shape}")
        self.T = T
        self.X1 = X1
        if X is not None:
            self.__dict__["X"] = self.field.asarray(X)

    @property
    def has_origin(self) -> bool:
        return self.T is not None

    @cached_property
    def X2(self) -> np.ndarray:
        """``I_r - V X1``."""
        F, T = self.field, self.T
        return F.asarray(F.identity(T.r).astype(np.int64) - mat_mul(T.V, self.X1, F))

    @cached_property
    def X(self) -> np.ndarray:
        F, T = self.field, self.T
        inner = mat_mul(np.vstack([self.X1, self.X2]), T.P, F)
        return T.Q.apply(inner)

    @property
    def shape(self) -> tuple[int, int]:
        if self.T is not None:
            return (self.T.n, self.T.m)
        return self.X.shape

    def apply(self, b: np.ndarray) -> np.ndarray:
        """``X b``."""
        F = self.field
        if self.T is None:
            return mat_vec(self.X, b, F)
        T = self.T
        s_bar = mat_vec(T.P, b, F)
        z1 = mat_vec(self.X1, s_bar, F)
        z2 = F.asarray(s_bar.astype(np.int64) - mat_vec(T.V, z1, F))
        return T.Q.apply(np.concatenate([z1, z2]))

    def __repr__(self) -> str:
        n, m = self.shape
        return f"GenInverse({n}x{m} over F_{self.field.q}, origin={self.has_origin})"


def gi_from_x1(T: Transformation, X1: np.ndarray) -> GenInverse:
    """The GI ``Q [X1; I_r - V X1] P`` of the matrix ``T`` was computed for."""
    return GenInverse(T.field, T=T, X1=X1)


def prange_gi(T: Transformation) -> GenInverse:
    """``Q [0; I_r] P``."""
    return gi_from_x1(T, T.field.zeros((T.k, T.r)))


def enumerate_x1(T: Transformation, cap: int = ENUM_CAP) -> Iterator[np.ndarray]:
    """All ``k x r`` matrices over F_q, lexicographic in row-major entry order."""
    _require_prange(T)
    q, k, r = T.field.q, T.k, T.r
    if q ** (k * r) > cap:
        raise CapExceeded(f"q^(k*r) = {q}^{k * r} exceeds the enumeration cap {cap}")
    for entries in itertools.product(range(q), repeat=k * r):
        yield np.array(entries, dtype=T.field.dtype).reshape(k, r)


def enumerate_gi(T: Transformation, cap: int = ENUM_CAP) -> Iterator[GenInverse]:
    """Every GI of the decomposed matrix, one per ``X1``, ``q^(k r)`` in total."""
    for X1 in enumerate_x1(T, cap):
        yield gi_from_x1(T, X1)


def steer_x1(T: Transformation, s_bar: np.ndarray, w: np.ndarray) -> np.ndarray:
    """A ``k x r`` matrix ``X1`` with ``X1 s_bar = w``.

    Only column ``j`` is filled, ``j`` being the first index with
    ``s_bar[j] != 0``; it holds ``w * s_bar[j]^{-1}``.
    """
    F = T.field
    s_bar = F.asarray(s_bar).reshape(-1)
    w = F.asarray(w).reshape(-1)
    if s_bar.size != T.r or w.size != T.k:
        raise DimensionMismatch(f"need |s_bar| = {T.r} and |w| = {T.k}")
    nz = np.flatnonzero(s_bar)
    if nz.size == 0:
        raise ZeroSyndrome("cannot steer X1 s_bar when s_bar = 0")
    j = nz[0]
    X1 = F.zeros((T.k, T.r))
    X1[:, j] = (w.astype(np.int64) * F.inv(int(s_bar[j]))) % F.q
    return X1


def solution_from_z1(T: Transformation, s_bar: np.ndarray, z1: np.ndarray) -> np.ndarray:
    """``Q [z1; s_bar - V z1]``, the coset element with ``X1 s_bar = z1``."""
    F = T.field
    z2 = F.asarray(np.asarray(s_bar, dtype=np.int64) - mat_vec(T.V, z1, F))
    return T.Q.apply(np.concatenate([F.asarray(z1), z2]))


def null_from_w(T: Transformation, b_bar: np.ndarray, w: np.ndarray) -> np.ndarray:
    """The kernel vector ``Q [w; -V w]``.

    Here ``w`` stands for ``Z b_bar``; as ``Z`` ranges over all ``k x r``
    matrices it covers F_q^k whenever ``b_bar != 0``.
    """
    _require_prange(T)
    F = T.field
    if not np.any(np.asarray(b_bar)):
        raise ZeroVector("b_bar must be nonzero")
    w = F.asarray(w).reshape(-1)
    if w.size != T.k:
        raise DimensionMismatch(f"|w| must be k = {T.k}")
    lower = F.asarray(-mat_vec(T.V, w, F).astype(np.int64))
    return T.Q.apply(np.concatenate([w, lower]))


def steer_support(T: Transformation, b: np.ndarray, targets) -> tuple[np.ndarray, GenInverse]:
    """Solve ``A x = b`` with a prescribed support on the free positions.

    ``T`` is one of the identity-block forms. The free positions are the
    images under ``Q`` of the columns outside the identity block, and
    ``targets`` (1-based) must be a subset of them. The returned ``x``
    satisfies ``Supp(x) & free = targets``; the GI producing it is returned
    as well. Requires ``(P b)`` to be nonzero on the first ``r`` rows.
    """
    F = T.field
    m, n, r = T.m, T.n, T.r
    if T.form in (Form.LEFT_ID_FULL, Form.LEFT_ID_DEFICIENT):
        ident, free = np.arange(r), np.arange(r, n)
        C = T.blocks["A2"]
    elif T.form in (Form.RIGHT_ID_FULL, Form.RIGHT_ID_DEFICIENT):
        ident, free = np.arange(n - r, n), np.arange(n - r)
        C = T.blocks["V" if T.form is Form.RIGHT_ID_FULL else "A1"]
    else:
        raise ConfigError(f"support steering is not defined for {T.form.name}")
    b_top = mat_vec(T.P, b, F)[:r]
    nz = np.flatnonzero(b_top)
    if nz.size == 0:
        raise ZeroVector("(P b) vanishes on the identity rows")
    j = nz[0]
    perm = T.Q.perm
    free_pos = {int(perm[c]) + 1: i for i, c in enumerate(free)}
    targets = set(int(t) for t in targets)
    if not targets <= set(free_pos):
        raise ConfigError("targets must lie in the free positions")
    # rows of X on the free positions: a single entry in column j each
    Xfree = F.zeros((free.size, m))
    for pos in targets:
        Xfree[free_pos[pos], j] = 1
    # rows on the identity positions: I_r - C Xfree, restricted to the first r columns
    Xid = F.zeros((r, m))
    Xid[:, :r] = F.asarray(F.identity(r).astype(np.int64) - mat_mul(C, Xfree[:, :r], F))
    inner = F.zeros((n, m))
    inner[ident] = Xid
    inner[free] = Xfree
    X = T.Q.apply(mat_mul(inner, T.P, F))
    return mat_vec(X, b, F), GenInverse(F, X=X)


def gi_to_prange_pair(
    A: np.ndarray,
    X: np.ndarray | GenInverse,
    field: PrimeField | int,
    T: Transformation | None = None,
    rng: np.random.Generator | int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Rewrite a GI ``X`` of a full-row-rank ``A`` as ``Qb [0; I_r] Pb``.

    Writes ``X = Q [X1; X2] P`` for some Prange pair ``(P, Q)``, factors the
    full-column-rank stack ``M = [X1; X2] = Z [0; I_r] Y`` by column
    elimination and returns ``(Pb, Qb) = (Y P, Q Z)``. Then
    ``Pb A Qb = [Vb | I_r]``. ``Qb`` is in general not a permutation.
    Both identities are rechecked before returning.
    """
    F = as_field(field)
    A = F.asarray(A)
    if isinstance(X, GenInverse):
        X = X.X
    X = F.asarray(X)
    m, n = A.shape
    if X.shape != (n, m) or not is_gi(A, X, F):
        raise NotAGI("X is not a generalized inverse of A")
    if T is None:
        T = decompose(A, F, Form.RIGHT_ID_FULL, rng)
    _require_prange(T)
    r = T.r
    M = mat_mul(T.Q.apply_inverse(X), inverse(T.P, F), F)  # [X1; X2], n x r

    # r independent rows R of M; Y = M[R] and C = M Y^{-1} is the identity on R
    _, R = row_echelon(M.T, F)
    if len(R) != r:
        raise NotAGI("[X1; X2] does not have full column rank")
    Y = M[R]
    C = mat_mul(M, inverse(Y, F), F)
    others = [i for i in range(n) if i not in set(R)]
    Z = F.zeros((n, n))
    Z[others, np.arange(n - r)] = 1
    Z[:, n - r :] = C

    P_bar = mat_mul(Y, T.P, F)
    Q_bar = mat_mul(T.q_matrix(), Z, F)
    zero_id = np.vstack([F.zeros((n - r, r)), F.identity(r)])
    if not np.array_equal(mat_mul(mat_mul(Q_bar, zero_id, F), P_bar, F), X):
        raise AssertionError("column elimination did not reproduce X")
    PHQ = mat_mul(mat_mul(P_bar, A, F), Q_bar, F)
    if not np.array_equal(PHQ[:, n - r :], F.identity(r)):
        raise AssertionError("Pb A Qb does not end in I_r")
    return P_bar, Q_bar
