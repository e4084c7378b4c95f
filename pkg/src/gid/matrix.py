"""Dense matrices over F_q and canonical-form decompositions ``P A Q``.

Matrices are 2-D numpy arrays of canonical residues. The decompositions
return a :class:`Transformation` recording an invertible ``P``, a column
permutation ``Q`` and the blocks of the resulting canonical shape, e.g.
``P A Q = [V | I_r]`` for :attr:`Form.RIGHT_ID_FULL`.

Over F_2 the elimination runs on rows packed into 64-bit words, so row
operations are word-parallel XORs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigError, DimensionMismatch, NotFullRank, RetryExhausted
from .field import PrimeField, as_field

MAX_RETRIES = 100

# float64 products are exact while every partial sum stays below 2**53
_FLOAT_EXACT = 1 << 53


def mat_mul(A: np.ndarray, B: np.ndarray, field: PrimeField | int) -> np.ndarray:
    """Product ``A @ B`` over F_q (also accepts a vector ``B``)."""
    F = as_field(field)
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or B.ndim not in (1, 2):
        raise DimensionMismatch(f"cannot multiply arrays of shapes {A.shape} and {B.shape}")
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"inner dimensions differ: {A.shape} x {B.shape}")
    inner = A.shape[1]
    if inner * (F.q - 1) ** 2 < _FLOAT_EXACT:
        prod = A.astype(np.float64) @ B.astype(np.float64)
        return np.mod(prod, F.q).astype(F.dtype)
    prod = A.astype(np.int64) @ B.astype(np.int64)
    return np.mod(prod, F.q).astype(F.dtype)


def mat_vec(A: np.ndarray, x: np.ndarray, field: PrimeField | int) -> np.ndarray:
    return mat_mul(A, np.asarray(x).reshape(-1), field)


def random_matrix(rng: np.random.Generator, m: int, n: int, field: PrimeField | int) -> np.ndarray:
    return as_field(field).random(rng, (m, n))


def random_full_rank(rng: np.random.Generator, m: int, n: int, field: PrimeField | int) -> np.ndarray:
    """Uniform ``m x n`` matrix of rank ``min(m, n)``, by rejection."""
    F = as_field(field)
    while True:
        A = F.random(rng, (m, n))
        if rank(A, F) == min(m, n):
            return A


# ---------------------------------------------------------------------------
# Elimination kernels
# ---------------------------------------------------------------------------


class _Singular(Exception):
    pass


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix row-wise into little-endian uint64 words."""
    m, n = bits.shape
    nbytes = -(-n // 64) * 8
    packed = np.zeros((m, nbytes), dtype=np.uint8)
    if n:
        raw = np.packbits(bits.astype(np.uint8), axis=1, bitorder="little")
        packed[:, : raw.shape[1]] = raw
    return packed.view(np.uint64)


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :n].astype(np.uint8)


def _bit_column(words: np.ndarray, c: int) -> np.ndarray:
    return ((words[:, c >> 6] >> np.uint64(c & 63)) & np.uint64(1)).astype(bool)


def _eliminate_gf2(W: np.ndarray, slots, cols) -> None:
    assigned = np.zeros(W.shape[0], dtype=bool)
    for slot, c in zip(slots, cols):
        col = _bit_column(W, c)
        cand = np.flatnonzero(col & ~assigned)
        if cand.size == 0:
            raise _Singular
        p = cand[0]
        if p != slot:
            W[[p, slot]] = W[[slot, p]]
            col[[p, slot]] = col[[slot, p]]
        col[slot] = False
        rows = np.flatnonzero(col)
        if rows.size:
            W[rows] ^= W[slot]
        assigned[slot] = True


def _work_dtype(F: PrimeField) -> np.dtype:
    # q * (q - 1) + q must fit the working type
    return np.dtype(np.uint16) if F.q < 256 else np.dtype(np.int64)


def _eliminate_modq(W: np.ndarray, slots, cols, F: PrimeField) -> None:
    q = F.q
    assigned = np.zeros(W.shape[0], dtype=bool)
    for slot, c in zip(slots, cols):
        cand = np.flatnonzero((W[:, c] != 0) & ~assigned)
        if cand.size == 0:
            raise _Singular
        p = cand[0]
        if p != slot:
            W[[p, slot]] = W[[slot, p]]
        piv = int(W[slot, c])
        if piv != 1:
            W[slot] = (W[slot] * F.inv(piv)) % q
        rows = np.flatnonzero(W[:, c])
        rows = rows[rows != slot]
        if rows.size:
            # adding (q - c) * pivot row keeps everything non-negative
            W[rows] = (W[rows] + np.outer(q - W[rows, c], W[slot])) % q
        assigned[slot] = True


def _pivot_columns(A: np.ndarray, F: PrimeField, slots, cols, with_p: bool = True):
    """Gauss-Jordan on ``[A | I]`` making column ``cols[j]`` the unit vector
    ``e_{slots[j]}``. Returns ``(reduced A, P)``; raises :class:`_Singular`."""
    m, n = A.shape
    aug = np.hstack([A, F.identity(m)]) if with_p else A
    if F.q == 2:
        W = _pack(aug)
        _eliminate_gf2(W, slots, cols)
        out = _unpack(W, aug.shape[1])
    else:
        W = aug.astype(_work_dtype(F))
        _eliminate_modq(W, slots, cols, F)
        out = W.astype(F.dtype)
    if with_p:
        return out[:, :n], out[:, n:]
    return out, None


def row_echelon(A: np.ndarray, field: PrimeField | int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the 0-based pivot columns."""
    F = as_field(field)
    A = np.asarray(A)
    m, n = A.shape
    if F.q == 2:
        W = _pack(A)
        row = 0
        pivots = []
        for c in range(n):
            if row == m:
                break
            col = _bit_column(W, c)
            col[:row] = False
            cand = np.flatnonzero(col)
            if cand.size == 0:
                continue
            p = cand[0]
            if p != row:
                W[[p, row]] = W[[row, p]]
            col = _bit_column(W, c)
            col[row] = False
            rows = np.flatnonzero(col)
            if rows.size:
                W[rows] ^= W[row]
            pivots.append(c)
            row += 1
        return _unpack(W, n), pivots
    q = F.q
    W = A.astype(np.int64) % q
    row = 0
    pivots = []
    for c in range(n):
        if row == m:
            break
        cand = np.flatnonzero(W[row:, c]) + row
        if cand.size == 0:
            continue
        p = cand[0]
        if p != row:
            W[[p, row]] = W[[row, p]]
        W[row] = (W[row] * F.inv(int(W[row, c]))) % q
        rows = np.flatnonzero(W[:, c])
        rows = rows[rows != row]
        if rows.size:
            W[rows] = (W[rows] - np.outer(W[rows, c], W[row])) % q
        pivots.append(c)
        row += 1
    return W.astype(F.dtype), pivots


def rank(A: np.ndarray, field: PrimeField | int) -> int:
    """Row rank over F_q."""
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(row_echelon(A, field)[1])


def inverse(A: np.ndarray, field: PrimeField | int) -> np.ndarray:
    """Inverse of a square matrix; raises :class:`NotFullRank` if singular."""
    F = as_field(field)
    A = np.asarray(A)
    m, n = A.shape
    if m != n:
        raise DimensionMismatch(f"only square matrices are invertible, got {A.shape}")
    try:
        _, P = _pivot_columns(A, F, range(n), range(n))
    except _Singular:
        raise NotFullRank("matrix is singular") from None
    return P


def is_invertible(A: np.ndarray, field: PrimeField | int) -> bool:
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and rank(A, field) == A.shape[0]


# ---------------------------------------------------------------------------
# Permutations and transformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Permutation:
    """Column permutation ``Q`` with ``(A Q)[:, j] = A[:, perm[j]]``.

    ``perm`` is 0-based; :meth:`mapping` gives the 1-based map ``j -> pi_Q(j)``.
    """

    perm: np.ndarray

    def __post_init__(self) -> None:
        perm = np.asarray(self.perm, dtype=np.int64)
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(perm.size)):
            raise ValueError("perm must be a bijection of range(n)")
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(np.arange(n))

    def __len__(self) -> int:
        return int(self.perm.size)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.perm, other.perm)

    def __hash__(self) -> int:
        return hash(self.perm.tobytes())

    def mapping(self) -> tuple[int, ...]:
        return tuple(int(p) + 1 for p in self.perm)

    def image(self, lo: int, hi: int) -> set[int]:
        """``pi_Q([lo, hi])`` for a 1-based closed interval."""
        return {int(self.perm[j - 1]) + 1 for j in range(lo, hi + 1)}

    def inverse(self) -> Permutation:
        return Permutation(np.argsort(self.perm))

    def matrix(self, field: PrimeField | int) -> np.ndarray:
        F = as_field(field)
        n = len(self)
        Q = F.zeros((n, n))
        Q[self.perm, np.arange(n)] = 1
        return Q

    def apply(self, z: np.ndarray) -> np.ndarray:
        """``Q z``."""
        z = np.asarray(z)
        out = np.empty_like(z)
        out[self.perm] = z
        return out

    def apply_inverse(self, x: np.ndarray) -> np.ndarray:
        """``Q^{-1} x``."""
        return np.asarray(x)[self.perm]

    def permute_columns(self, A: np.ndarray) -> np.ndarray:
        """``A Q``."""
        return np.asarray(A)[:, self.perm]


class Form(enum.Enum):
    RIGHT_ID_FULL = "right_id_full"  # [V | I_r]
    LEFT_ID_FULL = "left_id_full"  # [I_r | A2]
    RIGHT_ID_DEFICIENT = "right_id_deficient"  # [A1 I_r; 0 0]
    LEFT_ID_DEFICIENT = "left_id_deficient"  # [I_r A2; 0 0]
    PARTIAL_GE = "partial_ge"  # [V1 0; V3 I_{r-l}]
    MULTI_ID = "multi_id"  # [V1 I_l1 0 ..; V2 0 I_l2 ..; ..]


@dataclass(frozen=True, eq=False)
class Transformation:
    """A decomposition ``P A Q`` in one of the canonical shapes of :class:`Form`.

    ``blocks`` holds the non-trivial blocks of the canonical shape:

    =====================  ===========================================
    RIGHT_ID_FULL          ``V``  (r x k)
    LEFT_ID_FULL           ``A2`` (r x k)
    RIGHT_ID_DEFICIENT     ``A1`` (r x (n - r))
    LEFT_ID_DEFICIENT      ``A2`` (r x (n - r))
    PARTIAL_GE             ``V1`` (l x (k + l)), ``V3`` ((r - l) x (k + l))
    MULTI_ID               ``V`` and its row blocks ``V1``, ``V2``, ...
    =====================  ===========================================
    """

    field: PrimeField
    P: np.ndarray
    Q: Permutation
    form: Form
    r: int
    shape: tuple[int, int]
    blocks: dict[str, np.ndarray] = dc_field(default_factory=dict)
    ells: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return self.shape[0]

    @property
    def n(self) -> int:
        return self.shape[1]

    @property
    def k(self) -> int:
        """Number of columns outside the identity block."""
        return self.n - self.r

    @property
    def degenerate(self) -> bool:
        return self.form is Form.PARTIAL_GE and self.ells[0] == self.r

    @property
    def is_prange(self) -> bool:
        """True when ``P A Q = [V | I_r]`` with ``r = m``."""
        if self.form in (Form.RIGHT_ID_FULL, Form.MULTI_ID):
            return True
        return self.form is Form.PARTIAL_GE and self.ells[0] == 0

    @property
    def V(self) -> np.ndarray:
        """The ``V`` of ``P A Q = [V | I_r]`` for Prange-shaped forms."""
        if self.form in (Form.RIGHT_ID_FULL, Form.MULTI_ID):
            return self.blocks["V"]
        if self.form is Form.PARTIAL_GE and self.ells[0] == 0:
            return self.blocks["V3"]
        raise ConfigError(f"form {self.form.name} has no [V | I_r] shape")

    def q_matrix(self) -> np.ndarray:
        return self.Q.matrix(self.field)

    def canonical(self) -> np.ndarray:
        """The canonical matrix ``P A Q`` must equal, rebuilt from the blocks."""
        F, (m, n), r = self.field, self.shape, self.r
        out = F.zeros((m, n))
        b = self.blocks
        if self.form in (Form.RIGHT_ID_FULL, Form.MULTI_ID):
            out[:, : n - r] = b["V"]
            out[:, n - r :] = F.identity(r)
        elif self.form is Form.LEFT_ID_FULL:
            out[:, :r] = F.identity(r)
            out[:, r:] = b["A2"]
        elif self.form is Form.RIGHT_ID_DEFICIENT:
            out[:r, : n - r] = b["A1"]
            out[:r, n - r :] = F.identity(r)
        elif self.form is Form.LEFT_ID_DEFICIENT:
            out[:r, :r] = F.identity(r)
            out[:r, r:] = b["A2"]
        elif self.form is Form.PARTIAL_GE:
            ell = self.ells[0]
            width = n - (r - ell)
            out[:ell, :width] = b["V1"]
            out[ell:, :width] = b["V3"]
            out[ell:, width:] = F.identity(r - ell)
        return out

    def verify(self, A: np.ndarray) -> bool:
        """Recheck ``P A Q`` against :meth:`canonical` by multiplication."""
        PAQ = mat_mul(mat_mul(self.P, A, self.field), self.q_matrix(), self.field)
        return bool(np.array_equal(PAQ, self.canonical()))


def _draw_and_pivot(A, F, rng, slots, cols, max_retries):
    """Retry random column permutations until the pivot block is invertible."""
    n = A.shape[1]
    for _ in range(max_retries):
        perm = rng.permutation(n)
        try:
            reduced, P = _pivot_columns(A[:, perm], F, slots, cols)
        except _Singular:
            continue
        return Permutation(perm), reduced, P
    return None


def _full_rank_or_raise(A, F) -> None:
    if rank(A, F) < A.shape[0]:
        raise NotFullRank(f"matrix of shape {A.shape} does not have full row rank")


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def decompose(
    A: np.ndarray,
    field: PrimeField | int,
    form: Form = Form.RIGHT_ID_FULL,
    rng: np.random.Generator | int | None = None,
    *,
    max_retries: int = MAX_RETRIES,
) -> Transformation:
    """Bring ``A`` into a canonical shape ``P A Q`` with ``Q`` a random permutation.

    The identity block sits on the last (right forms) or first (left forms)
    ``r`` columns of the randomly permuted matrix; when those columns are
    singular a fresh permutation is drawn, up to ``max_retries`` times.
    """
    F = as_field(field)
    A = F.asarray(A)
    rng = _rng(rng)
    m, n = A.shape
    if form in (Form.PARTIAL_GE, Form.MULTI_ID):
        raise ConfigError(f"use decompose_partial/decompose_multi for {form.name}")

    if form in (Form.RIGHT_ID_FULL, Form.LEFT_ID_FULL):
        if m > n:
            raise NotFullRank(f"{m} x {n} matrix cannot have full row rank")
        r = m
    else:
        r = rank(A, F)
    right = form in (Form.RIGHT_ID_FULL, Form.RIGHT_ID_DEFICIENT)
    cols = list(range(n - r, n)) if right else list(range(r))
    got = _draw_and_pivot(A, F, rng, range(r), cols, max_retries)
    if got is None:
        if form in (Form.RIGHT_ID_FULL, Form.LEFT_ID_FULL):
            _full_rank_or_raise(A, F)
        raise RetryExhausted(f"no invertible pivot block after {max_retries} permutations")
    Q, reduced, P = got
    if r < m and np.any(reduced[r:]):
        raise AssertionError("zero row block expected below the identity block")
    if right:
        key = "V" if form is Form.RIGHT_ID_FULL else "A1"
        blocks = {key: reduced[:r, : n - r].copy()}
    else:
        blocks = {"A2": reduced[:r, r:].copy()}
    return Transformation(F, P, Q, form, r, (m, n), blocks)


def decompose_partial(
    A: np.ndarray,
    ell: int,
    field: PrimeField | int,
    rng: np.random.Generator | int | None = None,
    *,
    max_retries: int = MAX_RETRIES,
) -> Transformation:
    """Partial elimination ``P A Q = [V1 0; V3 I_{r-ell}]``.

    ``V1`` is ``ell x (k + ell)`` and ``V3`` is ``(r - ell) x (k + ell)``.
    ``ell = 0`` gives ``[V | I_r]``; ``ell = r`` leaves no identity block and
    the result is flagged :attr:`Transformation.degenerate`.
    """
    F = as_field(field)
    A = F.asarray(A)
    rng = _rng(rng)
    m, n = A.shape
    if m > n:
        raise NotFullRank(f"{m} x {n} matrix cannot have full row rank")
    r = m
    if not 0 <= ell <= r:
        raise ConfigError(f"ell={ell} must lie in [0, {r}]")
    width = n - (r - ell)
    got = _draw_and_pivot(A, F, rng, range(ell, r), range(width, n), max_retries)
    if got is None:
        _full_rank_or_raise(A, F)
        raise RetryExhausted(f"no invertible pivot block after {max_retries} permutations")
    Q, reduced, P = got
    if ell == r:
        _full_rank_or_raise(A, F)
    blocks = {"V1": reduced[:ell, :width].copy(), "V3": reduced[ell:, :width].copy()}
    return Transformation(F, P, Q, Form.PARTIAL_GE, r, (m, n), blocks, (ell,))


def decompose_multi(
    A: np.ndarray,
    ells,
    field: PrimeField | int,
    rng: np.random.Generator | int | None = None,
    *,
    max_retries: int = MAX_RETRIES,
) -> Transformation:
    """Block-identity form ``P A Q = [V1 I_l1 0 ..; V2 0 I_l2 ..; ..]``.

    This is ``[V | I_r]`` with ``V`` cut into row blocks of heights
    ``ells`` plus a final block of height ``r - sum(ells)`` when positive.
    """
    F = as_field(field)
    ells = tuple(int(e) for e in ells)
    m = np.asarray(A).shape[0]
    if any(e < 0 for e in ells) or sum(ells) > m:
        raise ConfigError(f"block heights {ells} must be non-negative and sum to at most r={m}")
    T = decompose(A, F, Form.RIGHT_ID_FULL, rng, max_retries=max_retries)
    heights = ells + ((m - sum(ells),) if sum(ells) < m else ())
    V = T.blocks["V"]
    blocks = {"V": V}
    start = 0
    for i, h in enumerate(heights, 1):
        blocks[f"V{i}"] = V[start : start + h].copy()
        start += h
    return Transformation(F, T.P, T.Q, Form.MULTI_ID, T.r, T.shape, blocks, heights)


def from_prange_pair(A: np.ndarray, P: np.ndarray, Q: Permutation, field: PrimeField | int) -> Transformation:
    """Wrap a known pair with ``P A Q = [V | I_m]`` as a :class:`Transformation`."""
    F = as_field(field)
    A = F.asarray(A)
    m, n = A.shape
    PAQ = Q.permute_columns(mat_mul(P, A, F))
    if not np.array_equal(PAQ[:, n - m :], F.identity(m)):
        raise ConfigError("P A Q does not end in an identity block")
    return Transformation(F, F.asarray(P), Q, Form.RIGHT_ID_FULL, m, (m, n), {"V": PAQ[:, : n - m]})
