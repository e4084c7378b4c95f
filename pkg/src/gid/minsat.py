"""Reduction of MIN-CWP(F_2) and MIN-SWP(F_2) to MIN-SAT(affine).

For ``A`` (m x n, full row rank) fix ``P A Q = [A1 | I_m]`` and Boolean
variables ``z_1 .. z_{n-m}``. The reduced instance has exactly ``n``
constraints, in this order:

* ``z_i = 1`` for ``i = 1 .. n-m``;
* for every row ``j`` of ``A1``: ``(P b)_j - (A1 z)_j = 1``, i.e. the XOR of
  ``z`` over the support of that row equals ``1 + (P b)_j`` (``b = 0`` for
  the kernel version).

An assignment ``g`` lifts to ``x = Q [g; P b - A1 g]``, a solution of
``A x = b`` whose weight is exactly the number of constraints ``g``
satisfies.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, FormatError, NotFullRank, TooManyVars, WrongField, ZeroVector
from .field import GF2, PrimeField, as_field
from .matrix import Form, Transformation, decompose, mat_vec, rank

MAX_BRUTE_VARS = 24


@dataclass(frozen=True)
class AffineConstraint:
    """``XOR_{v in vars} g(v) = rhs`` over 1-based variable indices."""

    vars: tuple[int, ...]
    rhs: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(sorted(int(v) for v in self.vars)))
        if self.rhs not in (0, 1):
            raise ValueError("rhs must be 0 or 1")
        if len(set(self.vars)) != len(self.vars) or any(v < 1 for v in self.vars):
            raise ValueError("variables must be distinct positive indices")

    def satisfied(self, g) -> bool:
        return (sum(int(g[v - 1]) for v in self.vars) & 1) == self.rhs


@dataclass(frozen=True)
class MinSatInstance:
    n_vars: int
    constraints: tuple[AffineConstraint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if c.vars and c.vars[-1] > self.n_vars:
                raise ValueError(f"constraint uses variable {c.vars[-1]} > n_vars={self.n_vars}")

    def masks(self) -> tuple[np.ndarray, np.ndarray]:
        """Per constraint an integer mask (variable 1 is the most significant bit) and the rhs."""
        masks = np.array(
            [sum(1 << (self.n_vars - v) for v in c.vars) for c in self.constraints], dtype=np.uint64
        )
        rhs = np.array([c.rhs for c in self.constraints], dtype=np.uint64)
        return masks, rhs


@dataclass(frozen=True, eq=False)
class LiftContext:
    """Data needed to map assignments back to vectors."""

    P: np.ndarray
    Q: np.ndarray  # the permutation as 0-based ``perm`` (A Q = A[:, perm])
    A1: np.ndarray
    Pb: np.ndarray | None  # None for the kernel version
    m: int
    n: int
    seed: int | None = None

    @property
    def kernel(self) -> bool:
        return self.Pb is None

    def check(self, A: np.ndarray) -> bool:
        """Recheck ``P A Q = [A1 | I_m]``."""
        from .matrix import mat_mul

        PAQ = mat_mul(self.P, np.asarray(A), GF2)[:, self.Q]
        return bool(np.array_equal(PAQ, np.hstack([self.A1, GF2.identity(self.m)])))


def _check_input(A, field) -> np.ndarray:
    F = as_field(field)
    if F.q != 2:
        raise WrongField(f"the reduction is defined over F_2, got F_{F.q}")
    A = F.asarray(A)
    m, n = A.shape
    if m >= n or rank(A, F) != m:
        raise NotFullRank("A must have full row rank m < n")
    return A


def _transform(A, seed, transformation: Transformation | None) -> Transformation:
    if transformation is None:
        transformation = decompose(A, GF2, Form.RIGHT_ID_FULL, np.random.default_rng(seed))
    if not transformation.is_prange:
        raise ConfigError("the reduction needs P A Q = [A1 | I_m]")
    return transformation


def _build(A1: np.ndarray, Pb: np.ndarray | None) -> MinSatInstance:
    m, k = A1.shape
    cons = [AffineConstraint((i,), 1) for i in range(1, k + 1)]
    for j in range(m):
        rhs = 1 if Pb is None else 1 ^ int(Pb[j])
        cons.append(AffineConstraint(tuple(int(i) + 1 for i in np.flatnonzero(A1[j])), rhs))
    return MinSatInstance(k, tuple(cons))


def reduce_cwp(
    A, b, field: PrimeField | int = 2, seed: int | None = 0, transformation: Transformation | None = None
) -> tuple[MinSatInstance, LiftContext]:
    """MIN-SAT(affine) instance for ``min weight(x) s.t. A x = b`` over F_2."""
    A = _check_input(A, field)
    b = GF2.asarray(b).reshape(-1)
    if not np.any(b):
        raise ZeroVector("b = 0: use reduce_swp")
    T = _transform(A, seed, transformation)
    Pb = mat_vec(T.P, b, GF2)
    ctx = LiftContext(T.P, T.Q.perm, T.V, Pb, A.shape[0], A.shape[1], seed)
    return _build(T.V, Pb), ctx


def reduce_swp(
    A, field: PrimeField | int = 2, seed: int | None = 0, transformation: Transformation | None = None
) -> tuple[MinSatInstance, LiftContext]:
    """MIN-SAT(affine) instance for ``min weight(x) s.t. A x = 0`` over F_2."""
    A = _check_input(A, field)
    T = _transform(A, seed, transformation)
    ctx = LiftContext(T.P, T.Q.perm, T.V, None, A.shape[0], A.shape[1], seed)
    return _build(T.V, None), ctx


def lift(ctx: LiftContext, g) -> np.ndarray:
    """``Q [g; P b - A1 g]`` (``P b`` omitted for the kernel version)."""
    g = GF2.asarray(g).reshape(-1)
    if g.size != ctx.n - ctx.m:
        raise ValueError(f"assignment must have {ctx.n - ctx.m} bits")
    lower = mat_vec(ctx.A1, g, GF2)
    if ctx.Pb is not None:
        lower = lower ^ ctx.Pb
    x = np.empty(ctx.n, dtype=np.uint8)
    x[ctx.Q] = np.concatenate([g, lower])
    return x


def _as_ints(assignments: np.ndarray, n_vars: int) -> np.ndarray:
    bits = np.asarray(assignments, dtype=np.uint64).reshape(-1, n_vars)
    shifts = np.arange(n_vars - 1, -1, -1, dtype=np.uint64)
    return (bits << shifts).sum(axis=1, dtype=np.uint64)


def _counts(masks: np.ndarray, rhs: np.ndarray, codes: np.ndarray) -> np.ndarray:
    par = np.bitwise_count(codes[:, None] & masks[None, :]) & np.uint8(1)
    return np.count_nonzero(par == rhs[None, :].astype(np.uint8), axis=1)


def count_satisfied(inst: MinSatInstance, g) -> int:
    """Number of constraints satisfied by the assignment ``g``."""
    g = np.asarray(g).reshape(-1)
    if g.size != inst.n_vars:
        raise ValueError(f"assignment must have {inst.n_vars} bits")
    return sum(1 for c in inst.constraints if c.satisfied(g))


def count_satisfied_many(inst: MinSatInstance, assignments) -> np.ndarray:
    """Vectorized :func:`count_satisfied` over the rows of ``assignments``."""
    masks, rhs = inst.masks()
    if not len(masks):
        return np.zeros(len(np.asarray(assignments)), dtype=np.int64)
    return _counts(masks, rhs, _as_ints(assignments, inst.n_vars))


def all_assignments(n_vars: int) -> np.ndarray:
    """All ``2^n_vars`` assignments, lexicographic with variable 1 first."""
    codes = np.arange(1 << n_vars, dtype=np.uint64)
    shifts = np.arange(n_vars - 1, -1, -1, dtype=np.uint64)
    return ((codes[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)


def _scan(inst: MinSatInstance):
    """Yield ``(codes, counts)`` chunks over every assignment in lexicographic order."""
    nv = inst.n_vars
    masks, rhs = inst.masks()
    total = 1 << nv
    step = 1 << 16
    for lo in range(0, total, step):
        codes = np.arange(lo, min(total, lo + step), dtype=np.uint64)
        if len(masks):
            counts = _counts(masks, rhs, codes)
        else:
            counts = np.zeros(len(codes), dtype=np.int64)
        yield codes, counts


def _bits(code: int, n_vars: int) -> np.ndarray:
    return np.array([(code >> (n_vars - 1 - i)) & 1 for i in range(n_vars)], dtype=np.uint8)


def brute_minsat(inst: MinSatInstance) -> tuple[np.ndarray, int]:
    """Exhaustive minimum: ``(g*, mu*)`` with ``g*`` the lexicographically
    smallest minimizer (variable 1 most significant)."""
    nv = inst.n_vars
    if nv > MAX_BRUTE_VARS:
        raise TooManyVars(f"{nv} variables exceed the brute-force limit {MAX_BRUTE_VARS}")
    best_code, best = 0, None
    for codes, counts in _scan(inst):
        i = int(np.argmin(counts))
        if best is None or counts[i] < best:
            best, best_code = int(counts[i]), int(codes[i])
    return _bits(best_code, nv), int(best)


@dataclass
class SwpReport:
    """Outcome of the kernel reduction.

    The global minimum of the reduced instance is always attained by
    ``g = 0``, which lifts to ``x = 0``. Nonzero kernel vectors correspond
    to nonzero ``g``, so the best of those is reported separately.
    """

    mu_star: int
    gamma_star: np.ndarray
    x_star: np.ndarray
    nonzero_mu: int | None
    nonzero_gamma: np.ndarray | None
    nonzero_x: np.ndarray | None

    @property
    def zero_minimizer(self) -> bool:
        return not np.any(self.x_star)


def solve_swp_report(inst: MinSatInstance, ctx: LiftContext) -> SwpReport:
    g, mu = brute_minsat(inst)
    nv = inst.n_vars
    best_code, best = None, None
    for codes, counts in _scan(inst):
        counts = counts.copy()
        if codes[0] == 0:
            counts[0] = np.iinfo(np.int64).max
        i = int(np.argmin(counts))
        if codes[i] != 0 and (best is None or counts[i] < best):
            best, best_code = int(counts[i]), int(codes[i])
    if best_code is None:
        return SwpReport(mu, g, lift(ctx, g), None, None, None)
    gn = _bits(best_code, nv)
    return SwpReport(mu, g, lift(ctx, g), best, gn, lift(ctx, gn))


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def dumps_affsat(inst: MinSatInstance) -> str:
    out = io.StringIO()
    out.write(f"p affsat {inst.n_vars} {len(inst.constraints)}\n")
    for c in inst.constraints:
        out.write(" ".join(str(v) for v in (c.rhs, len(c.vars), *c.vars)) + "\n")
    return out.getvalue()


def loads_affsat(text: str) -> MinSatInstance:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise FormatError("empty affsat file")
    head = lines[0].split()
    if len(head) != 4 or head[:2] != ["p", "affsat"]:
        raise FormatError("first line must be 'p affsat <n_vars> <n_constraints>'")
    try:
        nv, nc = int(head[2]), int(head[3])
        cons = []
        for ln in lines[1:]:
            toks = [int(t) for t in ln.split()]
            rhs, k, vs = toks[0], toks[1], toks[2:]
            if len(vs) != k:
                raise FormatError(f"constraint line declares {k} variables but lists {len(vs)}")
            cons.append(AffineConstraint(tuple(vs), rhs))
    except (ValueError, IndexError) as exc:
        raise FormatError(f"malformed affsat file: {exc}") from None
    if len(cons) != nc:
        raise FormatError(f"expected {nc} constraints, found {len(cons)}")
    try:
        return MinSatInstance(nv, tuple(cons))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_affsat(inst: MinSatInstance, path) -> None:
    Path(path).write_bytes(dumps_affsat(inst).encode("ascii"))


def read_affsat(path) -> MinSatInstance:
    return loads_affsat(Path(path).read_bytes().decode("ascii"))


def dumps_assignment(g) -> str:
    return "".join(str(int(b)) for b in np.asarray(g).reshape(-1)) + "\n"


def loads_assignment(text: str, n_vars: int | None = None) -> np.ndarray:
    s = text.strip()
    if not s or set(s) - {"0", "1"}:
        raise FormatError("assignment must be a single line of 0/1 characters")
    if n_vars is not None and len(s) != n_vars:
        raise FormatError(f"assignment has {len(s)} bits, expected {n_vars}")
    return np.array([int(c) for c in s], dtype=np.uint8)
