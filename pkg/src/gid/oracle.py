"""Brute-force ground truth for small instances.

Everything here is deliberately naive and self-contained: it has its own
row reduction over plain Python integers and does not call into
:mod:`gid.matrix` or :mod:`gid.geninv`, so it can serve as an independent
check of those modules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import Inconsistent, TooLarge

COSET_CAP = 1 << 22


def _rref(rows: list[list[int]], q: int) -> tuple[list[list[int]], list[int]]:
    rows = [[v % q for v in row] for row in rows]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = pow(rows[r][c], q - 2, q)
        rows[r] = [v * inv % q for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def particular_and_kernel(A, b, q: int) -> tuple[list[int], list[list[int]]]:
    """One solution of ``A x = b`` and a basis of the kernel of ``A``."""
    A = np.asarray(A, dtype=np.int64).tolist()
    b = [int(v) for v in np.asarray(b).reshape(-1)]
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [A[i] + [b[i]] for i in range(m)]
    red, pivots = _rref(aug, q)
    if n in pivots:
        raise Inconsistent("b is not in the column space of A")
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = red[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-red[i][f]) % q
        basis.append(v)
    return x, basis


@dataclass
class OracleReport:
    solutions: np.ndarray  # one solution per row
    min_weight: int
    count: int

    @property
    def min_nonzero_weight(self) -> int | None:
        w = np.count_nonzero(self.solutions, axis=1)
        w = w[w > 0]
        return int(w.min()) if w.size else None

    def as_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(v) for v in row) for row in self.solutions}


def enum_coset(A, b, q: int, cap: int = COSET_CAP) -> OracleReport:
    """All solutions of ``A x = b``: a particular solution plus the kernel."""
    x, basis = particular_and_kernel(A, b, q)
    d = len(basis)
    if q**d > cap:
        raise TooLarge(f"{q}^{d} solutions exceed the cap {cap}")
    n = len(x)
    coeffs = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.int64).reshape(q**d, d)
    N = np.array(basis, dtype=np.int64).reshape(d, n)
    sols = (np.array(x, dtype=np.int64) + coeffs @ N) % q
    weights = np.count_nonzero(sols, axis=1)
    return OracleReport(sols.astype(np.uint16 if q > 256 else np.uint8), int(weights.min()), len(sols))


def min_coset_weight(A, b, q: int) -> int:
    return enum_coset(A, b, q).min_weight


def min_codeword_weight(H, q: int) -> int:
    """Minimum weight of a nonzero vector in the kernel of ``H``."""
    H = np.asarray(H)
    rep = enum_coset(H, np.zeros(H.shape[0], dtype=np.int64), q)
    w = rep.min_nonzero_weight
    if w is None:
        raise Inconsistent("the kernel is trivial")
    return w


def brute_solutions(A, b, q: int) -> set[tuple[int, ...]]:
    """Solutions of ``A x = b`` by trying all ``q^n`` vectors (tiny ``n`` only)."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64) % q
    n = A.shape[1]
    allx = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
    ok = np.all((allx @ A.T) % q == b, axis=1)
    return {tuple(int(v) for v in row) for row in allx[ok]}


def brute_gi_count(A, q: int) -> int:
    """Number of ``X`` with ``A X A = A``, by trying all ``q^(mn)`` matrices."""
    A = np.asarray(A, dtype=np.int64)
    m, n = A.shape
    total = 0
    # batch over the entries of X to keep this vectorized
    allX = np.array(list(itertools.product(range(q), repeat=m * n)), dtype=np.int64)
    for chunk in np.array_split(allX, max(1, len(allX) // 65536)):
        Xs = chunk.reshape(-1, n, m)
        prod = np.einsum("ij,bjk,kl->bil", A, Xs, A) % q
        total += int(np.all(prod == A % q, axis=(1, 2)).sum())
    return total


# ---------------------------------------------------------------------------
# Gilbert-Varshamov style thresholds
# ---------------------------------------------------------------------------


def gv_threshold(n: int, k: int, q: int) -> int:
    """Weight at which a random ``[n, k]_q`` coset stops having a unique small solution.

    Smallest ``t`` with ``sum_{i<=t} C(n, i) >= q^(n-k)``: the point where
    the number of binary supports of weight at most ``t`` reaches the number
    of syndromes. Exact integer arithmetic; returns ``n`` if never reached
    and ``0`` when ``k = n``.
    """
    target = q ** (n - k)
    acc = 0
    for t in range(n + 1):
        acc += comb(n, t)
        if acc >= target:
            return t
    return n


def gv_report(n: int, k: int, q: int) -> dict[str, int]:
    """The threshold under several common conventions, for comparison."""
    target = q ** (n - k)
    out = {"threshold": gv_threshold(n, k, q)}

    def largest_le(term) -> int:
        acc, best = 0, 0
        for t in range(n + 1):
            acc += term(t)
            if acc <= target:
                best = t
            else:
                break
        return best

    qary = lambda i: comb(n, i) * (q - 1) ** i  # noqa: E731
    out["qary_ball_le"] = largest_le(qary)
    # adjacent convention: the sum stops at t - 1
    out["qary_ball_le_adjacent"] = min(n, largest_le(qary) + 1)
    out["binary_ball_le"] = largest_le(lambda i: comb(n, i))
    out["single_term_ge"] = next((t for t in range(n + 1) if comb(n, t) >= target), n)
    return out
