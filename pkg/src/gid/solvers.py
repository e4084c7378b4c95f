"""GI-based decoders for the coset weight problem (CWP/SDP) and the subspace
weight problem (SWP/LWP).

Every strategy works on a transformation ``P H Q = [V | I_r]`` (or the
partial form ``[V1 0; V3 I_{r-l}]``) and produces vectors

    x = Q [z1; s_bar - V z1]        (coset: H x = s,  s_bar = P s)
    v = Q [w;  -V w]                (kernel: H v = 0)

where the head ``z1`` (resp. ``w``) plays the role of ``X1 s_bar`` for some
GI ``X``. Strategies differ only in which heads they visit:

==================  ==========================================================
prange              the zero head (``X1 = 0``)
lee_brickell        every head of weight exactly ``p``
leon                weight-``p`` heads whose tail vanishes on the first ``l`` rows
stern               sums of weight-``p`` heads on the two halves of the
                    information set, matched on the first ``l`` rows
finiasz_sendrier    weight-``p`` heads over the ``k + l`` columns of the partial
                    form solving ``V1 z1 = s_bar_1``
multi_decomp        a sum of independently steered weight-``p`` heads, one per
                    row block of ``V``
gi_random           ``X1 s_bar`` for uniformly random ``X1`` (nonzero product)
==================  ==========================================================

Candidates are produced in batches; a batch holds dense heads, tails and
weights for many candidates at once.
"""

from __future__ import annotations

import itertools
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator

import numpy as np

from .errors import ConfigError, DimensionMismatch, NotFullRank, ZeroSyndrome
from .field import PrimeField, as_field
from .matrix import Form, Transformation, decompose, decompose_multi, decompose_partial, mat_vec, rank

KINDS = ("prange", "lee_brickell", "leon", "stern", "finiasz_sendrier", "multi_decomp", "gi_random")
MAX_KEY_BITS = 62
_CHUNK = 4096


# ---------------------------------------------------------------------------
# Problem statements and configuration
# ---------------------------------------------------------------------------


def _check_parity_matrix(H: np.ndarray, F: PrimeField) -> np.ndarray:
    H = F.asarray(H)
    if H.ndim != 2:
        raise DimensionMismatch("H must be a matrix")
    r, n = H.shape
    if r >= n:
        raise ConfigError(f"H must have fewer rows than columns, got {H.shape}")
    if rank(H, F) != r:
        raise NotFullRank("H does not have full row rank")
    return H


@dataclass(frozen=True, eq=False)
class SdpInstance:
    """Find ``x`` with ``H x = s`` and ``weight(x) <= t``."""

    H: np.ndarray
    s: np.ndarray
    t: int
    field: PrimeField

    def __post_init__(self) -> None:
        F = as_field(self.field)
        object.__setattr__(self, "field", F)
        H = _check_parity_matrix(self.H, F)
        s = F.asarray(self.s).reshape(-1)
        if s.size != H.shape[0]:
            raise DimensionMismatch(f"syndrome length {s.size} != {H.shape[0]}")
        if not np.any(s):
            raise ZeroSyndrome("syndromes must be nonzero")
        if not 0 <= self.t <= H.shape[1]:
            raise ConfigError(f"t={self.t} outside [0, n]")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "s", s)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.H.shape[1]

    @property
    def r(self) -> int:
        return self.H.shape[0]

    @property
    def k(self) -> int:
        return self.n - self.r


@dataclass(frozen=True, eq=False)
class LwpInstance:
    """Find a nonzero ``x`` with ``H x = 0`` and ``weight(x) <= t``."""

    H: np.ndarray
    t: int
    field: PrimeField

    def __post_init__(self) -> None:
        F = as_field(self.field)
        object.__setattr__(self, "field", F)
        H = _check_parity_matrix(self.H, F)
        if not 0 <= self.t <= H.shape[1]:
            raise ConfigError(f"t={self.t} outside [0, n]")
        object.__setattr__(self, "H", H)

    q = SdpInstance.q
    n = SdpInstance.n
    r = SdpInstance.r
    k = SdpInstance.k


@dataclass(frozen=True)
class StrategyConfig:
    """Which heads to visit.

    ``p`` is the head weight (per block for ``multi_decomp``), ``ell`` the
    window length for leon/stern/finiasz_sendrier and ``ell_list`` the
    block heights for ``multi_decomp``. ``None`` picks a per-strategy
    default when the instance size is known (see :meth:`resolved`).
    """

    kind: str = "prange"
    p: int | None = None
    ell: int | None = None
    ell_list: tuple[int, ...] = ()
    samples_per_decomposition: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown strategy {self.kind!r}; choose from {', '.join(KINDS)}")
        object.__setattr__(self, "ell_list", tuple(int(v) for v in self.ell_list))
        for name in ("p", "ell", "samples_per_decomposition"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"{name} must be non-negative")

    def resolved(self, k: int, r: int, q: int) -> StrategyConfig:
        """Fill defaults and validate the parameters against ``k``, ``r`` and ``q``."""
        kind, p, ell, ells = self.kind, self.p, self.ell, self.ell_list
        if p is None:
            p = {"prange": 0, "stern": 1, "finiasz_sendrier": 2}.get(kind, 1)
        if kind == "prange" and p != 0:
            raise ConfigError("prange takes no head weight")
        if kind == "finiasz_sendrier" and ell is None:
            # common ISD choice, not tuned
            ell = max(0, math.ceil(math.log2(max(1, math.comb(k // 2, p)))))
            ell = min(ell, r, MAX_KEY_BITS // max(1, (q - 1).bit_length()), 30)
        if ell is None:
            ell = 0
        if kind == "multi_decomp" and not ells:
            ells = (r // 2,) if r >= 2 else ()
        if p > k:
            raise ConfigError(f"p={p} exceeds k={k}")
        if ell > r:
            raise ConfigError(f"ell={ell} exceeds r={r}")
        if sum(ells) > r or any(e < 0 for e in ells):
            raise ConfigError(f"block heights {ells} must be non-negative with sum <= r={r}")
        if kind == "stern" and p > (k + 1) // 2:
            raise ConfigError(f"stern needs p <= ceil(k/2) = {(k + 1) // 2}")
        if kind in ("stern", "finiasz_sendrier"):
            if kind == "stern" and q == 2 and ell > 30:
                raise ConfigError("ell must be at most 30")
            if ell * (q - 1).bit_length() > MAX_KEY_BITS:
                raise ConfigError(f"ell={ell} too large for word-sized keys over F_{q}")
        if kind == "finiasz_sendrier" and p > k + ell:
            raise ConfigError(f"p={p} exceeds k + ell")
        return StrategyConfig(kind, p, ell, ells, self.samples_per_decomposition, self.seed)


@dataclass(frozen=True)
class Budget:
    """Stopping rule: decompositions, samples per decomposition, wall clock."""

    max_decompositions: int = 100
    max_samples_per_decomposition: int | None = None  # None: 10 * k
    wall_clock_limit: float | None = None

    def __post_init__(self) -> None:
        if self.max_decompositions <= 0:
            raise ConfigError("max_decompositions must be positive")
        if self.max_samples_per_decomposition is not None and self.max_samples_per_decomposition <= 0:
            raise ConfigError("max_samples_per_decomposition must be positive")
        if self.wall_clock_limit is not None and self.wall_clock_limit <= 0:
            raise ConfigError("wall_clock_limit must be positive")


@dataclass
class DecodeResult:
    found: bool
    x: np.ndarray | None
    weight: int | None
    decompositions_used: int
    samples_used: int
    elapsed: float
    seed: int | None
    metadata: dict = dc_field(default_factory=dict)

    @property
    def outcome(self) -> str:
        return "Found" if self.found else "Fail"


def verify_solution(inst: SdpInstance | LwpInstance, x) -> bool:
    """Recheck the postcondition of a solver output."""
    F = inst.field
    x = np.asarray(x)
    if x.shape != (inst.n,) or x.dtype.kind not in "iub" or np.any(x < 0) or np.any(x >= F.q):
        return False
    Hx = mat_vec(inst.H, x, F)
    w = int(np.count_nonzero(x))
    if isinstance(inst, SdpInstance):
        return bool(np.array_equal(Hx, inst.s)) and w <= inst.t
    return w > 0 and not np.any(Hx) and w <= inst.t


# ---------------------------------------------------------------------------
# Head patterns and batches
# ---------------------------------------------------------------------------


@dataclass
class Batch:
    """Candidates ``z = [head; tail]`` in the permuted coordinates of ``Q``."""

    head: np.ndarray  # B x width
    tail: np.ndarray  # B x (n - width)
    weight: np.ndarray  # B

    def __len__(self) -> int:
        return len(self.weight)

    def z(self, i: int) -> np.ndarray:
        return np.concatenate([self.head[i], self.tail[i]])


def _coeff_patterns(p: int, q: int) -> np.ndarray:
    pats = list(itertools.product(range(1, q), repeat=p))
    return np.array(pats, dtype=np.int64).reshape(len(pats), p)


def pattern_chunks(cols, p: int, q: int, chunk: int = _CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """All weight-``p`` patterns on ``cols``: ``(positions, coefficients)`` arrays.

    Order: position sets lexicographically, then nonzero coefficients
    lexicographically.
    """
    cols = list(cols)
    coeffs = _coeff_patterns(p, q)
    per = len(coeffs)
    combos = itertools.combinations(cols, p)
    step = max(1, chunk // per)
    while True:
        block = list(itertools.islice(combos, step))
        if not block:
            return
        pos = np.array(block, dtype=np.int64).reshape(len(block), p)
        yield np.repeat(pos, per, axis=0), np.tile(coeffs, (len(pos), 1))


def all_patterns(cols, p: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    parts = list(pattern_chunks(cols, p, q, chunk=1 << 16))
    if not parts:
        return np.zeros((0, p), dtype=np.int64), np.zeros((0, p), dtype=np.int64)
    return np.concatenate([a for a, _ in parts]), np.concatenate([b for _, b in parts])


def _combine(M: np.ndarray, pos: np.ndarray, coeff: np.ndarray, q: int) -> np.ndarray:
    """``M z`` for each sparse pattern ``z``, as a B x rows array."""
    if pos.shape[1] == 0 or M.shape[0] == 0:
        return np.zeros((len(pos), M.shape[0]), dtype=np.int64)
    cols = M.T.astype(np.int64)[pos]  # B x p x rows
    return np.einsum("bpr,bp->br", cols, coeff) % q


def _dense(pos: np.ndarray, coeff: np.ndarray, width: int, dtype) -> np.ndarray:
    head = np.zeros((len(pos), width), dtype=dtype)
    if pos.shape[1]:
        head[np.arange(len(pos))[:, None], pos] = coeff
    return head


def _key(vals: np.ndarray, q: int) -> np.ndarray:
    if vals.shape[1] == 0:
        return np.zeros(len(vals), dtype=np.int64)
    powers = q ** np.arange(vals.shape[1], dtype=np.int64)
    return vals.astype(np.int64) @ powers


def _batch(head, tail, q, dtype) -> Batch:
    tail = np.asarray(tail) % q
    w = np.count_nonzero(head, axis=1) + np.count_nonzero(tail, axis=1)
    return Batch(head.astype(dtype), tail.astype(dtype), w)


class _Context:
    """Per-decomposition data shared by the head generators."""

    def __init__(self, T: Transformation, target: np.ndarray, steer: np.ndarray, nonzero: bool):
        self.T = T
        self.F = T.field
        self.q = T.field.q
        self.target = target.astype(np.int64)  # s_bar, or 0 for kernel vectors
        self.steer = steer  # the vector X1 is applied to (s_bar or b_bar)
        self.nonzero = nonzero  # kernel search: drop the zero head

    def tail_of(self, head_vals: np.ndarray) -> np.ndarray:
        return (self.target[None, :] - head_vals) % self.q


def _prange_batches(ctx: _Context) -> Iterator[Batch]:
    T = ctx.T
    head = ctx.F.zeros((1, T.k))
    yield _batch(head, ctx.target[None, :], ctx.q, ctx.F.dtype)


def _lb_batches(ctx: _Context, p: int, ell: int = 0) -> Iterator[Batch]:
    T, q = ctx.T, ctx.q
    V = T.V
    if p == 0:
        if not ctx.nonzero and not np.any(ctx.target[:ell]):
            yield from _prange_batches(ctx)
        return
    for pos, coeff in pattern_chunks(range(T.k), p, q):
        if ell:
            top = (ctx.target[None, :ell] - _combine(V[:ell], pos, coeff, q)) % q
            keep = ~np.any(top, axis=1)
            pos, coeff = pos[keep], coeff[keep]
            if not len(pos):
                continue
        tail = ctx.tail_of(_combine(V, pos, coeff, q))
        yield _batch(_dense(pos, coeff, T.k, ctx.F.dtype), tail, q, ctx.F.dtype)


def _mitm_batches(ctx, width, left, p1, right, p2, K, key_target, Tail, tail_target) -> Iterator[Batch]:
    """Heads ``z' + z''`` with ``z'`` on ``left`` (weight p1), ``z''`` on ``right``
    (weight p2) and ``K (z' + z'') = key_target``; tails ``tail_target - Tail z``."""
    q, dtype = ctx.q, ctx.F.dtype
    lpos, lco = all_patterns(left, p1, q)
    if not len(lpos):
        return
    lkey = _key((key_target[None, :] - _combine(K, lpos, lco, q)) % q, q)
    ltail = (tail_target[None, :] - _combine(Tail, lpos, lco, q)) % q
    order = np.argsort(lkey, kind="stable")
    skeys = lkey[order]
    for rpos, rco in pattern_chunks(right, p2, q, chunk=256):
        rkey = _key(_combine(K, rpos, rco, q), q)
        lo = np.searchsorted(skeys, rkey, side="left")
        hi = np.searchsorted(skeys, rkey, side="right")
        counts = hi - lo
        if not counts.sum():
            continue
        # expand matches in chunks of bounded size
        ri_all = np.repeat(np.arange(len(rpos)), counts)
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        li_all = order[np.repeat(lo, counts) + offs]
        rtail = _combine(Tail, rpos, rco, q)
        for s in range(0, len(ri_all), 1 << 15):
            ri, li = ri_all[s : s + (1 << 15)], li_all[s : s + (1 << 15)]
            pos = np.hstack([lpos[li], rpos[ri]])
            coeff = np.hstack([lco[li], rco[ri]])
            head = _dense(pos, coeff, width, dtype)
            tail = (ltail[li] - rtail[ri]) % q
            yield _batch(head, tail, q, dtype)


def _stern_batches(ctx: _Context, p: int, ell: int) -> Iterator[Batch]:
    T = ctx.T
    k = T.k
    h = (k + 1) // 2
    V = T.V
    yield from _mitm_batches(
        ctx, k, range(h), p, range(h, k), p, V[:ell], ctx.target[:ell], V, ctx.target
    )


def _fs_batches(ctx: _Context, p: int) -> Iterator[Batch]:
    T = ctx.T
    ell = T.ells[0]
    width = T.n - (T.r - ell)
    h = (width + 1) // 2
    V1, V3 = T.blocks["V1"], T.blocks["V3"]
    for p1 in range(p + 1):
        p2 = p - p1
        if p1 > h or p2 > width - h:
            continue
        if ctx.nonzero and p == 0:
            continue
        yield from _mitm_batches(
            ctx, width, range(h), p1, range(h, width), p2, V1, ctx.target[:ell], V3, ctx.target[ell:]
        )


def _random_weight_p(rng, B: int, k: int, p: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    pos = np.argsort(rng.random((B, k)), axis=1)[:, :p]
    coeff = np.ones((B, p), dtype=np.int64) if q == 2 else rng.integers(1, q, size=(B, p))
    return pos, coeff


def block_bounds(T: Transformation) -> list[tuple[int, int]]:
    out, start = [], 0
    for h in T.ells:
        out.append((start, start + h))
        start += h
    return out


def zero_blocks(T: Transformation, steer: np.ndarray) -> list[int]:
    """1-based indices of the row blocks on which ``steer`` vanishes."""
    return [i for i, (a, b) in enumerate(block_bounds(T), 1) if not np.any(steer[a:b])]


def _multi_batches(ctx: _Context, p: int, rng, B: int = 256) -> Iterator[Batch]:
    T, q = ctx.T, ctx.q
    live = [i for i in range(len(T.ells)) if (i + 1) not in zero_blocks(T, ctx.steer)]
    if ctx.nonzero and (not live or p == 0):
        return
    while True:
        heads = np.zeros((B, T.k), dtype=np.int64)
        for _ in live:
            pos, coeff = _random_weight_p(rng, B, T.k, p, q)
            heads += _dense(pos, coeff, T.k, np.int64)
        heads %= q
        if ctx.nonzero:
            heads = heads[np.any(heads, axis=1)]
        vals = (heads @ T.V.T.astype(np.int64)) % q
        yield _batch(heads.astype(ctx.F.dtype), ctx.tail_of(vals), q, ctx.F.dtype)


def _gi_random_batches(ctx: _Context, rng, B: int = 16) -> Iterator[Batch]:
    T, F = ctx.T, ctx.F
    while True:
        X1 = F.random(rng, (B, T.k, T.r)).astype(np.int64)
        heads = (X1 @ ctx.steer.astype(np.int64)) % F.q
        heads = heads[np.any(heads, axis=1)]  # X1 s_bar != 0
        if not len(heads):
            continue
        vals = (heads @ T.V.T.astype(np.int64)) % F.q
        yield _batch(heads.astype(F.dtype), ctx.tail_of(vals), F.q, F.dtype)


def batches(T: Transformation, cfg: StrategyConfig, target, steer, rng=None, kernel: bool = False) -> Iterator[Batch]:
    """Batched candidate stream of a strategy for one decomposition."""
    ctx = _Context(T, np.asarray(target), np.asarray(steer), kernel)
    kind = cfg.kind
    if kind == "prange":
        if kernel:
            raise ConfigError("prange only yields the zero kernel vector")
        return _prange_batches(ctx)
    if kind == "lee_brickell":
        return _lb_batches(ctx, cfg.p)
    if kind == "leon":
        return _lb_batches(ctx, cfg.p, cfg.ell)
    if kind == "stern":
        return _stern_batches(ctx, cfg.p, cfg.ell)
    if kind == "finiasz_sendrier":
        return _fs_batches(ctx, cfg.p)
    if kind == "multi_decomp":
        return _multi_batches(ctx, cfg.p, rng)
    return _gi_random_batches(ctx, rng)


def _decompose_for(cfg: StrategyConfig, H, F, rng) -> Transformation:
    if cfg.kind == "finiasz_sendrier":
        return decompose_partial(H, cfg.ell, F, rng)
    if cfg.kind == "multi_decomp":
        return decompose_multi(H, cfg.ell_list, F, rng)
    return decompose(H, F, Form.RIGHT_ID_FULL, rng)


# ---------------------------------------------------------------------------
# Public candidate streams (one vector x = Q z at a time)
# ---------------------------------------------------------------------------


def _vectors(T: Transformation, stream: Iterator[Batch]) -> Iterator[np.ndarray]:
    for b in stream:
        for i in range(len(b)):
            yield T.Q.apply(b.z(i))


def _sbar(T: Transformation, s) -> np.ndarray:
    return mat_vec(T.P, s, T.field)


def prange_sample(T: Transformation, s) -> np.ndarray:
    """``Q [0; P s]``."""
    return next(_vectors(T, batches(T, StrategyConfig("prange"), _sbar(T, s), _sbar(T, s))))


def lee_brickell_sample(T: Transformation, s, p: int) -> Iterator[np.ndarray]:
    sb = _sbar(T, s)
    return _vectors(T, _lb_batches(_Context(T, sb, sb, False), p))


def leon_sample(T: Transformation, s, p: int, ell: int) -> Iterator[np.ndarray]:
    sb = _sbar(T, s)
    return _vectors(T, _lb_batches(_Context(T, sb, sb, False), p, ell))


def stern_sample(T: Transformation, s, p: int, ell: int) -> Iterator[np.ndarray]:
    cfg = StrategyConfig("stern", p, ell).resolved(T.k, T.r, T.field.q)
    sb = _sbar(T, s)
    return _vectors(T, batches(T, cfg, sb, sb))


def fs_sample(T_partial: Transformation, s, p: int) -> Iterator[np.ndarray]:
    if T_partial.form is not Form.PARTIAL_GE:
        raise ConfigError("fs_sample needs a partial decomposition")
    sb = _sbar(T_partial, s)
    return _vectors(T_partial, _fs_batches(_Context(T_partial, sb, sb, False), p))


def multi_decomp_sample(T_multi: Transformation, s, patterns) -> Iterator[np.ndarray]:
    """One candidate per entry of ``patterns``.

    Each entry lists one target vector ``w_i`` (length k) per row block;
    block ``i`` contributes ``X_i s_bar_i = w_i`` with ``X_i`` built by
    :func:`gid.geninv.steer_x1`. Blocks where ``s_bar`` vanishes contribute
    nothing whatever ``w_i`` is.
    """
    F, T = T_multi.field, T_multi
    sb = _sbar(T, s)
    zero = set(zero_blocks(T, sb))
    for ws in patterns:
        if len(ws) != len(T.ells):
            raise DimensionMismatch(f"expected {len(T.ells)} block vectors")
        z1 = np.zeros(T.k, dtype=np.int64)
        for i, w in enumerate(ws, 1):
            if i not in zero:
                z1 += F.asarray(w)
        z1 %= F.q
        tail = (sb.astype(np.int64) - mat_vec(T.V, z1, F)) % F.q
        yield T.Q.apply(np.concatenate([z1, tail]).astype(F.dtype))


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


def _weight3_vector(rng, n: int, F: PrimeField) -> np.ndarray:
    w = min(3, n)
    x0 = F.zeros(n)
    pos = rng.choice(n, size=w, replace=False)
    x0[pos] = F.random_nonzero(rng, w)
    return x0


def range_vector(H: np.ndarray, F: PrimeField, rng, tries: int = 64) -> np.ndarray:
    """A nonzero ``b = H x0``, with ``x0`` of weight 3 when possible.

    Small codes may contain every weight-3 vector in the kernel; after
    ``tries`` zero products ``x0`` is drawn uniformly instead.
    """
    n = H.shape[1]
    for _ in range(tries):
        b = mat_vec(H, _weight3_vector(rng, n, F), F)
        if np.any(b):
            return b
    while True:
        b = mat_vec(H, F.random(rng, n), F)
        if np.any(b):
            return b


def _run(inst, cfg: StrategyConfig, budget: Budget, workers: int) -> DecodeResult:
    F = inst.field
    kernel = isinstance(inst, LwpInstance)
    start = time.perf_counter()
    cfg = cfg.resolved(inst.k, inst.r, F.q)
    if kernel and cfg.kind == "prange":
        raise ConfigError("prange cannot produce nonzero kernel vectors")
    samples_cap = cfg.samples_per_decomposition or budget.max_samples_per_decomposition or 10 * max(1, inst.k)
    seed = cfg.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (1 << 63))
    workers = max(1, int(workers))
    streams = np.random.SeedSequence(seed).spawn(workers)
    stop = threading.Event()
    deadline = None if budget.wall_clock_limit is None else start + budget.wall_clock_limit
    n_dec = budget.max_decompositions

    def worker(idx: int):
        rng = np.random.default_rng(streams[idx])
        used_d = used_s = 0
        for d in range(idx, n_dec, workers):
            if stop.is_set() or (deadline is not None and time.perf_counter() > deadline):
                break
            T = _decompose_for(cfg, inst.H, F, rng)
            used_d += 1
            if kernel:
                steer = _sbar(T, range_vector(inst.H, F, rng))
                target = np.zeros(inst.r, dtype=np.int64)
            else:
                steer = target = _sbar(T, inst.s)
            left = samples_cap
            for bt in batches(T, cfg, target, steer, rng, kernel):
                if left <= 0 or stop.is_set():
                    break
                wts = bt.weight[:left]
                hits = np.flatnonzero(wts <= inst.t)
                if hits.size:
                    i = int(hits[0])
                    used_s += i + 1
                    x = T.Q.apply(bt.z(i))
                    if not verify_solution(inst, x):
                        raise AssertionError("candidate failed verification")
                    meta = {"decomposition": d, "strategy": cfg.kind}
                    if cfg.kind == "multi_decomp":
                        meta["zero_blocks"] = zero_blocks(T, steer)
                    return (d, x, used_d, used_s, meta)
                used_s += len(wts)
                left -= len(wts)
        return (None, None, used_d, used_s, {})

    if workers == 1:
        outs = [worker(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(worker, i) for i in range(workers)]
            outs = []
            for f in futs:
                out = f.result()
                if out[0] is not None:
                    stop.set()
                outs.append(out)
    found = [o for o in outs if o[0] is not None]
    used_d = sum(o[2] for o in outs)
    used_s = sum(o[3] for o in outs)
    elapsed = time.perf_counter() - start
    if found:
        d, x, _, _, meta = min(found, key=lambda o: o[0])
        return DecodeResult(True, x, int(np.count_nonzero(x)), used_d, used_s, elapsed, seed, meta)
    return DecodeResult(False, None, None, used_d, used_s, elapsed, seed, {"strategy": cfg.kind})


def solve_cwp(inst: SdpInstance, strat: StrategyConfig, budget: Budget | None = None, workers: int = 1) -> DecodeResult:
    """Search ``x`` with ``H x = s`` and ``weight(x) <= t``.

    Deterministic for a fixed ``strat.seed`` when ``workers == 1``. Running
    out of budget gives a ``Fail`` result, not an exception.
    """
    return _run(inst, strat, budget or Budget(), workers)


def solve_swp(inst: LwpInstance, strat: StrategyConfig, budget: Budget | None = None, workers: int = 1) -> DecodeResult:
    """Search a nonzero ``x`` with ``H x = 0`` and ``weight(x) <= t``.

    Per decomposition a range vector ``b = H x0`` (``x0`` random of weight 3,
    redrawn while ``b = 0``) fixes ``b_bar = P b``; candidate kernel vectors
    are ``Q [w; -V w]`` with ``w = Z b_bar``.
    """
    return _run(inst, strat, budget or Budget(), workers)
