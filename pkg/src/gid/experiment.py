"""Easy-weight coverage experiment.

For a random ``[n, k]_q`` syndrome instance and one or more random Prange
transformations ``P H Q = [V | I_r]``, each iteration draws, for every
``i = 1 .. k``, a random set ``E`` of ``i`` column indices of ``V`` with
random nonzero coefficients (all 1 over F_2). ``E`` is taken inside
``Supp(s_bar)`` while ``i`` does not exceed its size, and among all ``k``
columns beyond that. The head ``z1`` supported on
``E`` is ``X1 s_bar`` for a steered GI, the solution is
``Q [z1; s_bar - V z1]`` and its weight ``i + weight(s_bar - V z1)`` is
recorded. The report lists, per cumulative iteration, which weights in
``[1, n]`` have been reached.

All ``k`` heads of an iteration are columns of one ``k x k`` matrix ``Z``,
so an iteration costs a single product ``V Z``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigError, FormatError
from .field import as_field, is_prime
from .matrix import Form, Transformation, decompose, mat_mul, mat_vec, random_full_rank


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    k: int
    q: int = 2
    iterations: int = 10
    decompositions: int = 1
    seed: int = 0
    exhaustive: bool = False  # enumerate every nonzero head instead of sampling

    def __post_init__(self) -> None:
        if not 0 < self.k < self.n:
            raise ConfigError(f"need 0 < k < n, got n={self.n}, k={self.k}")
        if not is_prime(self.q):
            raise ConfigError(f"q={self.q} is not prime")
        if self.iterations < 1 or self.decompositions < 1:
            raise ConfigError("iterations and decompositions must be at least 1")
        if self.exhaustive and self.q ** self.k > 1 << 20:
            raise ConfigError("exhaustive mode is limited to q^k <= 2^20")


@dataclass(frozen=True)
class Witness:
    """Regenerates one reached weight: decomposition, iteration, ``E`` and coefficients."""

    decomposition: int  # 1-based
    iteration: int  # 1-based
    i: int
    positions: tuple[int, ...]  # 0-based information positions
    coefficients: tuple[int, ...]
    weight: int


@dataclass
class WeightCoverageReport:
    n: int
    k: int
    q: int
    seed: int
    iterations: int
    decompositions: int
    # reached[d][it]: weights reached by decomposition d+1 in iterations 1..it+1
    reached: list[list[frozenset[int]]]
    elapsed: float
    witnesses: dict[int, Witness] = dc_field(default_factory=dict, compare=False)

    def merged(self, iteration: int | None = None) -> frozenset[int]:
        """Weights reached by any decomposition up to ``iteration`` (default: all)."""
        it = self.iterations if iteration is None else iteration
        out: set[int] = set()
        for per_dec in self.reached:
            out |= per_dec[it - 1]
        return frozenset(out)

    def missing(self, iteration: int | None = None) -> frozenset[int]:
        """Weights in ``[1, n]`` not reached yet."""
        return frozenset(range(1, self.n + 1)) - self.merged(iteration)

    @property
    def min_reached(self) -> int | None:
        m = self.merged()
        return min(m) if m else None

    @property
    def max_reached(self) -> int | None:
        m = self.merged()
        return max(m) if m else None

    @property
    def summary(self) -> tuple[int | None, int | None]:
        return self.min_reached, self.max_reached

    def covers(self, lo: int, hi: int) -> bool:
        return set(range(lo, hi + 1)) <= self.merged()

    def gaps(self) -> list[int]:
        """Unreached weights strictly between the extreme reached weights."""
        lo, hi = self.summary
        if lo is None:
            return []
        return sorted(set(range(lo, hi + 1)) - self.merged())


def make_instance(cfg: ExperimentConfig):
    """The experiment's instance ``(H, s)``; shared by all decompositions."""
    F = as_field(cfg.q)
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(cfg.decompositions + 1)[0])
    r = cfg.n - cfg.k
    H = random_full_rank(rng, r, cfg.n, F)
    s = F.random(rng, r)
    while not np.any(s):
        s = F.random(rng, r)
    return H, s


def decomposition_rng(cfg: ExperimentConfig, d: int) -> np.random.Generator:
    """Generator of decomposition ``d`` (1-based)."""
    return np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(cfg.decompositions + 1)[d])


def _random_heads(rng, k: int, q: int, supp: np.ndarray) -> np.ndarray:
    """``k x k`` matrix whose column ``i`` has a random support of size ``i + 1``.

    Sizes up to ``|supp|`` draw the support inside ``supp`` (the positions
    of ``Supp(s_bar)`` that index columns of ``V``); larger sizes draw it
    among all ``k`` positions.
    """
    keys = rng.random((k, k))
    m = len(supp)
    if m:
        # rank the positions of supp first for the columns i < m
        inside = np.zeros(k, dtype=bool)
        inside[supp] = True
        keys[:, :m] += np.where(inside, 0.0, 2.0)[:, None]
    ranks = np.argsort(np.argsort(keys, axis=0), axis=0)
    Z = (ranks <= np.arange(k)[None, :]).astype(np.int64)
    if q > 2:
        Z *= rng.integers(1, q, size=(k, k))
    return Z


def _exhaustive_heads(k: int, q: int) -> np.ndarray:
    heads = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)[1:]
    return heads.T  # nonzero heads as columns


def _run_decomposition(cfg: ExperimentConfig, H, s, d: int):
    F = as_field(cfg.q)
    q = cfg.q
    rng = decomposition_rng(cfg, d)
    T = decompose(H, F, Form.RIGHT_ID_FULL, rng)
    s_bar = mat_vec(T.P, s, F).astype(np.int64)
    V = T.V
    supp = np.flatnonzero(s_bar[: cfg.k])
    reached: set[int] = set()
    per_it = []
    wit: dict[int, Witness] = {}
    for it in range(1, cfg.iterations + 1):
        Z = _exhaustive_heads(cfg.k, q) if cfg.exhaustive else _random_heads(rng, cfg.k, q, supp)
        X2 = (s_bar[:, None] - mat_mul(V, Z, F)) % q
        sizes = np.count_nonzero(Z, axis=0)
        weights = sizes + np.count_nonzero(X2, axis=0)
        uniq, first = np.unique(weights, return_index=True)
        for w, j in zip(uniq.tolist(), first.tolist()):
            if w not in reached:
                pos = np.flatnonzero(Z[:, j])
                wit[w] = Witness(d, it, int(sizes[j]), tuple(pos.tolist()), tuple(Z[pos, j].tolist()), int(w))
        reached |= set(uniq.tolist())
        per_it.append(frozenset(reached))
    return per_it, wit


def run_easy_weights(cfg: ExperimentConfig, workers: int = 1) -> WeightCoverageReport:
    start = time.perf_counter()
    H, s = make_instance(cfg)
    ds = range(1, cfg.decompositions + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            outs = list(ex.map(lambda d: _run_decomposition(cfg, H, s, d), ds))
    else:
        outs = [_run_decomposition(cfg, H, s, d) for d in ds]
    witnesses: dict[int, Witness] = {}
    for _, wit in outs:  # in decomposition order, so the earliest witness wins
        for w, x in wit.items():
            witnesses.setdefault(w, x)
    elapsed = time.perf_counter() - start
    return WeightCoverageReport(
        cfg.n, cfg.k, cfg.q, cfg.seed, cfg.iterations, cfg.decompositions,
        [per for per, _ in outs], elapsed, witnesses,
    )


def replay_witness(cfg: ExperimentConfig, w: Witness, H=None, s=None) -> np.ndarray:
    """Rebuild the vector behind a witness from the seed alone."""
    F = as_field(cfg.q)
    if H is None:
        H, s = make_instance(cfg)
    T: Transformation = decompose(H, F, Form.RIGHT_ID_FULL, decomposition_rng(cfg, w.decomposition))
    s_bar = mat_vec(T.P, s, F).astype(np.int64)
    z1 = np.zeros(cfg.k, dtype=np.int64)
    z1[list(w.positions)] = w.coefficients
    z2 = (s_bar - mat_vec(T.V, z1, F)) % cfg.q
    return T.Q.apply(np.concatenate([z1, z2]).astype(F.dtype))


# ---------------------------------------------------------------------------
# CSV / JSON
# ---------------------------------------------------------------------------

CSV_HEADER = ["decomp", "iteration", "weight", "reached"]


def to_csv(rep: WeightCoverageReport) -> str:
    """Long form: one row per (decomposition, iteration, weight), then a summary row."""
    out = io.StringIO()
    wr = csv.writer(out, lineterminator="\n")
    wr.writerow(CSV_HEADER)
    for d, per_dec in enumerate(rep.reached, 1):
        for it, got in enumerate(per_dec, 1):
            for w in range(1, rep.n + 1):
                wr.writerow([d, it, w, int(w in got)])
    lo, hi = rep.summary
    meta = f"n={rep.n};k={rep.k};q={rep.q};seed={rep.seed};elapsed={rep.elapsed!r}"
    wr.writerow(["summary", rep.iterations, f"{lo}:{hi}", meta])
    return out.getvalue()


def from_csv(text: str) -> WeightCoverageReport:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != CSV_HEADER:
        raise FormatError(f"CSV header must be {','.join(CSV_HEADER)}")
    if len(rows) < 2 or rows[-1][0] != "summary":
        raise FormatError("missing summary row")
    try:
        meta = dict(kv.split("=", 1) for kv in rows[-1][3].split(";"))
        n, k, q, seed = (int(meta[key]) for key in ("n", "k", "q", "seed"))
        elapsed = float(meta["elapsed"])
        iterations = int(rows[-1][1])
        sets: dict[tuple[int, int], set[int]] = {}
        for row in rows[1:-1]:
            d, it, w, hit = (int(v) for v in row)
            sets.setdefault((d, it), set())
            if hit:
                sets[(d, it)].add(w)
    except (KeyError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed coverage CSV: {exc}") from None
    decomps = max((d for d, _ in sets), default=0)
    reached = [[frozenset(sets.get((d, it), ())) for it in range(1, iterations + 1)] for d in range(1, decomps + 1)]
    rep = WeightCoverageReport(n, k, q, seed, iterations, decomps, reached, elapsed)
    lo, hi = rows[-1][2].split(":")
    if (str(rep.min_reached), str(rep.max_reached)) != (lo, hi):
        raise FormatError("summary row disagrees with the data rows")
    return rep


def to_json(rep: WeightCoverageReport) -> str:
    doc = {
        "n": rep.n, "k": rep.k, "q": rep.q, "seed": rep.seed,
        "iterations": rep.iterations, "decompositions": rep.decompositions,
        "elapsed": rep.elapsed,
        "summary": {"min_reached": rep.min_reached, "max_reached": rep.max_reached},
        "missing": [sorted(rep.missing(it)) for it in range(1, rep.iterations + 1)],
        "reached": [[sorted(s) for s in per] for per in rep.reached],
        "witnesses": {
            str(w): {
                "decomposition": x.decomposition, "iteration": x.iteration, "i": x.i,
                "positions": list(x.positions), "coefficients": list(x.coefficients),
            }
            for w, x in sorted(rep.witnesses.items())
        },
    }
    return json.dumps(doc, indent=1)


def from_json(text: str) -> WeightCoverageReport:
    try:
        doc = json.loads(text)
        reached = [[frozenset(s) for s in per] for per in doc["reached"]]
        wit = {
            int(w): Witness(x["decomposition"], x["iteration"], x["i"], tuple(x["positions"]),
                            tuple(x["coefficients"]), int(w))
            for w, x in doc["witnesses"].items()
        }
        return WeightCoverageReport(
            doc["n"], doc["k"], doc["q"], doc["seed"], doc["iterations"], doc["decompositions"],
            reached, doc["elapsed"], wit,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed coverage JSON: {exc}") from None
