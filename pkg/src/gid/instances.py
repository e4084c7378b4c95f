"""Random and planted instances, and the ``.gid`` / solution text formats.

Instance file (ASCII, LF line endings)::

    GID v1
    problem: sdp            # or lwp
    q: 2
    n: 8
    k: 4
    t: 1
    H:
    <n-k lines of n residues>
    s:                      # sdp only
    <one line of n-k residues>

Solution file: the ``n`` residues of ``x`` on one line, then ``weight: <w>``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ConfigError, FormatError
from .field import PrimeField, as_field
from .matrix import mat_vec, random_full_rank
from .solvers import LwpInstance, SdpInstance


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def gen_instance(n: int, k: int, q: int, t: int, mode: str = "planted", seed=None):
    """A syndrome decoding instance with uniform full-rank ``H`` ((n-k) x n).

    ``mode="planted"`` draws ``e`` of weight exactly ``t`` (nonzero
    coefficients) and sets ``s = H e``; ``mode="random"`` draws ``s``
    uniformly among nonzero vectors. Returns ``(instance, e)`` with
    ``e = None`` in random mode.
    """
    F = as_field(q)
    if not 0 <= k < n:
        raise ConfigError(f"need 0 <= k < n, got n={n}, k={k}")
    if not 0 <= t <= n:
        raise ConfigError(f"need 0 <= t <= n, got t={t}")
    if mode not in ("planted", "random"):
        raise ConfigError(f"unknown mode {mode!r}")
    if mode == "planted" and t == 0:
        raise ConfigError("a planted error of weight 0 gives the zero syndrome")
    rng = _rng(seed)
    H = random_full_rank(rng, n - k, n, F)
    if mode == "random":
        s = F.random(rng, n - k)
        while not np.any(s):
            s = F.random(rng, n - k)
        return SdpInstance(H, s, t, F), None
    for _ in range(1000):
        e = F.zeros(n)
        e[rng.choice(n, size=t, replace=False)] = F.random_nonzero(rng, t)
        s = mat_vec(H, e, F)
        if np.any(s):
            return SdpInstance(H, s, t, F), e
    raise ConfigError("could not plant an error with a nonzero syndrome")


def gen_lwp(n: int, k: int, q: int, t: int, seed=None) -> LwpInstance:
    F = as_field(q)
    if not 0 <= k < n:
        raise ConfigError(f"need 0 <= k < n, got n={n}, k={k}")
    return LwpInstance(random_full_rank(_rng(seed), n - k, n, F), t, F)


def _row(v) -> str:
    return " ".join(str(int(x)) for x in np.asarray(v).reshape(-1))


def dumps_instance(inst: SdpInstance | LwpInstance) -> str:
    sdp = isinstance(inst, SdpInstance)
    lines = [
        "GID v1",
        f"problem: {'sdp' if sdp else 'lwp'}",
        f"q: {inst.q}",
        f"n: {inst.n}",
        f"k: {inst.k}",
        f"t: {inst.t}",
        "H:",
    ]
    lines += [_row(row) for row in inst.H]
    if sdp:
        lines += ["s:", _row(inst.s)]
    return "\n".join(lines) + "\n"


def _ints(line: str, count: int, what: str) -> list[int]:
    try:
        vals = [int(v) for v in line.split()]
    except ValueError:
        raise FormatError(f"non-integer entry in {what}") from None
    if len(vals) != count:
        raise FormatError(f"{what} has {len(vals)} entries, expected {count}")
    return vals


def loads_instance(text: str) -> SdpInstance | LwpInstance:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != "GID v1":
        raise FormatError("missing 'GID v1' header")
    hdr = {}
    i = 1
    for key in ("problem", "q", "n", "k", "t"):
        if i >= len(lines) or not lines[i].startswith(f"{key}:"):
            raise FormatError(f"expected '{key}:' on line {i + 1}")
        hdr[key] = lines[i].split(":", 1)[1].strip()
        i += 1
    problem = hdr["problem"]
    if problem not in ("sdp", "lwp"):
        raise FormatError(f"unknown problem {problem!r}")
    try:
        q, n, k, t = (int(hdr[key]) for key in ("q", "n", "k", "t"))
    except ValueError:
        raise FormatError("q, n, k and t must be integers") from None
    if not 0 <= k < n:
        raise FormatError("need 0 <= k < n")
    F = PrimeField(q)
    if i >= len(lines) or lines[i].strip() != "H:":
        raise FormatError("expected 'H:'")
    i += 1
    r = n - k
    if i + r > len(lines):
        raise FormatError("truncated H block")
    H = np.array([_ints(lines[i + j], n, f"row {j + 1} of H") for j in range(r)], dtype=np.int64)
    i += r
    if np.any(H < 0) or np.any(H >= q):
        raise FormatError("entries of H must lie in [0, q)")
    if problem == "lwp":
        if i != len(lines):
            raise FormatError("trailing data after H")
        return LwpInstance(H, t, F)
    if i + 2 != len(lines) or lines[i].strip() != "s:":
        raise FormatError("expected 's:' followed by one line")
    s = np.array(_ints(lines[i + 1], r, "s"), dtype=np.int64)
    if np.any(s < 0) or np.any(s >= q):
        raise FormatError("entries of s must lie in [0, q)")
    return SdpInstance(H, s, t, F)


def write_instance(inst, path) -> None:
    Path(path).write_bytes(dumps_instance(inst).encode("ascii"))


def read_instance(path) -> SdpInstance | LwpInstance:
    try:
        text = Path(path).read_bytes().decode("ascii")
    except UnicodeDecodeError:
        raise FormatError("instance files are ASCII") from None
    return loads_instance(text)


def dumps_solution(x) -> str:
    x = np.asarray(x).reshape(-1)
    return f"{_row(x)}\nweight: {int(np.count_nonzero(x))}\n"


def loads_solution(text: str, n: int | None = None) -> tuple[np.ndarray, int]:
    """Parse a solution file; returns ``(x, declared weight)``."""
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if len(lines) != 2 or not lines[1].startswith("weight:"):
        raise FormatError("solution file must have a vector line and a 'weight:' line")
    try:
        x = np.array([int(v) for v in lines[0].split()], dtype=np.int64)
        w = int(lines[1].split(":", 1)[1])
    except ValueError:
        raise FormatError("non-integer entry in solution file") from None
    if n is not None and x.size != n:
        raise FormatError(f"solution has {x.size} entries, expected {n}")
    return x, w


def write_solution(x, path) -> None:
    Path(path).write_bytes(dumps_solution(x).encode("ascii"))


def read_solution(path, n: int | None = None) -> tuple[np.ndarray, int]:
    return loads_solution(Path(path).read_text(encoding="ascii"), n)
