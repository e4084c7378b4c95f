"""Command-line front end (``gid``).

Exit codes: 0 success / found, 2 fail (budget exhausted, invalid solution),
1 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import experiment as exp
from .errors import GIDError
from .instances import (
    dumps_instance,
    dumps_solution,
    gen_instance,
    gen_lwp,
    read_instance,
    read_solution,
)
from .minsat import (
    brute_minsat,
    dumps_affsat,
    dumps_assignment,
    read_affsat,
    reduce_cwp,
    reduce_swp,
)
from .oracle import gv_report
from .solvers import KINDS, Budget, LwpInstance, SdpInstance, StrategyConfig, solve_cwp, solve_swp, verify_solution

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_bytes(text.encode("ascii"))
    else:
        sys.stdout.write(text)


def _ell_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from None


def _strategy_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance", help=".gid instance file")
    p.add_argument("--strategy", choices=KINDS, default="prange")
    p.add_argument("--p", type=int, default=None, help="head weight")
    p.add_argument("--ell", type=int, default=None, help="window length")
    p.add_argument("--ell-list", type=_ell_list, default=(), help="block heights, e.g. 2,2")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget-decomps", type=int, default=100)
    p.add_argument("--budget-samples", type=int, default=None, help="samples per decomposition (default 10k)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="solution file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gid", description="Generalized-inverse decoding toolkit.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random or planted instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--mode", choices=("planted", "random"), default="planted")
    g.add_argument("--problem", choices=("sdp", "lwp"), default="sdp")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", help="instance file (default: stdout)")
    g.add_argument("--error-out", help="also write the planted error as a solution file")

    _strategy_args(sub.add_parser("solve-cwp", help="syndrome decoding: H x = s, weight(x) <= t"))
    _strategy_args(sub.add_parser("solve-swp", help="low-weight codeword: H x = 0, x != 0"))

    m = sub.add_parser("to-minsat", help="export the MIN-SAT(affine) reduction (F_2 only)")
    m.add_argument("instance")
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--out", help=".affsat file (default: stdout)")

    b = sub.add_parser("brute-minsat", help="exhaustive MIN-SAT(affine) minimum")
    b.add_argument("affsat")
    b.add_argument("--out", help="assignment file (default: stdout)")

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("instance")
    v.add_argument("solution")

    e = sub.add_parser("experiment", help="experiments")
    esub = e.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    ew = esub.add_parser("easy-weights", help="weight coverage of steered GIs")
    ew.add_argument("--n", type=int, required=True)
    ew.add_argument("--k", type=int, required=True)
    ew.add_argument("--q", type=int, default=2)
    ew.add_argument("--iters", type=int, default=10)
    ew.add_argument("--decomps", type=int, default=1)
    ew.add_argument("--seed", type=int, required=True)
    ew.add_argument("--threads", type=int, default=1)
    ew.add_argument("--format", choices=("csv", "json"), default="csv")
    ew.add_argument("--out", help="report file (default: stdout)")

    gv = sub.add_parser("gv", help="Gilbert-Varshamov style weight threshold")
    gv.add_argument("--n", type=int, required=True)
    gv.add_argument("--k", type=int, required=True)
    gv.add_argument("--q", type=int, default=2)
    gv.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def _cmd_gen(a) -> int:
    if a.problem == "lwp":
        inst = gen_lwp(a.n, a.k, a.q, a.t, seed=a.seed)
        _emit(dumps_instance(inst), a.out)
        return EXIT_OK
    inst, e = gen_instance(a.n, a.k, a.q, a.t, a.mode, seed=a.seed)
    _emit(dumps_instance(inst), a.out)
    if a.error_out and e is not None:
        Path(a.error_out).write_bytes(dumps_solution(e).encode("ascii"))
    return EXIT_OK


def _cmd_solve(a, kernel: bool) -> int:
    inst = read_instance(a.instance)
    if kernel != isinstance(inst, LwpInstance):
        raise GIDError(f"{a.cmd} needs an {'lwp' if kernel else 'sdp'} instance")
    cfg = StrategyConfig(a.strategy, a.p, a.ell, a.ell_list, None, a.seed)
    budget = Budget(a.budget_decomps, a.budget_samples)
    solve = solve_swp if kernel else solve_cwp
    res = solve(inst, cfg, budget, workers=a.threads)
    print(
        f"{res.outcome} decompositions={res.decompositions_used} samples={res.samples_used} "
        f"elapsed={res.elapsed:.3f}s seed={res.seed}",
        file=sys.stderr,
    )
    if not res.found:
        return EXIT_FAIL
    _emit(dumps_solution(res.x), a.out)
    return EXIT_OK


def _cmd_to_minsat(a) -> int:
    inst = read_instance(a.instance)
    if isinstance(inst, SdpInstance):
        sat, _ = reduce_cwp(inst.H, inst.s, inst.q, seed=a.seed)
    else:
        sat, _ = reduce_swp(inst.H, inst.q, seed=a.seed)
    _emit(dumps_affsat(sat), a.out)
    return EXIT_OK


def _cmd_brute(a) -> int:
    sat = read_affsat(a.affsat)
    g, mu = brute_minsat(sat)
    print(f"mu* = {mu}", file=sys.stderr)
    _emit(dumps_assignment(g), a.out)
    return EXIT_OK


def _cmd_verify(a) -> int:
    inst = read_instance(a.instance)
    x, declared = read_solution(a.solution)
    ok = x.size == inst.n and verify_solution(inst, x) and declared == int(np.count_nonzero(x))
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_experiment(a) -> int:
    cfg = exp.ExperimentConfig(a.n, a.k, a.q, a.iters, a.decomps, a.seed)
    rep = exp.run_easy_weights(cfg, workers=a.threads)
    lo, hi = rep.summary
    print(f"reached [{lo}, {hi}] gaps={len(rep.gaps())} elapsed={rep.elapsed:.2f}s", file=sys.stderr)
    _emit(exp.to_csv(rep) if a.format == "csv" else exp.to_json(rep) + "\n", a.out)
    return EXIT_OK


def _cmd_gv(a) -> int:
    rep = gv_report(a.n, a.k, a.q)
    if a.format == "json":
        print(json.dumps(rep))
    else:
        print(rep["threshold"])
        others = ", ".join(f"{k}={v}" for k, v in rep.items() if k != "threshold")
        print(f"conventions: {others}", file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if a.cmd == "gen":
            return _cmd_gen(a)
        if a.cmd in ("solve-cwp", "solve-swp"):
            return _cmd_solve(a, a.cmd == "solve-swp")
        if a.cmd == "to-minsat":
            return _cmd_to_minsat(a)
        if a.cmd == "brute-minsat":
            return _cmd_brute(a)
        if a.cmd == "verify":
            return _cmd_verify(a)
        if a.cmd == "experiment":
            return _cmd_experiment(a)
        return _cmd_gv(a)
    except (GIDError, OSError, UnicodeDecodeError) as exc:
        print(f"gid: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
