"""Information-set decoding on a planted instance.

Plants a weight-4 error in a random [64, 32] binary code and runs each
strategy with the same seed. The decomposition counts show how heads of
weight p > 0 trade more work per decomposition for fewer decompositions.
``gi_random`` draws dense random heads and is only useful on tiny codes, so
it gets a small budget here and is expected to fail.
"""

from gid.instances import gen_instance
from gid.solvers import KINDS, Budget, StrategyConfig, solve_cwp, verify_solution

inst, e = gen_instance(64, 32, 2, 4, seed=11)
print(f"[{inst.n}, {inst.k}] code over F_{inst.q}, planted error weight {inst.t}\n")
print(f"{'strategy':18} {'result':7} {'decomps':>8} {'samples':>9} {'seconds':>8}")
for kind in KINDS:
    budget = Budget(50 if kind == "gi_random" else 5000)
    res = solve_cwp(inst, StrategyConfig(kind, seed=3), budget)
    assert not res.found or verify_solution(inst, res.x)
    print(f"{kind:18} {res.outcome:7} {res.decompositions_used:8d} {res.samples_used:9d} {res.elapsed:8.3f}")
