"""Minimum-weight decoding as MIN-SAT over XOR constraints.

Reduces a small binary instance, prints the constraint file, and checks
that the best assignment lifts to a minimum-weight solution.
"""

from gid.instances import gen_instance
from gid.minsat import brute_minsat, count_satisfied, dumps_affsat, lift, reduce_cwp
from gid.oracle import min_coset_weight

inst, _ = gen_instance(10, 5, 2, 2, seed=4)
sat, ctx = reduce_cwp(inst.H, inst.s, seed=0)
print(dumps_affsat(sat))

g, mu = brute_minsat(sat)
x = lift(ctx, g)
print("best assignment", g.tolist(), "satisfies", mu, "constraints")
print("lifted solution", x.tolist(), "of weight", int(x.sum()), "=", count_satisfied(sat, g))
print("oracle minimum weight:", min_coset_weight(inst.H, inst.s, 2))
