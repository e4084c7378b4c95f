"""Generalized inverses of a small binary matrix.

Walks through the four GIs of a 2x3 matrix, shows that applying them to a
syndrome sweeps the whole solution coset, and steers one of them towards a
chosen head.
"""

import numpy as np

from gid import GF2
from gid.geninv import enumerate_gi, is_gi, null_from_w, prange_gi, solution_from_z1, steer_x1
from gid.matrix import decompose, mat_vec
from gid.oracle import enum_coset

A = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
s = np.array([1, 1], dtype=np.uint8)

T = decompose(A, GF2, rng=0)
print("P A Q = [V | I]:")
print(T.canonical())

print("\nevery X1 gives a GI; X s runs over the coset")
for G in enumerate_gi(T):
    x = G.apply(s)
    print(" X =", G.X.tolist(), " A X A == A:", is_gi(A, G.X, GF2), " X s =", x.tolist())
print("coset from the oracle:", sorted(enum_coset(A, s, 2).as_set()))

print("\nthe Prange GI gives", prange_gi(T).apply(s).tolist())

s_bar = mat_vec(T.P, s, GF2)
X1 = steer_x1(T, s_bar, np.array([1], dtype=np.uint8))
print("steering X1 s_bar = 1 uses X1 =", X1.tolist(), "and gives", solution_from_z1(T, s_bar, [1]).tolist())

print("\nkernel vectors Q [w; -V w]:", [null_from_w(T, s_bar, [w]).tolist() for w in (0, 1)])
