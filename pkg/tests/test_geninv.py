import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import A23
from gid import GF2, PrimeField
from gid.errors import CapExceeded, NotAGI, ZeroSyndrome, ZeroVector
from gid.geninv import (
    GenInverse,
    enumerate_gi,
    gi_from_x1,
    gi_to_prange_pair,
    is_gi,
    null_from_w,
    prange_gi,
    solution_from_z1,
    steer_support,
    steer_x1,
)
from gid.matrix import Form, Permutation, decompose, from_prange_pair, inverse, mat_mul, mat_vec, random_full_rank
from gid.oracle import brute_gi_count, enum_coset


def test_is_gi_examples(rng):
    M = random_full_rank(rng, 4, 4, PrimeField(5))
    assert is_gi(M, inverse(M, 5), 5)
    assert is_gi(A23, np.array([[1, 0], [0, 1], [0, 0]]), GF2)
    assert not is_gi(A23, np.zeros((3, 2), dtype=np.uint8), GF2)


def test_prange_gi_shape(rng):
    T = decompose(A23, GF2, rng=rng)
    X = prange_gi(T).X
    inner = np.vstack([np.zeros((1, 2), dtype=np.int64), np.eye(2, dtype=np.int64)])
    assert np.array_equal(X, T.Q.apply(mat_mul(inner, T.P, GF2)))
    assert is_gi(A23, X, GF2)


@given(seed=st.integers(0, 2**32 - 1), q=st.sampled_from([2, 3, 5, 7]))
def test_every_x1_gives_a_gi(seed, q):
    rng = np.random.default_rng(seed)
    F = PrimeField(q)
    m = int(rng.integers(1, 7))
    n = m + int(rng.integers(0, 7))
    A = random_full_rank(rng, m, n, F)
    T = decompose(A, F, rng=rng)
    G = gi_from_x1(T, F.random(rng, (T.k, T.r)))
    assert is_gi(A, G.X, F)
    b = F.random(rng, m)
    assert np.array_equal(G.apply(b), mat_vec(G.X, b, F))


def test_square_has_unique_gi(rng):
    F = PrimeField(3)
    A = random_full_rank(rng, 3, 3, F)
    gis = [g.X for g in enumerate_gi(decompose(A, F, rng=rng))]
    assert len(gis) == 1 and np.array_equal(gis[0], inverse(A, F))


def test_enumerate_matches_brute_force(rng):
    T = decompose(A23, GF2, rng=rng)
    mine = {g.X.tobytes() for g in enumerate_gi(T)}
    assert len(mine) == 4 == brute_gi_count(A23, 2)
    for X in itertools.product(range(2), repeat=6):
        X = np.array(X, dtype=np.uint8).reshape(3, 2)
        assert (X.tobytes() in mine) == is_gi(A23, X, GF2)


def test_enumeration_cap(rng):
    A = random_full_rank(rng, 4, 12, GF2)
    with pytest.raises(CapExceeded):
        next(enumerate_gi(decompose(A, GF2, rng=rng)))


def test_steer_examples():
    T = decompose(np.array([[1, 1, 1]], dtype=np.uint8), GF2, rng=0)
    assert not steer_x1(T, [1], [0, 0]).any()
    T2 = from_prange_pair(
        np.array([[1, 1, 0], [1, 0, 1]], dtype=np.uint8), GF2.identity(2), Permutation.identity(3), GF2
    )
    X1 = steer_x1(T2, [1, 1], [1])
    assert mat_vec(X1, [1, 1], GF2).tolist() == [1]
    F7 = PrimeField(7)
    A = np.hstack([np.array([[1, 2], [3, 4]]), np.eye(2, dtype=np.int64)])
    T7 = from_prange_pair(A, F7.identity(2), Permutation.identity(4), F7)
    X1 = steer_x1(T7, [0, 3], [2, 4])
    assert X1[:, 1].tolist() == [3, 6] and not X1[:, 0].any()
    with pytest.raises(ZeroSyndrome):
        steer_x1(T7, [0, 0], [1, 1])


def test_equal_steering_gives_equal_products(rng):
    F = PrimeField(3)
    A = random_full_rank(rng, 3, 7, F)
    T = decompose(A, F, rng=rng)
    b = F.random_nonzero(rng, 3)
    s_bar = mat_vec(T.P, b, F)
    w = F.random(rng, T.k)
    X1a = steer_x1(T, s_bar, w)
    # another X1 with the same product: add something that kills s_bar
    N = F.random(rng, (T.k, T.r))
    N[:, 0] = 0
    N[:, 0] = F.asarray(-mat_vec(N, s_bar, F).astype(np.int64) * F.inv(int(s_bar[0]))) if s_bar[0] else 0
    X1b = F.asarray(X1a.astype(np.int64) + N) if s_bar[0] else X1a
    Ga, Gb = gi_from_x1(T, X1a), gi_from_x1(T, X1b)
    assert np.array_equal(Ga.apply(b), Gb.apply(b))
    assert np.array_equal(Ga.apply(b), solution_from_z1(T, s_bar, w))
    assert np.array_equal(mat_vec(A, Ga.apply(b), F), b)


def test_null_from_w_example(rng):
    T = decompose(A23, GF2, rng=rng)
    assert not null_from_w(T, [1, 0], [0]).any()
    assert null_from_w(T, [1, 0], [1]).tolist() == [1, 1, 1]
    found = {tuple(null_from_w(T, [0, 1], [w]).tolist()) for w in (0, 1)}
    assert found == {(0, 0, 0), (1, 1, 1)}
    with pytest.raises(ZeroVector):
        null_from_w(T, [0, 0], [1])


@given(seed=st.integers(0, 2**32 - 1))
def test_null_vectors_are_in_kernel(seed):
    rng = np.random.default_rng(seed)
    F = PrimeField(5)
    A = random_full_rank(rng, 3, 7, F)
    T = decompose(A, F, rng=rng)
    v = null_from_w(T, [1, 0, 0], F.random(rng, T.k))
    assert not mat_vec(A, v, F).any()


@pytest.mark.parametrize("form", [Form.RIGHT_ID_FULL, Form.LEFT_ID_FULL])
def test_steer_support(form, rng):
    F = PrimeField(3)
    A = random_full_rank(rng, 4, 9, F)
    T = decompose(A, F, form, rng)
    b = F.random_nonzero(rng, 4)
    free_cols = np.arange(T.k) if form is Form.RIGHT_ID_FULL else np.arange(T.r, T.n)
    free = sorted(int(T.Q.perm[c]) + 1 for c in free_cols)
    targets = set(free[:2])
    x, G = steer_support(T, b, targets)
    assert np.array_equal(mat_vec(A, x, F), b)
    assert is_gi(A, G.X, F)
    assert {p for p in free if x[p - 1]} == targets


@given(seed=st.integers(0, 2**32 - 1), q=st.sampled_from([2, 3, 5]))
def test_prange_pair_roundtrip(seed, q):
    rng = np.random.default_rng(seed)
    F = PrimeField(q)
    m = int(rng.integers(1, 5))
    n = m + int(rng.integers(1, 5))
    A = random_full_rank(rng, m, n, F)
    T = decompose(A, F, rng=rng)
    X = gi_from_x1(T, F.random(rng, (T.k, T.r))).X
    Pb, Qb = gi_to_prange_pair(A, X, F, rng=rng)
    r = m
    inner = np.vstack([np.zeros((n - r, r), dtype=np.int64), np.eye(r, dtype=np.int64)])
    assert np.array_equal(mat_mul(mat_mul(Qb, inner, F), Pb, F), X)
    assert np.array_equal(mat_mul(mat_mul(Pb, A, F), Qb, F)[:, n - r :], F.identity(r))


def test_prange_pair_rejects_non_gi():
    with pytest.raises(NotAGI):
        gi_to_prange_pair(A23, np.zeros((3, 2), dtype=np.uint8), GF2, rng=0)


def test_geninverse_without_origin(rng):
    X = np.array([[1, 0], [0, 1], [0, 0]], dtype=np.uint8)
    G = GenInverse(GF2, X=X)
    assert G.apply([1, 1]).tolist() == [1, 1, 0]
    assert set(enum_coset(A23, [1, 1], 2).as_set()) >= {tuple(G.apply([1, 1]).tolist())}
