import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import A23
from gid import GF2, PrimeField
from gid.errors import ConfigError, NotFullRank
from gid.matrix import (
    Form,
    Permutation,
    decompose,
    decompose_multi,
    decompose_partial,
    from_prange_pair,
    inverse,
    is_invertible,
    mat_mul,
    random_full_rank,
    random_matrix,
    rank,
    row_echelon,
)


def naive_mul(A, B, q):
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    return (A.dot(B) % q).astype(np.int64)


def test_mul_examples():
    B = np.array([[1, 0], [0, 1], [1, 1]])
    assert mat_mul(A23, B, GF2).tolist() == [[0, 1], [1, 0]]
    assert np.array_equal(mat_mul(GF2.identity(3), B, GF2), B)
    assert not mat_mul(A23, np.zeros((3, 4), dtype=np.uint8), GF2).any()


@given(
    q=st.sampled_from([2, 3, 7, 251, 65521]),
    m=st.integers(1, 9),
    k=st.integers(1, 9),
    n=st.integers(1, 9),
    seed=st.integers(0, 2**32 - 1),
)
def test_mul_matches_bigint(q, m, k, n, seed):
    rng = np.random.default_rng(seed)
    F = PrimeField(q)
    A, B = random_matrix(rng, m, k, F), random_matrix(rng, k, n, F)
    assert np.array_equal(mat_mul(A, B, F), naive_mul(A, B, q))


def test_large_inner_dimension_exact(rng):
    # inner * (q-1)^2 beyond 2^53 must fall back to integer arithmetic
    F = PrimeField(65521)
    A = np.full((2, 3000), 65520, dtype=np.uint16)
    B = np.full((3000, 2), 65520, dtype=np.uint16)
    assert np.array_equal(mat_mul(A, B, F), naive_mul(A, B, 65521))


def test_rank_examples():
    assert rank(np.eye(4, dtype=np.uint8), GF2) == 4
    assert rank(A23, GF2) == 2
    assert rank(np.zeros((3, 5), dtype=np.uint8), GF2) == 0


def oracle_rank(A, q):
    from gid.oracle import _rref

    return len(_rref([[int(v) for v in row] for row in A], q)[1])


@given(
    q=st.sampled_from([2, 3, 5]),
    m=st.integers(1, 8),
    n=st.integers(1, 140),
    seed=st.integers(0, 2**32 - 1),
)
def test_rank_agrees_with_oracle(q, m, n, seed):
    rng = np.random.default_rng(seed)
    F = PrimeField(q)
    A = random_matrix(rng, m, n, F)
    if seed % 3 == 0 and m > 1:
        A[-1] = mat_mul(rng.integers(0, q, (1, m - 1)), A[:-1], F)[0]
    assert rank(A, F) == oracle_rank(A, q)
    R, piv = row_echelon(A, F)
    assert len(piv) == rank(A, F)
    for i, c in enumerate(piv):
        assert R[i, c] == 1 and np.count_nonzero(R[:, c]) == 1


@pytest.mark.parametrize("q", [2, 3, 13])
def test_inverse(q, rng):
    F = PrimeField(q)
    M = random_full_rank(rng, 7, 7, F)
    assert np.array_equal(mat_mul(M, inverse(M, F), F), F.identity(7))
    assert is_invertible(M, F)
    M[0] = M[1]
    assert not is_invertible(M, F)
    with pytest.raises(NotFullRank):
        inverse(M, F)


def test_permutation_roundtrip(rng):
    Q = Permutation(rng.permutation(6))
    z = np.arange(6)
    assert np.array_equal(Q.apply_inverse(Q.apply(z)), z)
    A = rng.integers(0, 2, (3, 6))
    assert np.array_equal(Q.permute_columns(A), mat_mul(A, Q.matrix(GF2), GF2))
    assert np.array_equal(Q.matrix(GF2) @ z, Q.apply(z))
    assert Q.inverse().inverse() == Q
    assert Q.mapping() == tuple(int(p) + 1 for p in Q.perm)


def test_fixed_point_decomposition():
    A = np.array([[1, 1, 0], [1, 0, 1]], dtype=np.uint8)
    T = from_prange_pair(A, GF2.identity(2), Permutation.identity(3), GF2)
    assert T.verify(A) and T.is_prange


def test_decompose_example(rng):
    T = decompose(A23, GF2, rng=rng)
    PAQ = T.Q.permute_columns(mat_mul(T.P, A23, GF2))
    assert np.array_equal(PAQ[:, 1:], GF2.identity(2))
    assert T.verify(A23)


def test_decompose_rank_deficient():
    with pytest.raises(NotFullRank):
        decompose(np.zeros((2, 3), dtype=np.uint8), GF2, rng=0)


@pytest.mark.parametrize("form", list(Form)[:4])
@pytest.mark.parametrize("q", [2, 3, 7])
def test_decompose_forms(form, q, rng):
    F = PrimeField(q)
    A = random_full_rank(rng, 5, 9, F)
    if form in (Form.RIGHT_ID_DEFICIENT, Form.LEFT_ID_DEFICIENT):
        A = np.vstack([A, mat_mul(np.ones((1, 5), dtype=np.int64), A, F)])
    T = decompose(A, F, form, rng)
    assert T.verify(A)
    assert T.r == 5


@given(seed=st.integers(0, 2**32 - 1), q=st.sampled_from([2, 3, 5]))
def test_decompose_verifies(seed, q):
    rng = np.random.default_rng(seed)
    F = PrimeField(q)
    m = int(rng.integers(1, 8))
    n = m + int(rng.integers(1, 8))
    A = random_full_rank(rng, m, n, F)
    T = decompose(A, F, rng=rng)
    assert T.verify(A) and T.k == n - m


def test_partial(rng):
    A = random_full_rank(rng, 4, 8, GF2)
    T = decompose_partial(A, 2, GF2, rng)
    assert T.verify(A) and not T.degenerate
    T0 = decompose_partial(A, 0, GF2, rng)
    assert T0.verify(A)
    Tr = decompose_partial(A, 4, GF2, rng)
    assert Tr.verify(A) and Tr.degenerate


def test_multi(rng):
    A = random_full_rank(rng, 6, 12, GF2)
    T = decompose_multi(A, [2, 2], GF2, rng)
    assert T.verify(A)
    assert decompose_multi(A, [6], GF2, rng).verify(A)
    with pytest.raises(ConfigError):
        decompose_multi(A, [4, 3], GF2, rng)
