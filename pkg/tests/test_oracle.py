import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import A23
from gid.errors import Inconsistent, TooLarge
from gid.oracle import (
    brute_solutions,
    enum_coset,
    gv_report,
    gv_threshold,
    min_codeword_weight,
    min_coset_weight,
    particular_and_kernel,
)


def test_coset_example():
    rep = enum_coset(A23, [1, 1], 2)
    assert rep.as_set() == {(1, 1, 0), (0, 0, 1)}
    assert rep.count == 2 and rep.min_weight == 1
    kern = enum_coset(A23, [0, 0], 2)
    assert (0, 0, 0) in kern.as_set() and kern.min_nonzero_weight == 3


def test_square_invertible():
    rep = enum_coset([[1, 1], [0, 1]], [1, 0], 3)
    assert rep.as_set() == {(1, 0)}


def test_inconsistent_and_cap():
    with pytest.raises(Inconsistent):
        enum_coset([[1, 1], [1, 1]], [1, 0], 2)
    with pytest.raises(TooLarge):
        enum_coset(np.eye(2, 40, dtype=int), [1, 0], 2)


def test_min_weights():
    assert min_coset_weight(A23, [1, 1], 2) == 1
    assert min_codeword_weight(A23, 2) == 3
    assert min_codeword_weight([[1, 0, 0], [0, 1, 0]], 2) == 1
    assert min_codeword_weight([[1, 1, 0], [1, 0, 1]], 2) == 3


@given(
    seed=st.integers(0, 2**32 - 1),
    q=st.sampled_from([2, 3]),
    m=st.integers(1, 3),
    n=st.integers(1, 6),
)
def test_coset_matches_brute_force(seed, q, m, n):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, q, (m, n))
    b = (A @ rng.integers(0, q, n)) % q
    rep = enum_coset(A, b, q)
    assert rep.as_set() == brute_solutions(A, b, q)
    x0, kern = particular_and_kernel(A, b, q)
    assert rep.count == q ** len(kern)


def test_gv_values():
    assert gv_threshold(500, 250, 2) == 57
    assert gv_threshold(500, 250, 3) == 122
    assert gv_threshold(1000, 500, 3) == 242
    assert gv_threshold(10, 10, 3) == 0
    rep = gv_report(500, 250, 3)
    assert rep["single_term_ge"] == 123 and rep["threshold"] == 122
