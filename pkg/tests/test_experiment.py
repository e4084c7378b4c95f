import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gid.errors import ConfigError, FormatError
from gid.experiment import (
    ExperimentConfig,
    decomposition_rng,
    from_csv,
    from_json,
    make_instance,
    replay_witness,
    run_easy_weights,
    to_csv,
    to_json,
)
from gid.matrix import Form, decompose, mat_vec
from gid.oracle import enum_coset


@pytest.mark.parametrize("q", [2, 3])
def test_exhaustive_matches_oracle(q):
    cfg = ExperimentConfig(6, 3, q, iterations=1, decompositions=1, seed=5, exhaustive=True)
    rep = run_easy_weights(cfg)
    H, s = make_instance(cfg)
    T = decompose(H, q, Form.RIGHT_ID_FULL, decomposition_rng(cfg, 1))
    info = T.Q.perm[: cfg.k]
    # every coset element with a nonzero head, i.e. not the Prange solution
    want = {int(np.count_nonzero(x)) for x in enum_coset(H, s, q).solutions if np.any(np.asarray(x)[info])}
    assert rep.merged() == want


def test_witnesses_replay():
    cfg = ExperimentConfig(60, 30, 3, iterations=3, decompositions=2, seed=8)
    rep = run_easy_weights(cfg)
    H, s = make_instance(cfg)
    assert set(rep.witnesses) == rep.merged()
    for w, wit in rep.witnesses.items():
        x = replay_witness(cfg, wit, H, s)
        assert np.count_nonzero(x) == w
        assert np.array_equal(mat_vec(H, x, 3), s)


@given(seed=st.integers(0, 1000), q=st.sampled_from([2, 3]))
def test_coverage_is_monotone(seed, q):
    cfg = ExperimentConfig(30, 15, q, iterations=4, decompositions=2, seed=seed)
    rep = run_easy_weights(cfg)
    for it in range(1, 4):
        assert rep.missing(it + 1) <= rep.missing(it)
    one = run_easy_weights(ExperimentConfig(30, 15, q, iterations=4, decompositions=1, seed=seed))
    # the instance and the stream of decomposition 1 do not depend on the count
    assert rep.reached[0] == one.reached[0]
    assert one.merged() <= rep.merged()


def test_worker_count_does_not_change_output():
    cfg = ExperimentConfig(80, 40, 2, iterations=3, decompositions=4, seed=1)
    a, b = run_easy_weights(cfg), run_easy_weights(cfg, workers=3)
    assert a.reached == b.reached and a.witnesses == b.witnesses


def test_csv_and_json_roundtrip():
    rep = run_easy_weights(ExperimentConfig(40, 20, 3, iterations=3, decompositions=2, seed=4))
    back = from_csv(to_csv(rep))
    assert back == rep
    back = from_json(to_json(rep))
    assert back == rep and back.witnesses == rep.witnesses
    lines = to_csv(rep).splitlines()
    assert lines[0] == "decomp,iteration,weight,reached" and lines[-1].startswith("summary,3,")


def test_csv_rejects_tampering():
    text = to_csv(run_easy_weights(ExperimentConfig(20, 10, 2, iterations=1, seed=0)))
    with pytest.raises(FormatError):
        from_csv(text.replace("decomp,", "dec,", 1))
    with pytest.raises(FormatError):
        from_csv("\n".join(text.splitlines()[:-1]))


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(10, 10)
    with pytest.raises(ConfigError):
        ExperimentConfig(10, 5, q=4)
    with pytest.raises(ConfigError):
        ExperimentConfig(10, 5, iterations=0)


def test_small_interval_shape():
    # r(q-1)/q = 50 and r(q-1)/q + k = 150
    rep = run_easy_weights(ExperimentConfig(200, 100, 2, iterations=10, seed=3))
    assert rep.covers(50, 150)
