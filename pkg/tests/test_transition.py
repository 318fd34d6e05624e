import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linoptsim.errors import InvalidInputError
from linoptsim.exact import spacs_sector_weights
from linoptsim.transition import (
    AA_HARD,
    INTERMEDIATE,
    TRIVIAL,
    classify_regime,
    limit_sweep,
    postselection_probability,
    sweep_csv,
)


def test_examples():
    assert postselection_probability(7, 0.0, 7) == 1
    assert postselection_probability(2, 1.0, 1) == pytest.approx(0.5, abs=1e-15)
    p = postselection_probability(1000, 1 / 1000, 1000)
    assert p == pytest.approx(1.001**-1000, rel=1e-12)
    assert abs(p - math.exp(-1)) < 1e-3


def test_invalid():
    with pytest.raises(InvalidInputError):
        postselection_probability(3, 0.1, 4)
    with pytest.raises(InvalidInputError):
        limit_sweep("n^3", [10])
    with pytest.raises(InvalidInputError):
        classify_regime(0, 0.1)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 60), a=st.floats(1e-4, 1e3))
def test_sums_to_one(n, a):
    total = math.fsum(postselection_probability(n, a, i) for i in range(n + 1))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_agrees_with_exact_module():
    for n in range(11):
        for a in [0.0, 0.01, 0.3, 1.0, 5.0]:
            w = spacs_sector_weights(n, a)
            for i in range(n + 1):
                assert abs(postselection_probability(n, a, i) - w[i]) < 1e-12


def test_large_n_no_overflow():
    p = postselection_probability(10**6, 1e-6, 10**6)
    assert abs(p - math.exp(-1)) < 1e-6
    assert postselection_probability(10**6, 1e12, 0) == pytest.approx((1 + 1e-12) ** -(10**6), rel=1e-9)


NS = [10, 100, 1000, 10000]


def test_rule_inverse_n():
    reps = limit_sweep("1/n", NS)
    p = [r.p_n for r in reps]
    assert all(x > y for x, y in zip(p, p[1:]))
    for n, r in zip(NS, reps):
        assert abs(r.p_n - math.exp(-1)) < 2 / n
        assert r.regime == AA_HARD


def test_rule_inverse_n_squared():
    reps = limit_sweep("1/n^2", NS)
    p = [r.p_n for r in reps]
    assert all(x < y for x, y in zip(p, p[1:]))
    assert all(1 - r.p_n < 2 / r.n for r in reps)


def test_rule_n_squared():
    reps = limit_sweep("n^2", NS)
    p = [r.p_0 for r in reps]
    assert all(x < y for x, y in zip(p, p[1:]))
    assert all(1 - r.p_0 < 2 / r.n for r in reps)
    assert all(r.regime == TRIVIAL for r in reps)


def test_report_invariants():
    for rule in ["1/n", "1/n^2", "n^2"]:
        for r in limit_sweep(rule, [1, 2, 5, 50]):
            assert 0 <= r.p_n <= 1 and 0 <= r.p_0 <= 1
            assert r.p_n + r.p_0 <= 1 + 1e-15


def test_classify_examples():
    assert classify_regime(100, 0.005) == AA_HARD
    assert classify_regime(10, 200) == TRIVIAL
    assert classify_regime(10, 1) == INTERMEDIATE


def test_classify_monotone():
    order = {AA_HARD: 0, INTERMEDIATE: 1, TRIVIAL: 2}
    for n in [1, 3, 10, 100]:
        labels = [order[classify_regime(n, a)] for a in np.logspace(-6, 6, 200)]
        assert labels == sorted(labels)


def test_sweep_csv():
    text = sweep_csv(limit_sweep("1/n", [10]))
    assert text.splitlines()[0] == "n,alpha_sq,p_n,p_0,regime"
    assert text.splitlines()[1].startswith("10,0.10000000000000001,0.38554328942953")
