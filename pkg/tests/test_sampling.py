import numpy as np
import pytest

from linoptsim.distributions import OutputDistribution
from linoptsim.errors import EmptyPostselectionError, InvalidDistributionError, InvalidInputError
from linoptsim.exact import aa_distribution, predicted_distribution, InputSpec
from linoptsim.sampling import SampleBatch, draw, empirical_distribution, postselect, total_variation

A, B = (1, 0), (0, 1)


def test_point_mass_draws():
    d = OutputDistribution(2, {A: 1.0, B: 0.0})
    batch = draw(d, 500, seed=1)
    assert set(batch.configs()) == {A}


def test_fair_coin_frequency():
    d = OutputDistribution(2, {A: 0.5, B: 0.5})
    batch = draw(d, 100_000, seed=2024)
    freq = empirical_distribution(batch)[A]
    assert 0.49 <= freq <= 0.51
    # frozen test vector for the PCG64 stream at this seed
    assert int(round(freq * 100_000)) == int((batch.draws[:, 0] == 1).sum())


def test_same_seed_same_batch():
    d = aa_distribution(np.eye(2), 1)
    a, b = draw(d, 1000, seed=5), draw(d, 1000, seed=5)
    assert a.draws.tobytes() == b.draws.tobytes()
    assert a.to_csv() == b.to_csv()


def test_zero_probability_never_drawn(bs):
    d = aa_distribution(bs, 2)
    d.probs[(1, 1)] = 0.0
    batch = draw(d, 50_000, seed=3)
    assert (1, 1) not in set(batch.configs())


def test_unnormalized_rejected():
    with pytest.raises(InvalidDistributionError):
        draw(OutputDistribution(2, {A: 0.6, B: 0.6}), 10, seed=0)


def test_empirical_distribution():
    batch = SampleBatch(0, 2, np.array([A]))
    assert empirical_distribution(batch).probs == {A: 1.0}
    batch = SampleBatch(0, 2, np.array([A, A, B, B]))
    assert empirical_distribution(batch).probs == {A: 0.5, B: 0.5}
    with pytest.raises(InvalidInputError):
        empirical_distribution(SampleBatch(0, 2, np.zeros((0, 2), dtype=int)))


def test_empirical_sums_to_one(bs):
    batch = draw(aa_distribution(bs, 2), 99_991, seed=4)
    assert empirical_distribution(batch).total() == pytest.approx(1.0, abs=1e-15)


def test_hom_sampling_tvd(bs):
    exact = aa_distribution(bs, 2)
    emp = empirical_distribution(draw(exact, 100_000, seed=11))
    assert total_variation(emp, exact) < 0.01


def test_total_variation_basic():
    p = OutputDistribution(2, {A: 0.3, B: 0.7})
    assert total_variation(p, p) == 0
    assert total_variation(OutputDistribution(2, {A: 1.0}), OutputDistribution(2, {B: 1.0})) == 1
    with pytest.raises(InvalidInputError):
        total_variation(p, OutputDistribution(3, {(1, 0, 0): 1.0}))


def test_tvd_shrinks_with_samples(bs):
    exact = aa_distribution(bs, 2)
    small = [total_variation(empirical_distribution(draw(exact, 10_000, s)), exact) for s in range(20)]
    big = [total_variation(empirical_distribution(draw(exact, 1_000_000, s)), exact) for s in range(20)]
    assert np.median(small) > np.median(big)


def test_postselect_aa_unchanged(bs):
    d = aa_distribution(bs, 2)
    cond, mass = postselect(d, 2)
    assert mass == pytest.approx(1.0, abs=1e-12)
    assert cond.max_abs_difference(d) < 1e-12


def test_postselect_spacs_mass(bs):
    d = predicted_distribution(InputSpec.spacs([1.0, 1.0], 2), bs)
    cond, mass = postselect(d, 2)
    assert mass == pytest.approx(0.25, abs=1e-12)
    assert mass == pytest.approx(sum(p for c, p in d.probs.items() if sum(c) == 2), abs=1e-12)
    assert cond.total() == pytest.approx(1.0)


def test_postselect_batch_and_empty(bs):
    d = predicted_distribution(InputSpec.spacs([1.0, 1.0], 2), bs)
    batch = draw(d, 40_000, seed=8)
    _, mass = postselect(batch, 2)
    assert abs(mass - 0.25) < 0.01
    with pytest.raises(EmptyPostselectionError):
        postselect(aa_distribution(bs, 2), 1)


def test_batch_exports():
    batch = SampleBatch(3, 2, np.array([A, B]), "demo")
    assert batch.to_csv() == "s0,s1\n1,0\n0,1\n"
    assert batch.to_json() == '{"draws":[[1,0],[0,1]],"m":2,"seed":3,"source":"demo"}'
