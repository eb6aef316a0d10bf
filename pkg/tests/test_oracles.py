import math

import numpy as np
import pytest

from qprlab import kernels, oracles
from qprlab.frames import wootters_frame
from qprlab.negativity import closed_forms, frame_channel_negativity, frame_unitary_negativity


def test_constraint_vector_d2():
    r = math.sqrt(3)
    for seed in range(10):
        v = oracles.sample_constraint_vector(2, seed).v
        assert np.allclose(np.sort(v), [(1 - r) / 2, (1 + r) / 2], atol=1e-14)


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_samples_are_feasible(d):
    V = oracles.sample_constraint_vectors(d, 500, seed=1)
    assert np.allclose(V.sum(axis=1), 1, atol=1e-12)
    assert np.allclose((V**2).sum(axis=1), d, atol=1e-11)
    cv = oracles.sample_constraint_vector(d, 4)
    assert max(cv.residuals()) < 1e-12


def test_sample_rejects_d1():
    with pytest.raises(ValueError):
        oracles.sample_constraint_vector(1)


def test_seed_reproducibility():
    a = oracles.sample_constraint_vectors(4, 10, 7, (1,))
    assert np.array_equal(a, oracles.sample_constraint_vectors(4, 10, 7, (1,)))
    assert not np.array_equal(a, oracles.sample_constraint_vectors(4, 10, 7, (2,)))


def test_bound_values():
    assert oracles.l1_bound(3) == 3
    assert abs(oracles.l1_bound(4) - math.sqrt(15)) < 1e-15
    assert abs(oracles.channel_lower_bound(3) - 5 / 3) < 1e-14
    assert abs(oracles.negc2_bound(2) - (math.sqrt(3) - 0.5)) < 1e-14


@pytest.mark.parametrize("d", range(2, 10))
def test_bounds_agree_with_closed_forms(d):
    cf = closed_forms(d)
    assert abs(oracles.channel_lower_bound(d) - cf["NC_lower"]) < 1e-13
    assert abs(oracles.channel_lower_bound(d) - cf["NC_minus"]) < 1e-13
    assert abs(oracles.negc2_bound(d) - cf["NC_upper"]) < 1e-13


@pytest.mark.parametrize("d", range(2, 10))
def test_extremizers_attain_bounds(d):
    for ext, fn, bound in (
        (oracles.l1_extremal(d), oracles._l1, oracles.l1_bound(d)),
        (oracles.channel_lower_extremal(d), oracles._channel_lower, oracles.channel_lower_bound(d)),
        (oracles.negc2_extremal(d), oracles._negc2, oracles.negc2_bound(d)),
    ):
        assert abs(ext.sum() - 1) < 1e-12
        assert abs((ext**2).sum() - d) < 1e-11
        assert abs(fn(ext) - bound) < 1e-10


@pytest.mark.parametrize("d", range(4, 9))
def test_two_level_objective_ordering(d):
    assert oracles.f_two_level(2, d - 2, d) > oracles.f_two_level(1, d - 1, d)
    assert abs(oracles.f_two_level(1, d - 1, d) - oracles.channel_lower_bound(d)) < 1e-12


@pytest.mark.parametrize("check", [
    oracles.lemma_l1_check,
    oracles.lemma_channel_lower_check,
    oracles.lemma_negc2_check,
])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_lemma_checks(check, d):
    r = check(d, samples=2000, seed=3, restarts=50, steps=300)
    assert r.passed
    assert r.violations == 0
    assert r.gap < 1e-4
    assert set(r.to_dict()) == {"lemma", "d", "bound", "best_found", "gap", "extremal_attained",
                                "samples", "seed"}


def test_wrong_extremal_is_reported():
    r = oracles._run("l1", oracles.L1, 3, 3.0, np.array([1.0, 0.0, 0.0]), True, 100, 0, 5, 10, 1)
    assert not r.extremal_attained and not r.passed


def test_theorem1_spectrum_check():
    up, low = oracles.theorem1_spectrum_check(4, samples=2000, seed=1, restarts=50, steps=300)
    assert up.passed and low.passed
    assert up.gap < 1e-4 and low.gap < 1e-4


def test_hill_climb_improves_on_sampling():
    d = 6
    V = oracles.sample_constraint_vectors(d, 200, 0, (9, 0))
    sampled = oracles._l1(V).max()
    climbed, v = oracles.hill_climb(d, oracles.L1, True, 0, (9, 1), restarts=20, steps=300)
    assert climbed >= sampled
    assert abs(v.sum() - 1) < 1e-12


@pytest.mark.parametrize("d", [2, 3])
def test_monte_carlo_respects_frame_values(d):
    f = wootters_frame(d)
    mu = -d * oracles.random_unitary_min_entries(f, 1000, seed=2)
    mc = -d * oracles.random_channel_min_entries(f, 200, seed=2)
    assert mu.max() <= frame_unitary_negativity(f).value + 1e-10
    assert mc.max() <= frame_channel_negativity(f).value + 1e-10


def test_monte_carlo_threads_do_not_change_results():
    f = wootters_frame(3)
    a = oracles.random_unitary_min_entries(f, 1200, seed=4, threads=1)
    b = oracles.random_unitary_min_entries(f, 1200, seed=4, threads=3)
    assert np.array_equal(a, b)
    c = oracles.random_channel_min_entries(f, 600, seed=4, threads=1)
    e = oracles.random_channel_min_entries(f, 600, seed=4, threads=4)
    assert np.array_equal(c, e)


def test_random_objects():
    rho = oracles.random_state(3, 1)
    assert abs(np.trace(rho).real - 1) < 1e-12
    assert np.linalg.eigvalsh(rho).min() > -1e-12
    U = oracles.random_unitary(4, 1)
    assert np.allclose(U.conj().T @ U, np.eye(4), atol=1e-12)
    assert oracles.random_channel(3, 1).tp_deviation() < 1e-12
    psi = oracles.random_pure_state(3, 1)
    assert abs(np.linalg.norm(psi) - 1) < 1e-12


def test_backend_reported():
    assert kernels.BACKEND in kernels.backends()
