import numpy as np
import pytest

from qprlab.frames import validate_nqpr
from qprlab.hw import displacement, parity, prime_factors, weyl_pair


def test_qubit_pair():
    p = weyl_pair(2)
    assert np.allclose(p.X, [[0, 1], [1, 0]])
    assert np.allclose(p.Z, np.diag([1, -1]))


def test_commutation_d3():
    p = weyl_pair(3)
    assert np.allclose(p.Z @ p.X, np.exp(2j * np.pi / 3) * p.X @ p.Z, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_order_and_unitarity(d):
    p = weyl_pair(d)
    for M in (p.X, p.Z):
        assert np.allclose(M.conj().T @ M, np.eye(d), atol=1e-12)
        assert np.allclose(np.linalg.matrix_power(M, d), np.eye(d), atol=1e-12)


def test_bad_dimension():
    with pytest.raises(ValueError):
        weyl_pair(1)


def test_displacements():
    p = weyl_pair(3)
    assert np.array_equal(displacement(0, 0, p), np.eye(3))
    assert np.allclose(displacement(1, 0, p), p.X)
    assert np.allclose(displacement(2, 1, p), p.X @ p.X @ p.Z)


def test_parity_d3_matrix():
    P = parity(3)
    assert np.array_equal(P.matrix.real, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert abs(P.trace - 1) < 1e-15


def test_parity_d5_spectrum():
    P = parity(5)
    assert np.allclose(P.spectrum.values, [1, 1, 1, -1, -1], atol=1e-14)
    assert abs(np.trace(P.matrix @ P.matrix).real - 5) < 1e-14


@pytest.mark.parametrize("d", [4, 6, 9])
def test_parity_rejects_non_odd_primes(d):
    with pytest.raises(ValueError):
        parity(d)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_parity_conjugates_form_an_nqpr(p):
    pair = weyl_pair(p)
    P = parity(p).matrix
    elems = []
    for j in range(p):
        for k in range(p):
            D = displacement(j, k, pair)
            elems.append(D @ P @ D.conj().T)
    assert validate_nqpr(elems, 1e-9).passed


def test_conjugation_ignores_global_phase():
    gen = np.random.default_rng(2)
    pair = weyl_pair(5)
    P = parity(5).matrix
    D = displacement(2, 3, pair)
    for phi in gen.uniform(0, 2 * np.pi, 5):
        Dp = np.exp(1j * phi) * D
        assert np.allclose(Dp @ P @ Dp.conj().T, D @ P @ D.conj().T, atol=1e-13)


def test_prime_factors():
    assert prime_factors(12) == [2, 2, 3]
    assert prime_factors(9) == [3, 3]
    assert prime_factors(13) == [13]
