import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qprlab.config import ValidationError
from qprlab.frames import (
    born_check,
    build_frame,
    dual_of_minimal,
    frame_from_dict,
    frame_to_dict,
    haar_rotations,
    minimal_frame,
    mu,
    nu,
    random_nqpr,
    sic_frame,
    sic_projectors,
    traceless_basis,
    validate_nqpr,
    wootters_frame,
)
from qprlab.sampling import random_povm, random_pure_state, random_state
from qprlab.sic import d3_family, load_fiducial, sic_from_fiducial, validate_sic


def test_hesse_minus_spectra(hesse_minus):
    assert validate_nqpr(hesse_minus, 1e-9).passed
    for s in hesse_minus.spectra:
        assert np.allclose(s, [5 / 3, -1 / 3, -1 / 3], atol=1e-12)


def test_hesse_plus_spectra(hesse_plus):
    assert validate_nqpr(hesse_plus, 1e-9).passed
    for s in hesse_plus.spectra:
        assert np.allclose(s, [1, 1, -1], atol=1e-12)


def test_qubit_plus_and_minus_related(qubit_sic):
    m, p = sic_frame(qubit_sic, "minus"), sic_frame(qubit_sic, "plus")
    assert validate_nqpr(m).passed and validate_nqpr(p).passed
    assert np.allclose(np.sort(m.spectra, axis=None), np.sort(p.spectra, axis=None), atol=1e-12)


def test_bad_sign(hesse):
    with pytest.raises(ValueError):
        sic_frame(hesse, "neutral")


def test_wootters_qubit(wootters):
    f = wootters(2)
    assert len(f) == 4
    assert np.allclose(f.spectra[:, -1], -(math.sqrt(3) - 1) / 2, atol=1e-14)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_wootters_odd_prime_spectra(wootters, d):
    f = wootters(d)
    plus, minus = (d + 1) // 2, (d - 1) // 2
    for s in f.spectra:
        assert np.allclose(s, [1] * plus + [-1] * minus, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 8, 9, 10, 12])
def test_wootters_frames_valid(wootters, d):
    f = wootters(d)
    assert len(f) == d * d
    assert validate_nqpr(f, 1e-9).passed


def test_wootters_composite_labels(wootters):
    f = wootters(6)
    assert f.labels[0] == (0, 0, 0, 0)
    assert f.labels[1] == (0, 0, 0, 1)
    assert f.labels[9] == (0, 1, 0, 0)
    assert wootters(4).provenance == "2x2"


def test_doubled_element_fails_orthogonality(wootters):
    mats = list(wootters(3).matrices)
    mats[1] = mats[0]
    rep = validate_nqpr(mats, 1e-9)
    assert not rep.passed
    assert rep.orthogonality_dev > 1


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_random_nqpr(d):
    f = random_nqpr(d, seed=3)
    assert validate_nqpr(f, 1e-9).passed
    assert np.array_equal(f.matrices, random_nqpr(d, seed=3).matrices)
    assert not np.array_equal(f.matrices, random_nqpr(d, seed=4).matrices)


def test_traceless_basis_orthonormal():
    B = np.array(traceless_basis(4))
    G = np.real(np.einsum("jab,kba->jk", B, B))
    assert np.allclose(G, np.eye(15), atol=1e-14)
    assert np.allclose(np.einsum("jaa->j", B), 0)


def test_rotations_stay_valid(hesse_minus):
    for g in haar_rotations(hesse_minus, 5, seed=1):
        assert validate_nqpr(g, 1e-9).passed
        assert np.allclose(g.spectra, hesse_minus.spectra, atol=1e-12)


def test_sic_projectors_round_trip(hesse, hesse_minus, hesse_plus):
    for f in (hesse_minus, hesse_plus):
        assert np.allclose(sic_projectors(f), hesse.matrices(), atol=1e-13)


def test_maximally_mixed_quasiprobabilities(hesse_minus, wootters):
    for f in (hesse_minus, wootters(4)):
        d = f.dim
        assert np.allclose(mu(np.eye(d) / d, f).values, 1 / d**2, atol=1e-15)


def test_mu_of_sic_projector(hesse, hesse_minus):
    m = mu(hesse.projectors[0].matrix, hesse_minus)
    assert abs(m.values[0] - 5 / 9) < 1e-12
    assert abs(m.total - 1) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31))
def test_pure_state_normalization(seed):
    psi = random_pure_state(2, seed)
    assert abs(mu(np.outer(psi, psi.conj()), wootters_frame(2)).total - 1) < 1e-12


def test_nu_identity_and_computational_projector(hesse_minus, wootters):
    assert np.allclose(nu(np.eye(3), hesse_minus), 1)
    assert np.allclose(nu(np.diag([1.0, 0.0]), wootters(2)), [1, 1, 0, 0], atol=1e-15)


def test_invalid_state_and_effect(hesse_minus):
    with pytest.raises(ValidationError):
        mu(np.diag([1.5, -0.5, 0.0]), hesse_minus)
    with pytest.raises(ValidationError):
        mu(np.eye(3), hesse_minus)
    with pytest.raises(ValidationError):
        nu(2 * np.eye(3), hesse_minus)


def test_born_rule_computational_basis(wootters):
    rho = random_state(3, seed=5)
    povm = [np.diag(np.eye(3)[i]) for i in range(3)]
    assert born_check(rho, povm, wootters(3)) <= 1e-10


def test_born_rule_sic_povm_on_mixed_state(hesse, hesse_minus):
    povm = [p.matrix / 3 for p in hesse.projectors]
    assert born_check(np.eye(3) / 3, povm, hesse_minus) <= 1e-14


@pytest.mark.parametrize("seed", range(5))
def test_born_rule_random(hesse_minus, seed):
    assert born_check(random_state(3, seed), random_povm(3, 2, seed), hesse_minus) <= 1e-10


def test_born_rule_rejects_incomplete_povm(hesse_minus):
    with pytest.raises(ValidationError):
        born_check(np.eye(3) / 3, [np.eye(3) / 2], hesse_minus)


def test_dual_of_orthonormal_basis():
    B = [np.eye(3) / math.sqrt(3)] + traceless_basis(3)
    D = dual_of_minimal(B)
    assert np.allclose(D.elements, np.array(B), atol=1e-13)


def test_dual_of_sic_minus(hesse_minus):
    D = dual_of_minimal([q / 3 for q in hesse_minus.matrices])
    assert np.allclose(D.elements, hesse_minus.matrices, atol=1e-12)


def test_dual_of_random_basis():
    gen = np.random.default_rng(9)
    F = []
    for _ in range(4):
        A = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
        F.append(A + A.conj().T)
    D = dual_of_minimal(F)
    cross = np.real(np.einsum("jab,kba->jk", np.array(F), D.elements))
    assert np.allclose(cross, np.eye(4), atol=1e-8)


def test_dual_rejects_singular_and_wrong_size():
    with pytest.raises(ValidationError):
        dual_of_minimal([np.eye(2)] * 4)
    with pytest.raises(ValidationError):
        minimal_frame([np.eye(2)] * 3)


def test_serialization_round_trip(hesse_minus):
    back = frame_from_dict(frame_to_dict(hesse_minus))
    assert back.kind == "sic-minus"
    assert np.array_equal(back.matrices, hesse_minus.matrices)


def test_build_frame():
    assert build_frame(3, "wootters").kind == "wootters"
    assert build_frame(3, "sic-plus", t=0.2).kind == "sic-plus"
    with pytest.raises(ValueError):
        build_frame(3, "bogus")
    with pytest.raises(ValidationError):
        build_frame(2, "sic-minus", fiducial=d3_family(0))


@pytest.mark.parametrize("d", [4, 5, 6, 7, 8])
def test_ingested_frames(data_dir, d):
    s = sic_from_fiducial(load_fiducial(f"{data_dir}/sic_d{d}.txt"))
    for sign in ("minus", "plus"):
        f = sic_frame(s, sign)
        assert validate_nqpr(f, 1e-6).passed
        assert validate_sic(sic_projectors(f), 1e-6).passed
