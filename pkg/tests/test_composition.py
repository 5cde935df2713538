import math

import numpy as np
import pytest

from gptcomp import (
    CertificateRequiredError,
    CompositionRule,
    HermitianOperator,
    InvalidParameterError,
    SeparableCertificate,
    bell_state,
    bloch_state,
    identity,
    is_effect,
    is_psd,
    is_state,
    max_ic3_states,
    measurement_is_valid,
    min_eigenvalue,
    min_ic3_measurements,
    min_ic3_states,
    partial_transpose,
    pauli_compose,
    pauli_correlation_measurements,
    pauli_decompose,
    pauli_diagonal_min,
    popt_membership,
    projector,
    pure_tensor_expectation,
    tensor,
    trace_pair,
)
from gptcomp.operators import KET_0, KET_1, KET_PLUS

from conftest import random_density, random_hermitian, random_unitary

MIN = CompositionRule.MINIMAL
MAX = CompositionRule.MAXIMAL
QUA = CompositionRule.QUANTUM


def diag_correlation(t):
    return pauli_compose(np.diag([1.0, t[0], t[1], t[2]]))


# ---------------------------------------------------------------------------
# POPT membership
# ---------------------------------------------------------------------------

def test_popt_maximally_mixed():
    v = popt_membership(identity(4) * 0.25)
    assert v.member
    assert v.min_value == pytest.approx(0.25, abs=1e-9)
    assert v.witness is None


def test_popt_boundary_partial_transpose():
    v = popt_membership(partial_transpose(bell_state("phi+")))
    assert v.member
    assert abs(v.min_value) < 1e-9


def test_popt_witness_for_overcorrelated_operator():
    w = diag_correlation((1.2, 1.2, 1.2))
    v = popt_membership(w)
    assert not v.member
    assert v.min_value == pytest.approx(0.25 * (1 - 1.2), abs=1e-9)
    m, n = v.witness
    # any minimizer has the two Bloch vectors anti-aligned
    assert np.max(np.abs(np.asarray(m) + np.asarray(n))) < 1e-6
    assert pure_tensor_expectation(w, m, n) == pytest.approx(v.min_value, abs=1e-12)


def test_popt_random_quantum_states_are_members(rng):
    for _ in range(15):
        v = popt_membership(random_density(rng, 4))
        assert v.member
        assert v.min_value >= -1e-9


def test_popt_diagonal_cross_check(rng):
    # grid + refinement against the exact anti-aligned-axes formula
    for _ in range(20):
        t = rng.uniform(-1.5, 1.5, size=3)
        w = diag_correlation(t)
        exact = pauli_diagonal_min(w)
        v = popt_membership(w)
        assert v.min_value == pytest.approx(exact, abs=1e-7)
        assert v.member == (exact >= -1e-9)


def test_popt_unit_cube_correlations_are_members(rng):
    for _ in range(10):
        t = rng.uniform(-1.0, 1.0, size=3)
        assert popt_membership(diag_correlation(t)).member


def test_pauli_diagonal_min_rejects_general_operators(rng):
    with pytest.raises(InvalidParameterError):
        pauli_diagonal_min(random_hermitian(rng, 4))


# ---------------------------------------------------------------------------
# is_state / is_effect
# ---------------------------------------------------------------------------

def test_is_state_quantum():
    assert is_state(bell_state("phi+"), QUA)
    assert not is_state(partial_transpose(bell_state("phi+")), QUA)


def test_is_state_minimal_requires_certificate():
    plus = projector(KET_PLUS)
    product = tensor(plus, plus)
    cert = SeparableCertificate(((plus, plus),))
    assert is_state(product, MIN, cert)
    with pytest.raises(CertificateRequiredError):
        is_state(product, MIN)


def test_is_state_rejects_unnormalized():
    with pytest.raises(InvalidParameterError):
        is_state(identity(4), QUA)


def test_is_state_maximal_popt():
    assert is_state(partial_transpose(bell_state("psi-")), MAX)
    assert not is_state(diag_correlation((1.2, 1.2, 1.2)), MAX)


def test_is_effect_chain_for_e1():
    e1 = min_ic3_measurements()[0].effects[0]
    assert is_effect(e1, MIN)
    assert not is_effect(e1, QUA)
    assert min_eigenvalue(e1) == pytest.approx(-0.5, abs=1e-9)


def test_is_effect_maximal_needs_both_certificates():
    parity = pauli_correlation_measurements()["zz"]
    even, odd = parity.effects
    even_cert, odd_cert = parity.certificates
    assert is_effect(even, MAX, even_cert, odd_cert)
    with pytest.raises(CertificateRequiredError):
        is_effect(even, MAX, even_cert)


def test_certificate_verify_rejects_bad_decompositions():
    plus = projector(KET_PLUS)
    cert = SeparableCertificate(((plus, plus),))
    assert not cert.verify(identity(4) * 0.25)
    skewed = HermitianOperator(np.diag([1.0, -0.1]))
    bad = SeparableCertificate(((skewed, plus),))
    assert not bad.verify(tensor(skewed, plus))  # PSD factor check fails


# ---------------------------------------------------------------------------
# the concrete scenario ingredients
# ---------------------------------------------------------------------------

def test_min_ic3_measurement_matrices():
    m1, m2, m3 = min_ic3_measurements()
    e1 = m1.effects[0]
    e2 = m2.effects[0]
    assert np.allclose(
        e1.matrix,
        [[1, 0, 0, 0.5], [0, 0, 0.5, 0], [0, 0.5, 0, 0], [0.5, 0, 0, 1]],
    )
    assert np.allclose(
        e2.matrix,
        [[0, 0, 0, 0.5], [0, 1, 0.5, 0], [0, 0.5, 1, 0], [0.5, 0, 0, 0]],
    )
    assert np.allclose(m3.effects[0].matrix, np.diag([1.0, 0.0, 1.0, 0.0]))
    for m in (m1, m2, m3):
        assert (m.effects[0] + m.effects[1]).isclose(identity(4), 1e-12)
        assert measurement_is_valid(m, MIN)
    assert measurement_is_valid(m3, QUA)
    assert not measurement_is_valid(m1, QUA)


def test_min_ic3_product_state_formula(rng):
    # <E_j> on bloch(m) x bloch(n) is (1 + mx nx +/- mz nz) / 2
    m1, m2, _ = min_ic3_measurements()
    e1, e2 = m1.effects[0], m2.effects[0]
    for _ in range(25):
        m = rng.normal(size=3)
        m /= np.linalg.norm(m)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        rho = tensor(bloch_state(m), bloch_state(n))
        assert trace_pair(e1, rho) == pytest.approx(
            0.5 * (1 + m[0] * n[0] + m[2] * n[2]), abs=1e-12
        )
        assert trace_pair(e2, rho) == pytest.approx(
            0.5 * (1 + m[0] * n[0] - m[2] * n[2]), abs=1e-12
        )


def test_min_ic3_effects_in_range_on_bloch_grid():
    # 64 x 64 pure product states: every effect value stays inside [0, 1]
    m1, m2, _ = min_ic3_measurements()
    effects = [m1.effects[0], m1.effects[1], m2.effects[0], m2.effects[1]]
    coeffs = [pauli_decompose(e) for e in effects]
    thetas = np.linspace(0.0, np.pi, 8)
    phis = np.linspace(0.0, 2 * np.pi, 8, endpoint=False)
    points = []
    for th in thetas:
        for ph in phis:
            points.append(
                [1.0, np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)]
            )
    pts = np.array(points)
    for c in coeffs:
        vals = 0.25 * (pts @ c @ pts.T)
        assert vals.min() >= -1e-12
        assert vals.max() <= 1 + 1e-12


def test_min_ic3_states_are_certified_products():
    states = min_ic3_states()
    assert len(states) == 8
    for bits, (w, cert) in states.items():
        assert w.trace == pytest.approx(1.0, abs=1e-12)
        assert cert.verify(w)
        assert is_state(w, MIN, cert)
    # spot check two rows of the encoding table
    assert states["010"][0].isclose(tensor(projector(KET_0), projector(KET_0)), 1e-12)
    assert states["100"][0].isclose(tensor(projector(KET_1), projector(KET_0)), 1e-12)


def test_max_ic3_states_sign_table():
    states = max_ic3_states()
    assert len(states) == 8
    psd_count = 0
    for bits, w in states.items():
        c = pauli_decompose(w)
        assert w.trace == pytest.approx(1.0, abs=1e-12)
        expected = tuple((-1.0) ** int(b) for b in bits)
        assert (c[1, 1], c[2, 2], c[3, 3]) == pytest.approx(expected, abs=1e-12)
        assert popt_membership(w).member
        psd_count += is_psd(w)
    assert psd_count == 4  # the Bell states; the partial transposes are not PSD
    gamma_phi_minus = states["110"]
    c = pauli_decompose(gamma_phi_minus)
    assert (c[1, 1], c[2, 2], c[3, 3]) == pytest.approx((-1.0, -1.0, 1.0), abs=1e-12)


def test_parity_measurement_expectations():
    parity = pauli_correlation_measurements()
    gamma = partial_transpose(bell_state("phi+"))
    assert trace_pair(parity["xx"].effects[0], gamma) == pytest.approx(1.0, abs=1e-12)
    assert trace_pair(parity["yy"].effects[0], bell_state("phi+")) == pytest.approx(
        0.0, abs=1e-12
    )
    assert trace_pair(parity["zz"].effects[0], bell_state("psi-")) == pytest.approx(
        0.0, abs=1e-12
    )
    for meas in parity.values():
        assert (meas.effects[0] + meas.effects[1]).isclose(identity(4), 1e-12)
        for eff, cert in zip(meas.effects, meas.certificates):
            assert cert.verify(eff)
            assert len(cert.terms) == 2
        assert measurement_is_valid(meas, MAX)
        assert measurement_is_valid(meas, QUA)


def test_zz_parity_is_the_even_projector():
    zz = pauli_correlation_measurements()["zz"]
    assert np.allclose(zz.effects[0].matrix, np.diag([1.0, 0.0, 0.0, 1.0]))
    assert np.allclose(zz.effects[1].matrix, np.diag([0.0, 1.0, 1.0, 0.0]))


# ---------------------------------------------------------------------------
# cone inclusion chain (small sample here; the big sweep is in acceptance)
# ---------------------------------------------------------------------------

def sample_certified_effect_pair(rng):
    """A random separable two-outcome POVM built on a random product basis."""
    u = random_unitary(rng, 2)
    v = random_unitary(rng, 2)
    lam = rng.uniform(0.05, 0.95, size=4)
    terms_e = []
    terms_c = []
    k = 0
    for i in range(2):
        for j in range(2):
            a = projector(u[:, i])
            b = projector(v[:, j])
            terms_e.append((lam[k] * a, b))
            terms_c.append(((1 - lam[k]) * a, b))
            k += 1
    cert_e = SeparableCertificate(tuple(terms_e))
    cert_c = SeparableCertificate(tuple(terms_c))
    return cert_e.total(), cert_e, cert_c


def sample_quantum_effect(rng):
    u = random_unitary(rng, 4)
    lam = rng.uniform(0.0, 1.0, size=4)
    return HermitianOperator(u @ np.diag(lam) @ u.conj().T)


def test_effect_cone_inclusion_chain(rng):
    for _ in range(25):
        e, cert, comp_cert = sample_certified_effect_pair(rng)
        assert is_effect(e, MAX, cert, comp_cert)
        assert is_effect(e, QUA)
        assert is_effect(e, MIN, grid_density=16)
    for _ in range(25):
        e = sample_quantum_effect(rng)
        assert is_effect(e, QUA)
        assert is_effect(e, MIN, grid_density=16)
