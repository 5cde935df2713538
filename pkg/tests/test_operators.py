import numpy as np
import pytest

from gptcomp import (
    HermitianOperator,
    InvalidBlochVectorError,
    InvalidParameterError,
    UnsupportedDimensionError,
    bell_state,
    bloch_state,
    eigenvalues,
    identity,
    min_eigenvalue,
    partial_transpose,
    pauli_compose,
    pauli_decompose,
    projector,
    tensor,
    trace_pair,
)
from gptcomp.operators import KET_0, KET_PLUS, SIGMA_X, SIGMA_Y, SIGMA_Z

from conftest import random_hermitian

P0 = projector(KET_0)


def test_constructor_rejects_non_hermitian():
    with pytest.raises(InvalidParameterError):
        HermitianOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(InvalidParameterError):
        HermitianOperator(np.zeros((2, 3)))


def test_matrix_is_read_only():
    h = identity(2)
    with pytest.raises(ValueError):
        h.matrix[0, 0] = 5.0


def test_tensor_identities():
    assert tensor(identity(2), identity(2)).isclose(identity(4), 1e-12)
    zz = tensor(HermitianOperator(SIGMA_Z), HermitianOperator(SIGMA_Z))
    assert np.allclose(zz.matrix, np.diag([1, -1, -1, 1]))
    p = tensor(P0, P0)
    assert np.allclose(p.matrix, np.diag([1.0, 0, 0, 0]))


def test_tensor_trace_multiplicative(rng):
    for _ in range(20):
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 2)
        assert tensor(a, b).trace == pytest.approx(a.trace * b.trace, abs=1e-12)


def test_tensor_bilinear(rng):
    a, b, c = (random_hermitian(rng, 2) for _ in range(3))
    left = tensor(a + b, c)
    right = tensor(a, c) + tensor(b, c)
    assert left.isclose(right, 1e-12)


def test_tensor_associative(rng):
    a, b, c = (random_hermitian(rng, 2) for _ in range(3))
    assert tensor(tensor(a, b), c).isclose(tensor(a, tensor(b, c)), 1e-12)


def test_partial_transpose_of_phi_plus_is_half_swap():
    gamma = partial_transpose(bell_state("phi+"), "B")
    expected = pauli_compose(np.diag([1.0, 1.0, 1.0, 1.0]))
    assert gamma.isclose(expected, 1e-12)
    # spectrum of the swap operator, halved
    assert np.allclose(eigenvalues(gamma), [-0.5, 0.5, 0.5, 0.5], atol=1e-10)


def test_partial_transpose_involution_and_trace(rng):
    for sub in ("A", "B"):
        for _ in range(10):
            w = random_hermitian(rng, 4)
            again = partial_transpose(partial_transpose(w, sub), sub)
            assert again.isclose(w, 1e-12)
            assert partial_transpose(w, sub).trace == pytest.approx(w.trace, abs=1e-12)


def test_partial_transpose_identity_fixed_point():
    w = identity(4) * 0.25
    assert partial_transpose(w, "B").isclose(w, 1e-12)


def test_partial_transpose_rejects_wrong_dim():
    with pytest.raises(UnsupportedDimensionError):
        partial_transpose(identity(2))


def test_pauli_decompose_bell_sign_patterns():
    # correlation signs (xx, yy, zz) of the four Bell states
    cases = {
        "phi+": (1.0, -1.0, 1.0),
        "phi-": (-1.0, 1.0, 1.0),
        "psi+": (1.0, 1.0, -1.0),
        "psi-": (-1.0, -1.0, -1.0),
    }
    for name, signs in cases.items():
        c = pauli_decompose(bell_state(name))
        assert c[0, 0] == pytest.approx(1.0, abs=1e-12)
        assert (c[1, 1], c[2, 2], c[3, 3]) == pytest.approx(signs, abs=1e-12)
        off = c.copy()
        off[0, 0] = off[1, 1] = off[2, 2] = off[3, 3] = 0.0
        assert np.max(np.abs(off)) < 1e-12


def test_pauli_decompose_maximally_mixed():
    c = pauli_decompose(identity(4) * 0.25)
    assert c[0, 0] == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(c)) == pytest.approx(1.0, abs=1e-12)
    assert np.sum(np.abs(c) > 1e-12) == 1


def test_pauli_partial_transpose_flips_yy():
    gamma = partial_transpose(bell_state("psi+"))
    c = pauli_decompose(gamma)
    assert (c[1, 1], c[2, 2], c[3, 3]) == pytest.approx((1.0, -1.0, -1.0), abs=1e-12)


def test_pauli_round_trip(rng):
    for _ in range(25):
        w = random_hermitian(rng, 4)
        back = pauli_compose(pauli_decompose(w))
        assert back.isclose(w, 1e-12)


def test_min_eigenvalue_known_values():
    assert min_eigenvalue(identity(4)) == pytest.approx(1.0, abs=1e-10)
    e1 = HermitianOperator(
        np.array(
            [
                [1.0, 0, 0, 0.5],
                [0, 0, 0.5, 0],
                [0, 0.5, 0, 0],
                [0.5, 0, 0, 1.0],
            ]
        )
    )
    assert min_eigenvalue(e1) == pytest.approx(-0.5, abs=1e-10)
    assert min_eigenvalue(partial_transpose(bell_state("phi+"))) == pytest.approx(
        -0.5, abs=1e-10
    )


def test_eigenvalues_match_lapack(rng):
    for dim in (2, 4):
        for _ in range(25):
            h = random_hermitian(rng, dim)
            assert np.allclose(
                eigenvalues(h), np.linalg.eigvalsh(h.matrix), atol=1e-10
            )


def test_bloch_state_cardinal_points():
    assert bloch_state((0, 0, 1)).isclose(P0, 1e-12)
    assert bloch_state((1, 0, 0)).isclose(projector(KET_PLUS), 1e-12)
    assert bloch_state((0, 0, 0)).isclose(identity(2) * 0.5, 1e-12)


def test_bloch_state_pure_spectrum(rng):
    for _ in range(50):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        ev = eigenvalues(bloch_state(v))
        assert np.allclose(ev, [0.0, 1.0], atol=1e-10)


def test_bloch_state_rejects_long_vectors():
    with pytest.raises(InvalidBlochVectorError):
        bloch_state((1.0, 1.0, 0.0))


def test_trace_pair_formula():
    xx = tensor(HermitianOperator(SIGMA_X), HermitianOperator(SIGMA_X))
    assert trace_pair(xx, bell_state("phi+")) == pytest.approx(1.0, abs=1e-12)
    yy = tensor(HermitianOperator(SIGMA_Y), HermitianOperator(SIGMA_Y))
    assert trace_pair(yy, bell_state("phi+")) == pytest.approx(-1.0, abs=1e-12)


def test_json_round_trip(rng):
    w = random_hermitian(rng, 4)
    again = HermitianOperator.from_dict(w.to_dict())
    assert again.isclose(w, 0.0)
    bad = w.to_dict()
    bad["entries"] = bad["entries"][:-1]
    with pytest.raises(InvalidParameterError):
        HermitianOperator.from_dict(bad)
