"""The three composition rules for a pair of qubits.

A composite operator can be tested for membership in three state/effect
cone pairs:

* ``MINIMAL``   - states are the separable operators, effects the
  positive-on-pure-tensors (POPT) operators;
* ``MAXIMAL``   - the mirror image: states POPT, effects separable;
* ``QUANTUM``   - both cones are the positive semidefinite operators.

POPT membership is decided numerically: the expectation on pure product
states is scanned on an angular grid over both Bloch spheres and the best
grid point is polished by a Nelder-Mead refinement. Boundary operators
(minimum exactly 0) are classified as members at tolerance. Separability
is never decided, only verified against an explicit
:class:`SeparableCertificate`.

Also here: the concrete beyond-quantum effects, parity measurements and
encoding states used by the built-in IC-3 scenarios.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from . import _kernels
from .errors import CertificateRequiredError, InvalidParameterError, UnsupportedDimensionError
from .operators import (
    DEFAULT_TOL,
    KET_0,
    KET_1,
    KET_MINUS,
    KET_PLUS,
    HermitianOperator,
    bell_state,
    identity,
    is_psd,
    partial_transpose,
    pauli_decompose,
    projector,
    tensor,
)
from .systems import Measurement

DEFAULT_GRID_DENSITY = 32


class CompositionRule(enum.Enum):
    MINIMAL = "minimal"
    MAXIMAL = "maximal"
    QUANTUM = "quantum"

    @staticmethod
    def from_string(s: str) -> "CompositionRule":
        try:
            return CompositionRule(s.strip().lower())
        except ValueError:
            raise InvalidParameterError(
                f"unknown composition rule {s!r}; expected minimal, maximal or quantum"
            ) from None


@dataclass(frozen=True)
class SeparableCertificate:
    """An explicit decomposition ``sum_i a_i (x) b_i`` with PSD factors.

    Verifying a certificate proves membership in the separable cone; the
    tested operator itself is never decomposed by this package.
    """

    terms: tuple

    def __post_init__(self):
        terms = tuple((a, b) for a, b in self.terms)
        if not terms:
            raise InvalidParameterError("certificate needs at least one term")
        for a, b in terms:
            if a.dim != 2 or b.dim != 2:
                raise InvalidParameterError("certificate factors must be single-qubit operators")
        object.__setattr__(self, "terms", terms)

    def total(self) -> HermitianOperator:
        out = np.zeros((4, 4), dtype=complex)
        for a, b in self.terms:
            out = out + np.kron(a.matrix, b.matrix)
        return HermitianOperator(out)

    def verify(self, target: HermitianOperator, tol: float = DEFAULT_TOL) -> bool:
        """Factors PSD within ``tol`` and the term sum equals ``target``."""
        for a, b in self.terms:
            if not is_psd(a, tol) or not is_psd(b, tol):
                return False
        return self.total().isclose(target, tol)

    def to_dict(self) -> dict:
        return {"terms": [{"a": a.to_dict(), "b": b.to_dict()} for a, b in self.terms]}

    @staticmethod
    def from_dict(obj: dict) -> "SeparableCertificate":
        return SeparableCertificate(
            tuple(
                (HermitianOperator.from_dict(t["a"]), HermitianOperator.from_dict(t["b"]))
                for t in obj["terms"]
            )
        )


@dataclass(frozen=True)
class PoptVerdict:
    """Result of a POPT membership test.

    ``min_value`` is the minimized pure-tensor expectation; for
    non-members ``witness`` holds the Bloch vectors of a product state
    evaluating the operator below -tolerance.
    """

    member: bool
    min_value: float
    witness: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "min_value": self.min_value,
            "witness": None
            if self.witness is None
            else {
                "bloch_a": [float(x) for x in self.witness[0]],
                "bloch_b": [float(x) for x in self.witness[1]],
            },
        }


@lru_cache(maxsize=8)
def _sphere_grid(density: int):
    """(density^2, 4) rows (1, mx, my, mz) over a theta x phi angle grid."""
    thetas = np.linspace(0.0, np.pi, density)
    phis = np.linspace(0.0, 2.0 * np.pi, density, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    pts = np.empty((density * density, 4), dtype=float)
    pts[:, 0] = 1.0
    pts[:, 1] = (np.sin(tt) * np.cos(pp)).reshape(-1)
    pts[:, 2] = (np.sin(tt) * np.sin(pp)).reshape(-1)
    pts[:, 3] = np.cos(tt).reshape(-1)
    pts.setflags(write=False)
    angles = np.stack([tt.reshape(-1), pp.reshape(-1)], axis=1)
    angles.setflags(write=False)
    return pts, angles


def _ext_row(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([1.0, st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def pure_tensor_expectation(w: HermitianOperator, m, n) -> float:
    """Expectation of ``w`` on the pure product state with Bloch vectors m, n."""
    c = pauli_decompose(w)
    mt = np.concatenate([[1.0], np.asarray(m, dtype=float)])
    nt = np.concatenate([[1.0], np.asarray(n, dtype=float)])
    return 0.25 * float(mt @ c @ nt)


def pauli_diagonal_min(w: HermitianOperator, tol: float = DEFAULT_TOL) -> float:
    """Exact pure-tensor minimum for correlation-diagonal operators.

    For ``W = (1/4)(c00 I + sum_i t_i s_i (x) s_i)`` the minimum over pure
    product states is ``(c00 - max_i |t_i|)/4``, attained with the two
    Bloch vectors anti-aligned along the dominant axis. Raises if the
    operator carries local terms or off-diagonal correlations.
    """
    c = pauli_decompose(w)
    off = c.copy()
    off[0, 0] = 0.0
    for i in range(1, 4):
        off[i, i] = 0.0
    if float(np.max(np.abs(off))) > tol:
        raise InvalidParameterError("operator is not correlation-diagonal")
    t = np.array([c[1, 1], c[2, 2], c[3, 3]])
    return 0.25 * float(c[0, 0] - np.max(np.abs(t)))


def popt_membership(
    w: HermitianOperator,
    grid_density: int = DEFAULT_GRID_DENSITY,
    tol: float = DEFAULT_TOL,
) -> PoptVerdict:
    """Decide positivity on pure tensors by grid search plus refinement.

    Scans ``grid_density^2`` points per Bloch sphere, then runs a
    Nelder-Mead polish from the best grid pair. The verdict is ``member``
    iff the refined minimum is at least ``-tol``.
    """
    if w.dim != 4:
        raise UnsupportedDimensionError(f"POPT test needs a two-qubit operator, got dim {w.dim}")
    if grid_density < 4:
        raise InvalidParameterError(f"grid density must be at least 4, got {grid_density}")
    c = pauli_decompose(w)
    pts, angles = _sphere_grid(grid_density)
    v_grid, i, j = _kernels.product_grid_min(pts, c)

    def objective(x):
        return 0.25 * float(_ext_row(x[0], x[1]) @ c @ _ext_row(x[2], x[3]))

    x0 = np.array([angles[i, 0], angles[i, 1], angles[j, 0], angles[j, 1]])
    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 800, "maxfev": 1600},
    )
    if res.fun < v_grid:
        v_min = float(res.fun)
        best = res.x
    else:
        v_min = float(v_grid)
        best = x0
    member = v_min >= -tol
    witness = None
    if not member:
        witness = (_ext_row(best[0], best[1])[1:], _ext_row(best[2], best[3])[1:])
    return PoptVerdict(member=member, min_value=v_min, witness=witness)


def is_state(
    w: HermitianOperator,
    rule: CompositionRule,
    certificate: Optional[SeparableCertificate] = None,
    *,
    grid_density: int = DEFAULT_GRID_DENSITY,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Membership of a unit-trace operator in the rule's state space.

    Quantum states are PSD, maximal states POPT; minimal states are the
    separable ones, and since separability is only verified (never
    decided) the minimal test refuses to run without a certificate.
    """
    if abs(w.trace - 1.0) > max(tol, 1e-9):
        raise InvalidParameterError(f"state candidates need unit trace, got {w.trace}")
    if rule is CompositionRule.QUANTUM:
        return is_psd(w, tol)
    if rule is CompositionRule.MAXIMAL:
        return popt_membership(w, grid_density, tol).member
    if certificate is None:
        raise CertificateRequiredError(
            "minimal-composition state test needs a separable certificate"
        )
    return certificate.verify(w, tol)


def is_effect(
    e: HermitianOperator,
    rule: CompositionRule,
    certificate: Optional[SeparableCertificate] = None,
    complement_certificate: Optional[SeparableCertificate] = None,
    *,
    grid_density: int = DEFAULT_GRID_DENSITY,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Membership of ``e`` (and its complement) in the rule's effect space.

    An effect is valid when both ``e`` and ``1 - e`` lie in the effect
    cone: POPT for the minimal rule, PSD for quantum, separable (by
    certificate, both required) for the maximal rule.
    """
    if e.dim != 4:
        raise UnsupportedDimensionError(f"effect test needs a two-qubit operator, got dim {e.dim}")
    comp = identity(4) - e
    if rule is CompositionRule.MINIMAL:
        return (
            popt_membership(e, grid_density, tol).member
            and popt_membership(comp, grid_density, tol).member
        )
    if rule is CompositionRule.QUANTUM:
        return is_psd(e, tol) and is_psd(comp, tol)
    if certificate is None or complement_certificate is None:
        raise CertificateRequiredError(
            "maximal-composition effect test needs certificates for the effect "
            "and its complement"
        )
    return certificate.verify(e, tol) and complement_certificate.verify(comp, tol)


def measurement_is_valid(meas, rule: CompositionRule, *, grid_density: int = DEFAULT_GRID_DENSITY,
                         tol: float = DEFAULT_TOL) -> bool:
    """Validity of a full measurement under a composition rule.

    Checks each element's cone membership and that the elements sum to
    the identity; the complement condition of :func:`is_effect` is then
    automatic because each complement is the sum of the other elements.
    """
    total = np.zeros((4, 4), dtype=complex)
    for idx, e in enumerate(meas.effects):
        if not isinstance(e, HermitianOperator) or e.dim != 4:
            raise InvalidParameterError("composition measurements need two-qubit operators")
        if rule is CompositionRule.MINIMAL:
            if not popt_membership(e, grid_density, tol).member:
                return False
        elif rule is CompositionRule.QUANTUM:
            if not is_psd(e, tol):
                return False
        else:
            certs = meas.certificates
            if certs is None or certs[idx] is None:
                raise CertificateRequiredError(
                    f"maximal-composition measurement element {meas.labels[idx]!r} "
                    "carries no separable certificate"
                )
            if not certs[idx].verify(e, tol):
                return False
        total = total + e.matrix
    return float(np.max(np.abs(total - np.eye(4)))) <= max(tol, 1e-9)


# ---------------------------------------------------------------------------
# Concrete states and measurements used by the built-in scenarios.
# ---------------------------------------------------------------------------


def _product_projector_pair(u, v):
    return (projector(u), projector(v))


def min_ic3_measurements() -> tuple:
    """The three decoding measurements of the minimal-composition IC-3 strategy.

    The first two elements are beyond-quantum effects (their smallest
    eigenvalue is -1/2) that are nonetheless positive on every pure
    product state: on ``rho = bloch(m) (x) bloch(n)`` they evaluate to
    ``(1 + mx nx + mz nz)/2`` and ``(1 + mx nx - mz nz)/2``. The third is
    the ordinary Z measurement on the second qubit.
    """
    e1 = HermitianOperator(
        np.array(
            [
                [1.0, 0.0, 0.0, 0.5],
                [0.0, 0.0, 0.5, 0.0],
                [0.0, 0.5, 0.0, 0.0],
                [0.5, 0.0, 0.0, 1.0],
            ],
            dtype=complex,
        )
    )
    e2 = HermitianOperator(
        np.array(
            [
                [0.0, 0.0, 0.0, 0.5],
                [0.0, 1.0, 0.5, 0.0],
                [0.0, 0.5, 1.0, 0.0],
                [0.5, 0.0, 0.0, 0.0],
            ],
            dtype=complex,
        )
    )
    e3 = tensor(identity(2), projector(KET_0))
    eye = identity(4)
    return (
        Measurement((e1, eye - e1), ("E1", "E1c")),
        Measurement((e2, eye - e2), ("E2", "E2c")),
        Measurement((e3, eye - e3), ("E3", "E3c")),
    )


def min_ic3_states() -> dict:
    """Product-state encodings for the minimal-composition IC-3 strategy.

    Maps each 3-bit string to ``(state, certificate)``; every state is a
    pure product of X- or Z-basis qubit states, certified by its own
    one-term decomposition.
    """
    kets = {
        "000": (KET_PLUS, KET_PLUS),
        "001": (KET_MINUS, KET_MINUS),
        "010": (KET_0, KET_0),
        "011": (KET_1, KET_1),
        "100": (KET_1, KET_0),
        "101": (KET_0, KET_1),
        "110": (KET_PLUS, KET_MINUS),
        "111": (KET_MINUS, KET_PLUS),
    }
    out = {}
    for bits, (u, v) in kets.items():
        cert = SeparableCertificate((_product_projector_pair(u, v),))
        out[bits] = (cert.total(), cert)
    return out


def pauli_correlation_measurements() -> dict:
    """The separable parity measurements XX, YY and ZZ.

    Each returns outcome ``even`` for the projector onto the +1
    eigenspace of ``s (x) s`` and ``odd`` for the -1 eigenspace; both
    elements come with two-term product-projector certificates.
    """
    y_plus = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)
    y_minus = np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0)
    bases = {
        "xx": (KET_PLUS, KET_MINUS),
        "yy": (y_plus, y_minus),
        "zz": (KET_0, KET_1),
    }
    out = {}
    for name, (up, down) in bases.items():
        even_cert = SeparableCertificate(
            (_product_projector_pair(up, up), _product_projector_pair(down, down))
        )
        odd_cert = SeparableCertificate(
            (_product_projector_pair(up, down), _product_projector_pair(down, up))
        )
        out[name] = Measurement(
            (even_cert.total(), odd_cert.total()),
            ("even", "odd"),
            certificates=(even_cert, odd_cert),
        )
    return out


def max_ic3_states() -> dict:
    """POPT encodings for the maximal-composition IC-3 strategy.

    Maps each 3-bit string to a unit-trace POPT operator whose three
    parity expectations ``<s_i (x) s_i>`` are exactly ``(-1)^(bit)``, so
    the XX/YY/ZZ measurements read the bits out deterministically. Four
    of the eight are Bell states; the other four are their partial
    transposes (not PSD, smallest eigenvalue -1/2).
    """
    return {
        "000": partial_transpose(bell_state("phi+")),
        "001": bell_state("psi+"),
        "010": bell_state("phi+"),
        "011": partial_transpose(bell_state("psi+")),
        "100": bell_state("phi-"),
        "101": partial_transpose(bell_state("psi-")),
        "110": partial_transpose(bell_state("phi-")),
        "111": bell_state("psi-"),
    }
