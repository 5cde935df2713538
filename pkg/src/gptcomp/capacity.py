"""Perfect distinguishability, information capacity and dimension.

For polytopic systems, distinguishability of a candidate state list is a
linear feasibility problem: write each measurement element as a
nonnegative combination of the extremal effect rays, force the
delta-pattern on the candidates and make the elements sum to the unit
effect. The LP is solved with HiGHS at a configurable feasibility
tolerance; at these sizes (at most 16 rays and states) it is exact for
all practical purposes.

For two-qubit compositions the module only *verifies* proposed
measurements, it does not search for them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import linprog

from .composition import (
    DEFAULT_GRID_DENSITY,
    CompositionRule,
    SeparableCertificate,
    is_state,
    measurement_is_valid,
    popt_membership,
)
from .errors import (
    AccountingViolationError,
    CertificateRequiredError,
    InvalidParameterError,
    UnsupportedDimensionError,
    UnsupportedOracleError,
)
from .operators import (
    DEFAULT_TOL,
    KET_0,
    KET_1,
    HermitianOperator,
    identity,
    ket_product,
    projector,
    tensor,
    trace_pair,
)
from .systems import GptSystem, GptVector, Measurement

MAX_EXTREMAL_STATES = 16


@dataclass(frozen=True)
class DistinguishabilityInstance:
    """A candidate state list over a system or composition rule.

    For a :class:`GptSystem` the oracle can search for a distinguishing
    measurement; for a :class:`CompositionRule` a ``proposed_measurement``
    must be supplied and is verified. ``state_certificates`` carry the
    separability proofs needed to validate states under the minimal rule.
    """

    system: Union[GptSystem, CompositionRule]
    states: tuple
    proposed_measurement: Optional[Measurement] = None
    state_certificates: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise InvalidParameterError("candidate state list must be nonempty")


def _polytope_lp(sys: GptSystem, states: tuple, tol: float):
    """Feasibility LP for a delta-pattern measurement built from effect rays."""
    n = len(states)
    rays = sys.extremal_effects
    r = len(rays)
    ray_mat = np.stack([e.coords for e in rays])  # (r, 3)
    pair = np.stack([ray_mat @ w.coords for w in states], axis=1)  # (r, n)

    n_vars = n * r
    rows = []
    rhs = []
    for i in range(n):
        for j in range(n):
            row = np.zeros(n_vars)
            row[i * r : (i + 1) * r] = pair[:, j]
            rows.append(row)
            rhs.append(1.0 if i == j else 0.0)
    for c in range(3):
        row = np.zeros(n_vars)
        for i in range(n):
            row[i * r : (i + 1) * r] = ray_mat[:, c]
        rows.append(row)
        rhs.append(float(sys.unit_effect.coords[c]))

    # HiGHS accepts feasibility tolerances in [1e-10, 1e-4]
    feas_tol = min(max(tol, 1e-10), 1e-4)
    res = linprog(
        c=np.zeros(n_vars),
        A_eq=np.array(rows),
        b_eq=np.array(rhs),
        bounds=(0, None),
        method="highs",
        options={
            "primal_feasibility_tolerance": feas_tol,
            "dual_feasibility_tolerance": feas_tol,
        },
    )
    if res.status != 0:
        return False, None
    x = np.maximum(res.x.reshape(n, r), 0.0)
    effects = tuple(GptVector(x[i] @ ray_mat, "effect") for i in range(n))
    meas = Measurement(effects, tuple(str(i) for i in range(n)))
    return True, meas


def _verify_composition_instance(inst: DistinguishabilityInstance, tol: float,
                                 grid_density: int):
    rule = inst.system
    meas = inst.proposed_measurement
    if meas is None:
        raise UnsupportedOracleError(
            "distinguishability over a composition rule is verification-only; "
            "supply a proposed measurement"
        )
    if len(meas) != len(inst.states):
        return False, None
    certs = inst.state_certificates
    if rule is CompositionRule.MINIMAL and certs is None:
        raise CertificateRequiredError(
            "minimal-composition states need separable certificates"
        )
    for idx, w in enumerate(inst.states):
        cert = certs[idx] if certs is not None else None
        if not is_state(w, rule, cert, grid_density=grid_density, tol=tol):
            return False, None
    if not measurement_is_valid(meas, rule, grid_density=grid_density, tol=tol):
        return False, None
    for i, e in enumerate(meas.effects):
        for j, w in enumerate(inst.states):
            want = 1.0 if i == j else 0.0
            if abs(trace_pair(e, w) - want) > max(tol, 1e-9):
                return False, None
    return True, meas


def perfectly_distinguishable(
    inst: DistinguishabilityInstance,
    *,
    tol: float = DEFAULT_TOL,
    grid_density: int = DEFAULT_GRID_DENSITY,
):
    """Decide (or verify) single-shot perfect distinguishability.

    Returns ``(ok, measurement)``; the measurement gives outcome ``i``
    with probability 1 on the i-th candidate and 0 on the others.
    """
    if isinstance(inst.system, GptSystem):
        if inst.proposed_measurement is not None:
            sys = inst.system
            meas = inst.proposed_measurement
            from .systems import is_valid_measurement

            if len(meas) != len(inst.states):
                return False, None
            if not is_valid_measurement(sys, meas, tol):
                return False, None
            for i, e in enumerate(meas.effects):
                for j, w in enumerate(inst.states):
                    want = 1.0 if i == j else 0.0
                    if abs(e.dot(w) - want) > tol:
                        return False, None
            return True, meas
        return _polytope_lp(inst.system, inst.states, tol)
    if isinstance(inst.system, CompositionRule):
        return _verify_composition_instance(inst, tol, grid_density)
    raise UnsupportedOracleError(
        f"no distinguishability oracle for system type {type(inst.system).__name__}"
    )


def _check_polytopic(sys) -> None:
    if not isinstance(sys, GptSystem):
        raise UnsupportedOracleError(
            "capacity search needs a polytopic system with extremal states"
        )
    if len(sys.extremal_states) > MAX_EXTREMAL_STATES:
        raise UnsupportedOracleError(
            f"capacity search capped at {MAX_EXTREMAL_STATES} extremal states, "
            f"{sys.name} has {len(sys.extremal_states)}"
        )


def information_capacity(sys: GptSystem, *, tol: float = DEFAULT_TOL) -> int:
    """Largest number of extremal states distinguishable in a single shot.

    Exhausts subsets by size with monotone pruning: if no k-subset is
    distinguishable, no larger subset can be.
    """
    _check_polytopic(sys)
    states = sys.extremal_states
    best = 1 if states else 0
    for size in range(2, len(states) + 1):
        found = False
        for subset in itertools.combinations(states, size):
            ok, _ = perfectly_distinguishable(
                DistinguishabilityInstance(sys, subset), tol=tol
            )
            if ok:
                found = True
                break
        if not found:
            break
        best = size
    return best


def information_dimension(sys: GptSystem, *, tol: float = DEFAULT_TOL) -> int:
    """Largest number of extremal states distinguishable pairwise.

    Builds the pairwise-distinguishability graph and returns its clique
    number (bitmask search; systems here have at most 16 vertices).
    """
    _check_polytopic(sys)
    states = sys.extremal_states
    n = len(states)
    if n == 0:
        return 0
    adj = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        ok, _ = perfectly_distinguishable(
            DistinguishabilityInstance(sys, (states[i], states[j])), tol=tol
        )
        if ok:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    best = 1

    def grow(candidates: int, size: int):
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        c = candidates
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            if size + 1 > best:
                best = size + 1
            grow(c & adj[v], size + 1)

    grow((1 << n) - 1, 0)
    return best


@dataclass(frozen=True)
class HolevoBound:
    """Asymptotic per-copy capacity of a local quantum system, in bits.

    Equals ``log2(d)`` because k composed copies (under either extreme
    rule) distinguish exactly ``d^k`` states; turning that into the
    asymptotic rate assumes the single-shot capacity is additive, which
    is recorded here rather than proven.
    """

    bits: float
    local_dimension: int
    additivity_assumed: bool = True


def holevo_capacity_bound(d: int) -> HolevoBound:
    if d < 2:
        raise InvalidParameterError(f"local dimension must be at least 2, got {d}")
    return HolevoBound(bits=float(np.log2(d)), local_dimension=d)


@dataclass(frozen=True)
class AccountingReport:
    """Audit trail of the capacity trace-accounting argument.

    The chain ``d^k = sum_i Tr(E_i) = sum_i hit_i + sum_i residual_i``
    with every residual nonnegative forces the number of perfectly
    distinguished states to be at most ``d^k``.
    """

    trace_sum: float
    per_state_hits: tuple
    residuals: tuple
    n: int
    d_pow_k: int
    effect_traces: tuple

    def to_dict(self) -> dict:
        return {
            "trace_sum": self.trace_sum,
            "per_state_hits": list(self.per_state_hits),
            "residuals": list(self.residuals),
            "n": self.n,
            "d_pow_k": self.d_pow_k,
            "effect_traces": list(self.effect_traces),
        }


def _qubit_top_eigvec(m: np.ndarray) -> np.ndarray:
    """Dominant eigenvector of a 2x2 Hermitian matrix, closed form."""
    a = float(m[0, 0].real)
    c = float(m[1, 1].real)
    b = m[0, 1]
    if abs(b) < 1e-14:
        return np.array(KET_0 if a >= c else KET_1)
    half = 0.5 * (a + c)
    lam = half + np.sqrt(0.25 * (a - c) ** 2 + abs(b) ** 2)
    v = np.array([b, lam - a], dtype=complex)
    return v / np.linalg.norm(v)


def _qubit_orthogonal(v: np.ndarray) -> np.ndarray:
    return np.array([-v[1].conjugate(), v[0].conjugate()], dtype=complex)


def _product_factors(w: HermitianOperator, tol: float):
    """Split a pure two-qubit product state into its qubit factor kets."""
    m = w.matrix.reshape(2, 2, 2, 2)
    red_a = np.einsum("ajbj->ab", m)
    red_b = np.einsum("iajb->ab", m)
    u = _qubit_top_eigvec(red_a)
    v = _qubit_top_eigvec(red_b)
    rebuilt = tensor(projector(u), projector(v))
    if not rebuilt.isclose(w, max(tol, 1e-9)):
        raise InvalidParameterError(
            "state is not a pure product state; cannot build its complement certificate"
        )
    return u, v


def verify_capacity_accounting(
    rule: CompositionRule,
    states,
    measurement: Measurement,
    d: int,
    k: int,
    *,
    tol: float = DEFAULT_TOL,
    grid_density: int = DEFAULT_GRID_DENSITY,
) -> AccountingReport:
    """Check the trace-accounting argument on a concrete instance.

    For the minimal rule every state must be a pure product state; its
    complement is certified separable by decomposing it over the product
    basis built from the state's own factors. For the maximal rule every
    complement must pass the POPT test and every measurement element must
    carry a separable certificate. A residual below ``-tol``, a broken
    trace chain or a missed hit raises :class:`AccountingViolationError`.
    """
    if d != 2 or k != 2:
        raise UnsupportedDimensionError(
            f"accounting checker implemented for d=2, k=2 (dim 4), got d={d}, k={k}"
        )
    states = tuple(states)
    n = len(states)
    dim = d**k
    if len(measurement) != n:
        raise InvalidParameterError(
            f"{n} states but {len(measurement)} measurement elements"
        )
    for w in states:
        if w.dim != dim:
            raise UnsupportedDimensionError(f"state dimension {w.dim} != d^k = {dim}")

    eye = identity(dim)
    total = np.zeros((dim, dim), dtype=complex)
    for e in measurement.effects:
        total = total + e.matrix
    if float(np.max(np.abs(total - np.eye(dim)))) > max(tol, 1e-9):
        raise AccountingViolationError("measurement elements do not sum to the identity")

    complements = []
    for i, w in enumerate(states):
        y = eye - w
        if rule is CompositionRule.MINIMAL:
            u, v = _product_factors(w, tol)
            u_perp = _qubit_orthogonal(u)
            v_perp = _qubit_orthogonal(v)
            cert = SeparableCertificate(
                (
                    (projector(u), projector(v_perp)),
                    (projector(u_perp), projector(v)),
                    (projector(u_perp), projector(v_perp)),
                )
            )
            if not cert.verify(y, max(tol, 1e-9)):
                raise AccountingViolationError(
                    f"complement of state {i} failed its separable decomposition"
                )
        elif rule is CompositionRule.MAXIMAL:
            if not popt_membership(w, grid_density, tol).member:
                raise AccountingViolationError(f"state {i} is not positive on pure tensors")
            if not popt_membership(y, grid_density, tol).member:
                raise AccountingViolationError(
                    f"complement of state {i} is not positive on pure tensors"
                )
            certs = measurement.certificates
            if certs is None or certs[i] is None:
                raise CertificateRequiredError(
                    "maximal-rule accounting needs separable certificates on the measurement"
                )
            if not certs[i].verify(measurement.effects[i], tol):
                raise AccountingViolationError(
                    f"measurement element {i} failed its separable certificate"
                )
        else:
            raise InvalidParameterError(
                "accounting applies to the minimal and maximal rules"
            )
        complements.append(y)

    effect_traces = tuple(e.trace for e in measurement.effects)
    hits = tuple(trace_pair(measurement.effects[i], states[i]) for i in range(n))
    residuals = tuple(
        trace_pair(measurement.effects[i], complements[i]) for i in range(n)
    )
    trace_sum = float(sum(effect_traces))

    for i, r in enumerate(residuals):
        if r < -tol:
            raise AccountingViolationError(
                f"residual {r} for state {i} is negative; the claimed measurement is invalid"
            )
    for i, h in enumerate(hits):
        if abs(h - 1.0) > max(tol, 1e-9):
            raise AccountingViolationError(
                f"measurement element {i} hits its state with probability {h}, not 1"
            )
    if abs(trace_sum - dim) > max(tol, 1e-9):
        raise AccountingViolationError(
            f"trace chain broken: sum of effect traces {trace_sum} != {dim}"
        )
    return AccountingReport(
        trace_sum=trace_sum,
        per_state_hits=hits,
        residuals=residuals,
        n=n,
        d_pow_k=dim,
        effect_traces=effect_traces,
    )


def product_basis_instance():
    """Computational product basis of two qubits with its measurement.

    Returns ``(states, certificates, measurement)``: the four projectors
    ``|ab><ab|`` with one-term separable certificates, and the projective
    measurement made of the same projectors (certificates attached).
    """
    kets = {"00": (KET_0, KET_0), "01": (KET_0, KET_1), "10": (KET_1, KET_0), "11": (KET_1, KET_1)}
    states = []
    certs = []
    for _, (u, v) in kets.items():
        cert = SeparableCertificate(((projector(u), projector(v)),))
        states.append(cert.total())
        certs.append(cert)
    meas = Measurement(tuple(states), tuple(kets), certificates=tuple(certs))
    return tuple(states), tuple(certs), meas
