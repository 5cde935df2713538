"""The IC-N guessing game: exact transcript distributions and scores.

Alice receives a uniform N-bit string and encodes it into one system;
Bob receives a uniform index b and measures with his decoding for b,
turning the outcome into a guess via a per-measurement map (``0``, ``1``
or ``"random"`` for a fair coin). The score is the sum over bit positions
of the Shannon mutual information between the bit and the guess given
that position was asked. Everything is computed by exact enumeration
over the 2^N inputs, never by sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Union

import numpy as np

from .composition import (
    DEFAULT_GRID_DENSITY,
    CompositionRule,
    is_state,
    measurement_is_valid,
)
from .errors import (
    CertificateRequiredError,
    InvalidDistributionError,
    InvalidParameterError,
    StrategyInvalidError,
)
from .operators import DEFAULT_TOL, HermitianOperator, trace_pair
from .systems import (
    GptSystem,
    GptVector,
    Measurement,
    is_valid_measurement,
    is_valid_state,
    probability,
)

Medium = Union[GptSystem, CompositionRule]


def binary_entropy(p: float) -> float:
    """Entropy of a {p, 1-p} coin in bits; endpoints give 0."""
    if p < -1e-12 or p > 1.0 + 1e-12:
        raise InvalidParameterError(f"binary entropy needs p in [0, 1], got {p}")
    p = min(max(p, 0.0), 1.0)
    out = 0.0
    if p > 0.0:
        out -= p * math.log2(p)
    if p < 1.0:
        out -= (1.0 - p) * math.log2(1.0 - p)
    return out


def mutual_information(joint) -> float:
    """Shannon mutual information of a joint probability table, in bits.

    ``joint[x, y]`` must be nonnegative and sum to 1 (within 1e-9); the
    usual convention ``0 log 0 = 0`` applies.
    """
    t = np.asarray(joint, dtype=float)
    if t.ndim != 2:
        raise InvalidDistributionError(f"joint table must be 2-D, got shape {t.shape}")
    if float(t.min()) < -1e-12:
        raise InvalidDistributionError(f"negative probability {float(t.min())}")
    total = float(t.sum())
    if abs(total - 1.0) > 1e-9:
        raise InvalidDistributionError(f"probabilities sum to {total}, not 1")
    t = np.clip(t, 0.0, None)
    px = t.sum(axis=1)
    py = t.sum(axis=0)
    out = 0.0
    for x in range(t.shape[0]):
        for y in range(t.shape[1]):
            p = t[x, y]
            if p > 0.0:
                out += p * math.log2(p / (px[x] * py[y]))
    return out


@dataclass(frozen=True)
class IcStrategy:
    """Encodings, decodings and an optional shared-randomness mixture.

    ``encoding`` maps every N-bit string to a state of the medium (a
    ``HermitianOperator`` for composition rules, a :class:`GptVector` for
    polytopic systems); under the minimal rule ``encoding_certificates``
    must prove each state separable. ``decodings`` maps each 1-based bit
    position to ``(measurement, guesses)`` where ``guesses`` sends every
    outcome label to 0, 1 or ``"random"``.

    A mixture strategy sets ``components`` to (weight, strategy) pairs
    instead; its transcript distribution is the weighted average of the
    component distributions.
    """

    n_bits: int
    encoding: Optional[Mapping] = None
    decodings: Optional[Mapping] = None
    encoding_certificates: Optional[Mapping] = None
    components: Optional[tuple] = None

    def __post_init__(self):
        if self.n_bits < 1 or self.n_bits > 8:
            raise InvalidParameterError(f"n_bits must be in 1..8, got {self.n_bits}")
        if self.components is not None:
            comps = tuple((float(w), s) for w, s in self.components)
            if self.encoding is not None or self.decodings is not None:
                raise InvalidParameterError("a mixture carries no direct encoding/decodings")
            if any(w < -1e-12 for w, _ in comps):
                raise InvalidParameterError("mixture weights must be nonnegative")
            if abs(sum(w for w, _ in comps) - 1.0) > 1e-9:
                raise InvalidParameterError("mixture weights must sum to 1")
            if any(s.n_bits != self.n_bits for _, s in comps):
                raise InvalidParameterError("mixture components must share n_bits")
            object.__setattr__(self, "components", comps)
            return
        if self.encoding is None or self.decodings is None:
            raise InvalidParameterError("strategy needs an encoding and decodings")
        strings = self.input_strings(self.n_bits)
        missing = [s for s in strings if s not in self.encoding]
        if missing:
            raise InvalidParameterError(f"encoding undefined for input(s) {missing[:3]}")
        for b in range(1, self.n_bits + 1):
            if b not in self.decodings:
                raise InvalidParameterError(f"no decoding for bit {b}")
            meas, guesses = self.decodings[b]
            for label in meas.labels:
                if label not in guesses:
                    raise InvalidParameterError(
                        f"decoding for bit {b} has no guess for outcome {label!r}"
                    )
                if guesses[label] not in (0, 1, "random"):
                    raise InvalidParameterError(
                        f"guess for outcome {label!r} must be 0, 1 or 'random'"
                    )

    @staticmethod
    def input_strings(n_bits: int) -> tuple:
        return tuple(format(i, f"0{n_bits}b") for i in range(2**n_bits))

    @staticmethod
    def mixture(pairs) -> "IcStrategy":
        pairs = tuple(pairs)
        return IcStrategy(n_bits=pairs[0][1].n_bits, components=pairs)


@dataclass(frozen=True)
class GameReport:
    """Full transcript distribution and the resulting score.

    ``joint[a, b-1, beta]`` is the probability of input string index a,
    asked position b and guess beta; it sums to 1. ``score`` is the sum
    of the per-bit conditional mutual informations.
    """

    n_bits: int
    joint: np.ndarray
    per_bit_mi: tuple
    score: float
    bound: float
    violation: bool

    def __post_init__(self):
        j = np.asarray(self.joint, dtype=float)
        if abs(float(j.sum()) - 1.0) > 1e-9:
            raise InvalidDistributionError(f"joint sums to {float(j.sum())}")
        j = j.copy()
        j.setflags(write=False)
        object.__setattr__(self, "joint", j)
        object.__setattr__(self, "per_bit_mi", tuple(float(x) for x in self.per_bit_mi))

    def to_dict(self) -> dict:
        strings = IcStrategy.input_strings(self.n_bits)
        joint = {
            a: {str(b + 1): [float(self.joint[i, b, 0]), float(self.joint[i, b, 1])]
                for b in range(self.n_bits)}
            for i, a in enumerate(strings)
        }
        return {
            "n_bits": self.n_bits,
            "per_bit_mi": list(self.per_bit_mi),
            "score_bits": self.score,
            "bound_bits": self.bound,
            "violation": self.violation,
            "joint": joint,
        }

    @staticmethod
    def csv_header() -> str:
        return "n_bits,score_bits,bound_bits,violation"

    def csv_row(self) -> str:
        return f"{self.n_bits},{self.score!r},{self.bound!r},{str(self.violation).lower()}"


def ic_check(report: GameReport, theta_bits: float) -> bool:
    """True iff the score respects the bound (score <= theta + 1e-9)."""
    return report.score <= theta_bits + 1e-9


def _default_bound(medium: Medium) -> float:
    if isinstance(medium, CompositionRule):
        # one pair of qubits is transmitted
        return 2.0
    from .capacity import information_capacity

    return float(np.log2(information_capacity(medium)))


def _state_valid(state, medium, cert, tol, grid_density) -> bool:
    if isinstance(medium, CompositionRule):
        if not isinstance(state, HermitianOperator):
            return False
        return is_state(state, medium, cert, grid_density=grid_density, tol=tol)
    if not isinstance(state, GptVector):
        return False
    return is_valid_state(medium, state, tol)


def _measurement_valid(meas: Measurement, medium, tol, grid_density) -> bool:
    if isinstance(medium, CompositionRule):
        return measurement_is_valid(meas, medium, grid_density=grid_density, tol=tol)
    return is_valid_measurement(medium, meas, tol)


def _outcome_probs(state, meas: Measurement, medium, tol) -> np.ndarray:
    if isinstance(medium, CompositionRule):
        vals = [trace_pair(e, state) for e in meas.effects]
        vals = [min(max(v, 0.0), 1.0) for v in vals]
    else:
        vals = [probability(e, state, tol) for e in meas.effects]
    return np.array(vals)


def _validate_strategy(strategy: IcStrategy, medium: Medium, tol, grid_density) -> None:
    for bits, state in sorted(strategy.encoding.items()):
        cert = None
        if strategy.encoding_certificates is not None:
            cert = strategy.encoding_certificates.get(bits)
        try:
            ok = _state_valid(state, medium, cert, tol, grid_density)
        except CertificateRequiredError as exc:
            raise StrategyInvalidError(f"encoding {bits!r}: {exc}") from exc
        if not ok:
            raise StrategyInvalidError(
                f"encoding {bits!r} is not a valid state of the medium"
            )
    for b in range(1, strategy.n_bits + 1):
        meas, _ = strategy.decodings[b]
        try:
            ok = _measurement_valid(meas, medium, tol, grid_density)
        except CertificateRequiredError as exc:
            raise StrategyInvalidError(f"decoding for bit {b}: {exc}") from exc
        if not ok:
            raise StrategyInvalidError(
                f"decoding for bit {b} is not a valid measurement of the medium"
            )


def _joint_table(strategy: IcStrategy, medium: Medium, tol) -> np.ndarray:
    n = strategy.n_bits
    strings = IcStrategy.input_strings(n)
    joint = np.zeros((2**n, n, 2))
    p_in = 1.0 / (2**n * n)
    for i, a in enumerate(strings):
        state = strategy.encoding[a]
        for b in range(1, n + 1):
            meas, guesses = strategy.decodings[b]
            probs = _outcome_probs(state, meas, medium, tol)
            for label, p in zip(meas.labels, probs):
                g = guesses[label]
                if g == "random":
                    joint[i, b - 1, 0] += 0.5 * p * p_in
                    joint[i, b - 1, 1] += 0.5 * p * p_in
                else:
                    joint[i, b - 1, int(g)] += p * p_in
    return joint


def play_ic_game(
    strategy: IcStrategy,
    medium: Medium,
    *,
    theta_bits: Optional[float] = None,
    tol: float = DEFAULT_TOL,
    grid_density: int = DEFAULT_GRID_DENSITY,
    validate: bool = True,
) -> GameReport:
    """Play the IC-N game by exact enumeration and score it.

    With ``validate`` (default) every encoding state and decoding
    measurement is first checked against the medium; an invalid element
    raises :class:`StrategyInvalidError` naming it. ``theta_bits``
    defaults to 2 for composition rules (a pair of qubits is sent) and
    to ``log2(information_capacity)`` for polytopic systems, which for
    the built-in systems equals their asymptotic capacity.
    """
    n = strategy.n_bits
    if strategy.components is not None:
        joint = np.zeros((2**n, n, 2))
        for w, comp in strategy.components:
            if validate:
                _validate_strategy(comp, medium, tol, grid_density)
            joint += w * _joint_table(comp, medium, tol)
    else:
        if validate:
            _validate_strategy(strategy, medium, tol, grid_density)
        joint = _joint_table(strategy, medium, tol)

    strings = IcStrategy.input_strings(n)
    per_bit = []
    for b in range(n):
        table = np.zeros((2, 2))
        for i, a in enumerate(strings):
            x = int(a[b])
            # condition on the asked position: scale away the 1/n prior
            table[x, 0] += joint[i, b, 0] * n
            table[x, 1] += joint[i, b, 1] * n
        per_bit.append(mutual_information(table))
    score = float(sum(per_bit))
    bound = float(theta_bits) if theta_bits is not None else _default_bound(medium)
    return GameReport(
        n_bits=n,
        joint=joint,
        per_bit_mi=tuple(per_bit),
        score=score,
        bound=bound,
        violation=score > bound + 1e-9,
    )
