"""Finite GPT systems: polygon toy models, the square-bit, the classical bit.

A system is a list of extremal states and extremal effect rays in R^3 with
the unit effect (0, 0, 1); states are normalized to last coordinate 1 and
the probability rule is the plain dot product. Effect rays generate the
dual cone of the state cone, so a vector is a valid effect exactly when it
pairs into [0, 1] with every extremal state. Systems are immutable and all
operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidPairingError, InvalidParameterError

DEFAULT_TOL = 1e-9


def _frozen3(coords) -> np.ndarray:
    v = np.array(coords, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise InvalidParameterError(f"GPT vectors live in R^3, got shape {v.shape}")
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class GptVector:
    """A state or effect vector in R^3."""

    coords: np.ndarray
    role: str = "state"

    def __post_init__(self):
        if self.role not in ("state", "effect"):
            raise InvalidParameterError(f"role must be 'state' or 'effect', got {self.role!r}")
        object.__setattr__(self, "coords", _frozen3(self.coords))
        if self.role == "state" and abs(self.coords[2] - 1.0) > DEFAULT_TOL:
            raise InvalidParameterError(
                f"states must have last coordinate 1, got {self.coords[2]}"
            )

    def dot(self, other: "GptVector") -> float:
        return float(np.dot(self.coords, other.coords))

    def isclose(self, other: "GptVector", tol: float = DEFAULT_TOL) -> bool:
        return float(np.max(np.abs(self.coords - other.coords))) <= tol


@dataclass(frozen=True)
class GptSystem:
    """Extremal states, extremal effect rays and the unit effect.

    Construction checks that the unit effect gives 1 on every extremal
    state and that every (effect, state) pair lands in [0, 1].
    """

    name: str
    extremal_states: tuple
    extremal_effects: tuple
    unit_effect: GptVector

    def __post_init__(self):
        object.__setattr__(self, "extremal_states", tuple(self.extremal_states))
        object.__setattr__(self, "extremal_effects", tuple(self.extremal_effects))
        for w in self.extremal_states:
            if abs(self.unit_effect.dot(w) - 1.0) > DEFAULT_TOL:
                raise InvalidParameterError(
                    f"unit effect gives {self.unit_effect.dot(w)} on a state of {self.name}"
                )
        for e in self.extremal_effects:
            for w in self.extremal_states:
                p = e.dot(w)
                if p < -DEFAULT_TOL or p > 1.0 + DEFAULT_TOL:
                    raise InvalidParameterError(
                        f"extremal pairing {p} outside [0, 1] in system {self.name}"
                    )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "extremal_states": [[float(x) for x in w.coords] for w in self.extremal_states],
            "extremal_effects": [[float(x) for x in e.coords] for e in self.extremal_effects],
            "unit_effect": [float(x) for x in self.unit_effect.coords],
        }

    @staticmethod
    def from_dict(obj: dict) -> "GptSystem":
        return GptSystem(
            name=str(obj["name"]),
            extremal_states=tuple(GptVector(w, "state") for w in obj["extremal_states"]),
            extremal_effects=tuple(GptVector(e, "effect") for e in obj["extremal_effects"]),
            unit_effect=GptVector(obj["unit_effect"], "effect"),
        )


@dataclass(frozen=True)
class Measurement:
    """A finite list of effects with one outcome label per effect.

    Effects may be :class:`GptVector` instances (polytopic systems) or
    two-qubit ``HermitianOperator`` instances (compositions); in the
    latter case ``certificates`` can carry one separable certificate per
    effect, aligned by position, for theories that demand them.
    """

    effects: tuple
    labels: tuple
    certificates: Optional[tuple] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.effects) != len(self.labels):
            raise InvalidParameterError(
                f"{len(self.effects)} effects but {len(self.labels)} labels"
            )
        if len(set(self.labels)) != len(self.labels):
            raise InvalidParameterError(f"duplicate outcome labels: {self.labels}")
        if self.certificates is not None:
            certs = tuple(self.certificates)
            if len(certs) != len(self.effects):
                raise InvalidParameterError("certificates must align with effects")
            object.__setattr__(self, "certificates", certs)

    def __len__(self) -> int:
        return len(self.effects)


def polygon_system(n: int) -> GptSystem:
    """Regular n-gon state space with its dual effect cone generators.

    States sit at angles ``2*pi*i/n`` with radius ``sqrt(sec(pi/n))``. For
    even n the extremal effects sit at odd multiples of ``pi/n`` (each one
    vanishes on the two states diametrically across from it); for odd n
    they sit at the state angles with normalization ``1/(1 + r^2)``.
    """
    if n < 3:
        raise InvalidParameterError(f"polygon needs at least 3 vertices, got {n}")
    r = float(np.sqrt(1.0 / np.cos(np.pi / n)))
    states = tuple(
        GptVector(
            (r * np.cos(2 * np.pi * i / n), r * np.sin(2 * np.pi * i / n), 1.0), "state"
        )
        for i in range(n)
    )
    if n % 2 == 0:
        effects = tuple(
            GptVector(
                (
                    0.5 * r * np.cos((2 * i + 1) * np.pi / n),
                    0.5 * r * np.sin((2 * i + 1) * np.pi / n),
                    0.5,
                ),
                "effect",
            )
            for i in range(n)
        )
    else:
        scale = 1.0 / (1.0 + r * r)
        effects = tuple(
            GptVector(
                (
                    scale * r * np.cos(2 * np.pi * i / n),
                    scale * r * np.sin(2 * np.pi * i / n),
                    scale,
                ),
                "effect",
            )
            for i in range(n)
        )
    return GptSystem(
        name=f"polygon-{n}",
        extremal_states=states,
        extremal_effects=effects,
        unit_effect=GptVector((0.0, 0.0, 1.0), "effect"),
    )


def square_bit() -> GptSystem:
    """The four-state square system with its explicit coordinates.

    This is the standard presentation with states at radius 1 on the axes
    and effects at half-integer corners; it differs from
    ``polygon_system(4)`` by a rotation and scaling of the x-y plane.
    """
    states = (
        GptVector((1.0, 0.0, 1.0), "state"),
        GptVector((0.0, 1.0, 1.0), "state"),
        GptVector((-1.0, 0.0, 1.0), "state"),
        GptVector((0.0, -1.0, 1.0), "state"),
    )
    effects = (
        GptVector((0.5, 0.5, 0.5), "effect"),
        GptVector((-0.5, 0.5, 0.5), "effect"),
        GptVector((-0.5, -0.5, 0.5), "effect"),
        GptVector((0.5, -0.5, 0.5), "effect"),
    )
    return GptSystem(
        name="square-bit",
        extremal_states=states,
        extremal_effects=effects,
        unit_effect=GptVector((0.0, 0.0, 1.0), "effect"),
    )


def classical_bit() -> GptSystem:
    """A 1-simplex (two perfectly distinguishable states) embedded in R^3."""
    return GptSystem(
        name="classical-bit",
        extremal_states=(GptVector((1.0, 0.0, 1.0)), GptVector((-1.0, 0.0, 1.0))),
        extremal_effects=(
            GptVector((0.5, 0.0, 0.5), "effect"),
            GptVector((-0.5, 0.0, 0.5), "effect"),
        ),
        unit_effect=GptVector((0.0, 0.0, 1.0), "effect"),
    )


def probability(e: GptVector, w: GptVector, tol: float = DEFAULT_TOL) -> float:
    """Outcome probability ``e . w``, clipped to [0, 1] near the boundary.

    Values farther than ``tol`` outside [0, 1] indicate an invalid
    pairing and raise.
    """
    p = e.dot(w)
    if p < -tol or p > 1.0 + tol:
        raise InvalidPairingError(f"pairing value {p} outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def is_valid_effect(sys: GptSystem, e: GptVector, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``e`` pairs into [0, 1] with every extremal state."""
    for w in sys.extremal_states:
        p = e.dot(w)
        if p < -tol or p > 1.0 + tol:
            return False
    return True


def is_valid_state(sys: GptSystem, w: GptVector, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``w`` is normalized and inside the state polytope.

    Because the extremal effects generate the dual cone, nonnegativity
    against each of them plus normalization is exact polytope
    membership.
    """
    if abs(sys.unit_effect.dot(w) - 1.0) > tol:
        return False
    for e in sys.extremal_effects:
        if e.dot(w) < -tol:
            return False
    return True


def is_valid_measurement(sys: GptSystem, meas: Measurement, tol: float = DEFAULT_TOL) -> bool:
    """All elements valid effects and the elements sum to the unit effect."""
    total = np.zeros(3)
    for e in meas.effects:
        if not isinstance(e, GptVector):
            raise InvalidParameterError("system measurements need GptVector effects")
        if not is_valid_effect(sys, e, tol):
            return False
        total = total + e.coords
    return float(np.max(np.abs(total - sys.unit_effect.coords))) <= tol


def effect_by_angle(sys: GptSystem, angle: float, tol: float = 1e-6) -> GptVector:
    """The extremal effect whose x-y direction matches ``angle`` (radians)."""
    for e in sys.extremal_effects:
        if abs(e.coords[0]) < tol and abs(e.coords[1]) < tol:
            continue
        a = float(np.arctan2(e.coords[1], e.coords[0])) % (2 * np.pi)
        if abs(a - angle % (2 * np.pi)) < tol:
            return e
    raise InvalidParameterError(f"no extremal effect at angle {angle}")


def state_by_angle(sys: GptSystem, angle: float, tol: float = 1e-6) -> GptVector:
    """The extremal state at x-y direction ``angle`` (radians)."""
    for w in sys.extremal_states:
        a = float(np.arctan2(w.coords[1], w.coords[0])) % (2 * np.pi)
        if abs(a - angle % (2 * np.pi)) < tol:
            return w
    raise InvalidParameterError(f"no extremal state at angle {angle}")
