"""Named end-to-end reproductions of the toolkit's headline numbers.

Each scenario wires states, measurements and games together, runs in
isolation under a :class:`RunConfig`, and reports expected-vs-actual per
check. Expected values are kept in closed form (entropy expressions) and
evaluated at run time so no decimal truncation creeps in.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

from . import composition, systems
from .capacity import (
    information_capacity,
    information_dimension,
    product_basis_instance,
    verify_capacity_accounting,
)
from .composition import CompositionRule, popt_membership
from .config import RunConfig
from .errors import UnknownScenarioError
from .game import GameReport, IcStrategy, binary_entropy, play_ic_game
from .operators import identity, projector, tensor, KET_0, KET_1
from .systems import Measurement


@dataclass(frozen=True)
class Check:
    label: str
    expected: object
    actual: object
    tolerance: Optional[float]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "expected": self.expected,
            "actual": self.actual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _near(label: str, expected: float, actual: float, tol: float) -> Check:
    return Check(label, float(expected), float(actual), tol,
                 abs(float(expected) - float(actual)) <= tol)


def _exact(label: str, expected, actual) -> Check:
    return Check(label, expected, actual, None, expected == actual)


@dataclass(frozen=True)
class ScenarioReport:
    scenario: str
    anchor: str
    checks: tuple
    passed: bool
    wall_time_s: float
    summary: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "anchor": self.anchor,
            "passed": self.passed,
            "wall_time_s": self.wall_time_s,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
        }

    @staticmethod
    def csv_header() -> str:
        return "scenario,score_bits,bound_bits,violation,pass"

    def csv_row(self) -> str:
        if self.summary is None:
            score = bound = violation = ""
        else:
            score = repr(self.summary["score_bits"])
            bound = repr(self.summary["bound_bits"])
            violation = str(self.summary["violation"]).lower()
        return f"{self.scenario},{score},{bound},{violation},{str(self.passed).lower()}"


@dataclass(frozen=True)
class Scenario:
    name: str
    anchor: str
    runner: Callable


def _game_summary(report: GameReport) -> dict:
    return {
        "score_bits": report.score,
        "bound_bits": report.bound,
        "violation": report.violation,
    }


# ---------------------------------------------------------------------------
# Strategy builders (also used by tests and the CLI documentation).
# ---------------------------------------------------------------------------

def min_ic3_strategy() -> IcStrategy:
    """Product-state encodings with two beyond-quantum decodings."""
    pairs = composition.min_ic3_states()
    m1, m2, m3 = composition.min_ic3_measurements()
    return IcStrategy(
        n_bits=3,
        encoding={bits: st for bits, (st, _) in pairs.items()},
        encoding_certificates={bits: cert for bits, (_, cert) in pairs.items()},
        decodings={
            1: (m1, {"E1": 0, "E1c": 1}),
            2: (m2, {"E2": 0, "E2c": 1}),
            3: (m3, {"E3": 0, "E3c": 1}),
        },
    )


def max_ic3_strategy() -> IcStrategy:
    """Partial-transpose encodings read out by the three parity measurements."""
    parity = composition.pauli_correlation_measurements()
    guesses = {"even": 0, "odd": 1}
    return IcStrategy(
        n_bits=3,
        encoding=composition.max_ic3_states(),
        decodings={
            1: (parity["xx"], guesses),
            2: (parity["yy"], guesses),
            3: (parity["zz"], guesses),
        },
    )


def square_ic2_strategy():
    """Square-bit IC-2: each bit read perfectly by one extremal pair."""
    sq = systems.square_bit()
    w = sq.extremal_states
    e = sq.extremal_effects
    strategy = IcStrategy(
        n_bits=2,
        encoding={"00": w[0], "01": w[1], "11": w[2], "10": w[3]},
        decodings={
            1: (Measurement((e[0], e[2]), ("e0", "e2")), {"e0": 0, "e2": 1}),
            2: (Measurement((e[1], e[3]), ("e1", "e3")), {"e3": 0, "e1": 1}),
        },
    )
    return strategy, sq


def octagon_ic2_strategy():
    """Octagon IC-2: first bit perfect, second right with probability 1/sqrt(2)."""
    octo = systems.polygon_system(8)
    enc = {
        "00": systems.state_by_angle(octo, 0.0),
        "01": systems.state_by_angle(octo, math.pi / 4),
        "11": systems.state_by_angle(octo, math.pi),
        "10": systems.state_by_angle(octo, 5 * math.pi / 4),
    }
    e0 = systems.effect_by_angle(octo, math.pi / 8)
    e4 = systems.effect_by_angle(octo, 9 * math.pi / 8)
    e2 = systems.effect_by_angle(octo, 5 * math.pi / 8)
    e6 = systems.effect_by_angle(octo, 13 * math.pi / 8)
    strategy = IcStrategy(
        n_bits=2,
        encoding=enc,
        decodings={
            1: (Measurement((e0, e4), ("e0", "e4")), {"e0": 0, "e4": 1}),
            2: (Measurement((e2, e6), ("e2", "e6")), {"e2": 1, "e6": 0}),
        },
    )
    return strategy, octo


def quantum_ic3_baseline_strategy() -> IcStrategy:
    """Two bits stored in the computational basis, third answered by a coin."""
    p0 = projector(KET_0)
    p1 = projector(KET_1)
    eye2 = identity(2)
    encoding = {}
    for bits in IcStrategy.input_strings(3):
        a = p0 if bits[0] == "0" else p1
        b = p0 if bits[1] == "0" else p1
        encoding[bits] = tensor(a, b)
    m1 = Measurement((tensor(p0, eye2), tensor(p1, eye2)), ("0", "1"))
    m2 = Measurement((tensor(eye2, p0), tensor(eye2, p1)), ("0", "1"))
    m3 = Measurement((identity(4),), ("any",))
    return IcStrategy(
        n_bits=3,
        encoding=encoding,
        decodings={
            1: (m1, {"0": 0, "1": 1}),
            2: (m2, {"0": 0, "1": 1}),
            3: (m3, {"any": "random"}),
        },
    )


# ---------------------------------------------------------------------------
# Scenario runners.
# ---------------------------------------------------------------------------

def _run_min_ic3(cfg: RunConfig):
    report = play_ic_game(
        min_ic3_strategy(),
        CompositionRule.MINIMAL,
        tol=cfg.tolerance,
        grid_density=cfg.grid_density,
    )
    expected = 3.0 - binary_entropy(0.25)
    checks = [
        _near("score_bits", expected, report.score, 1e-9),
        _near("mi_bit_1", 1.0, report.per_bit_mi[0], 1e-9),
        _near("mi_bit_2", 1.0, report.per_bit_mi[1], 1e-9),
        _near("mi_bit_3", 1.0 - binary_entropy(0.25), report.per_bit_mi[2], 1e-9),
        _exact("violation", True, report.violation),
        _near("bound_bits", 2.0, report.bound, 1e-12),
    ]
    return checks, _game_summary(report)


def _run_max_ic3(cfg: RunConfig):
    strategy = max_ic3_strategy()
    report = play_ic_game(
        strategy,
        CompositionRule.MAXIMAL,
        tol=cfg.tolerance,
        grid_density=cfg.grid_density,
    )
    popt_count = sum(
        popt_membership(w, cfg.grid_density, cfg.tolerance).member
        for w in strategy.encoding.values()
    )
    cert_count = 0
    for b in range(1, 4):
        meas, _ = strategy.decodings[b]
        cert_count += sum(
            cert is not None and cert.verify(eff, cfg.tolerance)
            for eff, cert in zip(meas.effects, meas.certificates)
        )
    checks = [
        _near("score_bits", 3.0, report.score, 1e-9),
        _near("mi_bit_1", 1.0, report.per_bit_mi[0], 1e-9),
        _near("mi_bit_2", 1.0, report.per_bit_mi[1], 1e-9),
        _near("mi_bit_3", 1.0, report.per_bit_mi[2], 1e-9),
        _exact("encodings_popt", 8, int(popt_count)),
        _exact("decoding_effects_certified", 6, int(cert_count)),
        _exact("violation", True, report.violation),
    ]
    return checks, _game_summary(report)


def _run_square_ic2(cfg: RunConfig):
    strategy, sq = square_ic2_strategy()
    report = play_ic_game(strategy, sq, tol=cfg.tolerance)
    checks = [
        _near("score_bits", 2.0, report.score, 1e-9),
        _near("bound_bits", 1.0, report.bound, 1e-12),
        _exact("violation", True, report.violation),
    ]
    return checks, _game_summary(report)


def _run_octagon_ic2(cfg: RunConfig):
    strategy, octo = octagon_ic2_strategy()
    report = play_ic_game(strategy, octo, tol=cfg.tolerance)
    p = 1.0 - 1.0 / math.sqrt(2.0)
    expected = 2.0 - 1.0 / (2.0 * math.sqrt(2.0)) + p * math.log2(p)
    checks = [
        _near("score_bits", expected, report.score, 1e-9),
        _near("mi_bit_1", 1.0, report.per_bit_mi[0], 1e-9),
        _near("mi_bit_2", 1.0 - binary_entropy(p), report.per_bit_mi[1], 1e-9),
        _near("bound_bits", 1.0, report.bound, 1e-12),
        _exact("violation", True, report.violation),
    ]
    return checks, _game_summary(report)


def _run_quantum_baseline(cfg: RunConfig):
    report = play_ic_game(
        quantum_ic3_baseline_strategy(),
        CompositionRule.QUANTUM,
        tol=cfg.tolerance,
        grid_density=cfg.grid_density,
    )
    checks = [
        _near("score_bits", 2.0, report.score, 1e-9),
        _exact("violation", False, report.violation),
    ]
    return checks, _game_summary(report)


def _run_capacity_square(cfg: RunConfig):
    sq = systems.square_bit()
    cap = information_capacity(sq, tol=cfg.tolerance)
    dim = information_dimension(sq, tol=cfg.tolerance)
    checks = [
        _exact("information_capacity", 2, cap),
        _exact("information_dimension", 4, dim),
        _exact("dimension_mismatch", 2, dim - cap),
    ]
    return checks, None


def _run_capacity_octagon(cfg: RunConfig):
    octo = systems.polygon_system(8)
    cap = information_capacity(octo, tol=cfg.tolerance)
    dim = information_dimension(octo, tol=cfg.tolerance)
    checks = [
        _exact("information_capacity", 2, cap),
        _exact("information_dimension", 2, dim),
        _exact("dimension_mismatch", 0, dim - cap),
    ]
    return checks, None


def _accounting_checks(report):
    return [
        _near("trace_sum", 4.0, report.trace_sum, 1e-9),
        _near("min_residual", 0.0, min(report.residuals), 1e-9),
        _near("max_hit_error", 0.0, max(abs(h - 1.0) for h in report.per_state_hits), 1e-9),
        _exact("n_states", 4, report.n),
        _exact("bound_d_pow_k", 4, report.d_pow_k),
    ]


def _run_min_accounting(cfg: RunConfig):
    states, _, meas = product_basis_instance()
    report = verify_capacity_accounting(
        CompositionRule.MINIMAL, states, meas, 2, 2,
        tol=cfg.tolerance, grid_density=cfg.grid_density,
    )
    return _accounting_checks(report), None


def _run_max_accounting(cfg: RunConfig):
    states, _, meas = product_basis_instance()
    report = verify_capacity_accounting(
        CompositionRule.MAXIMAL, states, meas, 2, 2,
        tol=cfg.tolerance, grid_density=cfg.grid_density,
    )
    checks = _accounting_checks(report)
    eye = identity(4)
    complements_popt = sum(
        popt_membership(eye - w, cfg.grid_density, cfg.tolerance).member
        for w in composition.max_ic3_states().values()
    )
    checks.append(_exact("ic3_encoding_complements_popt", 8, int(complements_popt)))
    return checks, None


_REGISTRY = (
    Scenario("min-ic3", "IC-3 game over the minimal two-qubit composition", _run_min_ic3),
    Scenario("max-ic3", "IC-3 game over the maximal two-qubit composition", _run_max_ic3),
    Scenario("square-ic2", "IC-2 game over the square-bit system", _run_square_ic2),
    Scenario("octagon-ic2", "IC-2 game over the octagon system", _run_octagon_ic2),
    Scenario(
        "quantum-ic3-baseline",
        "IC-3 game over the quantum composition, two bits stored exactly",
        _run_quantum_baseline,
    ),
    Scenario("capacity-square", "single-shot capacity and pairwise dimension of the square-bit",
             _run_capacity_square),
    Scenario("capacity-octagon", "single-shot capacity and pairwise dimension of the octagon",
             _run_capacity_octagon),
    Scenario(
        "min-capacity-accounting",
        "trace accounting for four distinguishable states under the minimal rule",
        _run_min_accounting,
    ),
    Scenario(
        "max-capacity-accounting",
        "trace accounting for four distinguishable states under the maximal rule",
        _run_max_accounting,
    ),
)


def builtin_registry() -> tuple:
    """All registered scenarios, in canonical order."""
    return _REGISTRY


def run_scenario(name: str, config: RunConfig = RunConfig()) -> ScenarioReport:
    """Run one registered scenario and compare against its expectations."""
    by_name = {s.name: s for s in _REGISTRY}
    if name not in by_name:
        known = ", ".join(s.name for s in _REGISTRY)
        raise UnknownScenarioError(f"unknown scenario {name!r}; registry: {known}")
    scenario = by_name[name]
    start = time.perf_counter()
    checks, summary = scenario.runner(config)
    elapsed = time.perf_counter() - start
    checks = tuple(checks)
    return ScenarioReport(
        scenario=scenario.name,
        anchor=scenario.anchor,
        checks=checks,
        passed=all(c.passed for c in checks),
        wall_time_s=elapsed,
        summary=summary,
    )
