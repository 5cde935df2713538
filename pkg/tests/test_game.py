import math

import numpy as np
import pytest

from gptcomp import (
    CompositionRule,
    GameReport,
    HermitianOperator,
    IcStrategy,
    InvalidDistributionError,
    InvalidParameterError,
    Measurement,
    StrategyInvalidError,
    bell_state,
    binary_entropy,
    ic_check,
    identity,
    mutual_information,
    play_ic_game,
    projector,
    square_bit,
    tensor,
)
from gptcomp.operators import KET_0, KET_1
from gptcomp.scenarios import (
    max_ic3_strategy,
    min_ic3_strategy,
    octagon_ic2_strategy,
    quantum_ic3_baseline_strategy,
    square_ic2_strategy,
)

from conftest import random_density, random_unitary

MIN = CompositionRule.MINIMAL
MAX = CompositionRule.MAXIMAL
QUA = CompositionRule.QUANTUM


def test_binary_entropy_basics():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)
    p = 1 - 1 / math.sqrt(2)
    expected = 1 / (2 * math.sqrt(2)) - p * math.log2(p)
    assert binary_entropy(p) == pytest.approx(expected, abs=1e-14)
    assert binary_entropy(p) == pytest.approx(0.8724294, abs=1e-7)
    with pytest.raises(InvalidParameterError):
        binary_entropy(1.2)


def test_mutual_information_extremes():
    assert mutual_information([[0.5, 0.0], [0.0, 0.5]]) == pytest.approx(1.0, abs=1e-12)
    assert mutual_information([[0.25, 0.25], [0.25, 0.25]]) == pytest.approx(0.0, abs=1e-12)


def test_mutual_information_bsc_quarter():
    # crossover 1/4 with uniform input; independent oracle 0.75*log2(3) - 1
    t = np.array([[3 / 8, 1 / 8], [1 / 8, 3 / 8]])
    expected = 0.75 * math.log2(3.0) - 1.0
    assert mutual_information(t) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.18872187554086717, abs=1e-15)


def test_mutual_information_symmetry_and_relabeling(rng):
    for _ in range(20):
        t = rng.uniform(0.0, 1.0, size=(2, 3))
        t /= t.sum()
        assert mutual_information(t) == pytest.approx(mutual_information(t.T), abs=1e-12)
        shuffled = t[:, [2, 0, 1]]
        assert mutual_information(t) == pytest.approx(
            mutual_information(shuffled), abs=1e-12
        )


def test_mutual_information_rejects_bad_tables():
    with pytest.raises(InvalidDistributionError):
        mutual_information([[0.5, 0.6], [0.0, 0.0]])
    with pytest.raises(InvalidDistributionError):
        mutual_information([[0.7, -0.2], [0.3, 0.2]])


def test_min_ic3_game():
    report = play_ic_game(min_ic3_strategy(), MIN)
    expected_third = 0.75 * math.log2(3.0) - 1.0
    assert report.per_bit_mi[0] == pytest.approx(1.0, abs=1e-12)
    assert report.per_bit_mi[1] == pytest.approx(1.0, abs=1e-12)
    assert report.per_bit_mi[2] == pytest.approx(expected_third, abs=1e-12)
    assert report.score == pytest.approx(2.0 + expected_third, abs=1e-12)
    assert report.bound == 2.0
    assert report.violation
    assert not ic_check(report, 2.0)
    assert ic_check(report, 3.0)


def test_max_ic3_game_is_perfect():
    report = play_ic_game(max_ic3_strategy(), MAX)
    assert report.per_bit_mi == pytest.approx((1.0, 1.0, 1.0), abs=1e-12)
    assert report.score == pytest.approx(3.0, abs=1e-12)
    assert report.violation


def test_square_and_octagon_games():
    strategy, sq = square_ic2_strategy()
    report = play_ic_game(strategy, sq)
    assert report.score == pytest.approx(2.0, abs=1e-12)
    assert report.bound == pytest.approx(1.0)
    assert report.violation

    strategy, octo = octagon_ic2_strategy()
    report = play_ic_game(strategy, octo)
    p = 1 - 1 / math.sqrt(2)
    expected = 2 - 1 / (2 * math.sqrt(2)) + p * math.log2(p)
    assert report.score == pytest.approx(expected, abs=1e-12)
    assert report.per_bit_mi[0] == pytest.approx(1.0, abs=1e-12)
    assert report.violation


def test_quantum_baseline_game():
    report = play_ic_game(quantum_ic3_baseline_strategy(), QUA)
    assert report.score == pytest.approx(2.0, abs=1e-12)
    assert not report.violation
    assert ic_check(report, 2.0)


def test_joint_table_shape_and_mass():
    report = play_ic_game(min_ic3_strategy(), MIN)
    assert report.joint.shape == (8, 3, 2)
    assert report.joint.sum() == pytest.approx(1.0, abs=1e-12)
    assert all(0.0 <= mi <= 1.0 + 1e-12 for mi in report.per_bit_mi)
    doc = report.to_dict()
    assert doc["joint"]["000"]["1"] == pytest.approx([1 / 24, 0.0])
    assert GameReport.csv_header().startswith("n_bits")
    assert report.csv_row().split(",")[0] == "3"


def test_strategy_validation_names_offender():
    strategy = min_ic3_strategy()
    # swap one encoding for an entangled state: invalid under the minimal rule
    bad_encoding = dict(strategy.encoding)
    bad_encoding["011"] = bell_state("phi+")
    bad = IcStrategy(
        n_bits=3,
        encoding=bad_encoding,
        decodings=strategy.decodings,
        encoding_certificates=strategy.encoding_certificates,
    )
    with pytest.raises(StrategyInvalidError, match="011"):
        play_ic_game(bad, MIN)


def test_strategy_validation_flags_bad_measurement():
    strategy = min_ic3_strategy()
    with pytest.raises(StrategyInvalidError, match="bit 1"):
        play_ic_game(strategy, QUA)  # E1 is not a quantum effect


def test_strategy_requires_complete_tables():
    m = Measurement((identity(4),), ("any",))
    with pytest.raises(InvalidParameterError):
        IcStrategy(n_bits=2, encoding={"00": identity(4) * 0.25},
                   decodings={1: (m, {"any": 0}), 2: (m, {"any": 0})})
    with pytest.raises(InvalidParameterError):
        IcStrategy(
            n_bits=1,
            encoding={"0": identity(4) * 0.25, "1": identity(4) * 0.25},
            decodings={1: (m, {"any": 2})},
        )


def test_mixture_joint_is_convex_combination():
    s1 = quantum_ic3_baseline_strategy()
    # a second deterministic strategy: always guess 0 on every bit
    m0 = Measurement((identity(4),), ("any",))
    s2 = IcStrategy(
        n_bits=3,
        encoding=s1.encoding,
        decodings={b: (m0, {"any": 0}) for b in (1, 2, 3)},
    )
    mix = IcStrategy.mixture(((0.3, s1), (0.7, s2)))
    r1 = play_ic_game(s1, QUA)
    r2 = play_ic_game(s2, QUA)
    rm = play_ic_game(mix, QUA)
    assert np.allclose(rm.joint, 0.3 * r1.joint + 0.7 * r2.joint, atol=1e-12)
    # mixture weights validated
    with pytest.raises(InvalidParameterError):
        IcStrategy.mixture(((0.3, s1), (0.3, s2)))


def random_quantum_strategy(rng):
    encoding = {
        bits: random_density(rng, 4) for bits in IcStrategy.input_strings(3)
    }
    decodings = {}
    for b in (1, 2, 3):
        u = random_unitary(rng, 4)
        lam = rng.uniform(0.0, 1.0, size=4)
        e = HermitianOperator(u @ np.diag(lam) @ u.conj().T)
        meas = Measurement((e, identity(4) - e), ("hit", "miss"))
        decodings[b] = (meas, {"hit": 0, "miss": 1})
    return IcStrategy(n_bits=3, encoding=encoding, decodings=decodings)


def test_random_quantum_strategies_respect_bound(rng):
    # spot-validate a few fully, then sweep scores (validity holds by construction)
    for _ in range(5):
        s = random_quantum_strategy(rng)
        report = play_ic_game(s, QUA)
        assert report.score <= 2.0 + 1e-6
    for _ in range(200):
        s = random_quantum_strategy(rng)
        report = play_ic_game(s, QUA, validate=False)
        assert report.score <= 2.0 + 1e-6


def test_report_rejects_unnormalized_joint():
    with pytest.raises(InvalidDistributionError):
        GameReport(
            n_bits=1,
            joint=np.full((2, 1, 2), 0.4),
            per_bit_mi=(0.0,),
            score=0.0,
            bound=1.0,
            violation=False,
        )
