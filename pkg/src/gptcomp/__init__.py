"""State/effect cones for two-qubit compositions, toy systems and IC games.

The package models the three ways a pair of qubits can compose (minimal,
maximal and quantum tensor-product cones), small polygonal toy systems,
single-shot distinguishability and capacity, and the IC-N guessing game
whose score certifies whether a composition respects the information
bound of the transmitted system.
"""

from . import _kernels
from .capacity import (
    AccountingReport,
    DistinguishabilityInstance,
    HolevoBound,
    holevo_capacity_bound,
    information_capacity,
    information_dimension,
    perfectly_distinguishable,
    product_basis_instance,
    verify_capacity_accounting,
)
from .composition import (
    CompositionRule,
    PoptVerdict,
    SeparableCertificate,
    is_effect,
    is_state,
    max_ic3_states,
    measurement_is_valid,
    min_ic3_measurements,
    min_ic3_states,
    pauli_correlation_measurements,
    pauli_diagonal_min,
    popt_membership,
    pure_tensor_expectation,
)
from .config import RunConfig
from .errors import (
    AccountingViolationError,
    CertificateRequiredError,
    GptcompError,
    InvalidBlochVectorError,
    InvalidDistributionError,
    InvalidPairingError,
    InvalidParameterError,
    SchemaError,
    StrategyInvalidError,
    UnknownScenarioError,
    UnsupportedDimensionError,
    UnsupportedOracleError,
)
from .game import (
    GameReport,
    IcStrategy,
    binary_entropy,
    ic_check,
    mutual_information,
    play_ic_game,
)
from .operators import (
    HermitianOperator,
    bell_ket,
    bell_state,
    bloch_state,
    eigenvalues,
    identity,
    is_psd,
    ket_product,
    min_eigenvalue,
    partial_transpose,
    pauli_compose,
    pauli_decompose,
    projector,
    tensor,
    trace_pair,
)
from .scenarios import Scenario, ScenarioReport, builtin_registry, run_scenario
from .systems import (
    GptSystem,
    GptVector,
    Measurement,
    classical_bit,
    is_valid_effect,
    is_valid_measurement,
    is_valid_state,
    polygon_system,
    probability,
    square_bit,
)

__version__ = "0.1.0"

kernel_backend = _kernels.backend_name
