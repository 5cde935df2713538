"""Exception hierarchy shared by all gptcomp modules."""


class GptcompError(Exception):
    """Base class for all errors raised by gptcomp."""


class InvalidParameterError(GptcompError, ValueError):
    """An argument is outside its documented domain."""


class InvalidBlochVectorError(InvalidParameterError):
    """A Bloch vector has norm greater than one."""


class UnsupportedDimensionError(GptcompError, ValueError):
    """An operator has a dimension the operation does not handle."""


class InvalidPairingError(GptcompError, ValueError):
    """An effect/state pairing produced a value far outside [0, 1]."""


class CertificateRequiredError(GptcompError, ValueError):
    """A cone membership test needs an explicit separable certificate."""


class InvalidDistributionError(GptcompError, ValueError):
    """A probability table has negative mass or does not sum to one."""


class StrategyInvalidError(GptcompError, ValueError):
    """An encoding state or decoding measurement is not valid in the theory."""


class UnsupportedOracleError(GptcompError, ValueError):
    """The requested distinguishability oracle does not cover this input."""


class AccountingViolationError(GptcompError, ValueError):
    """A claimed distinguishing measurement fails the trace-accounting check."""


class UnknownScenarioError(GptcompError, ValueError):
    """A scenario name is not present in the registry."""


class SchemaError(GptcompError, ValueError):
    """A JSON input document does not match the documented schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
