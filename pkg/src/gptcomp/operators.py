"""Dense complex linear algebra for one- and two-qubit Hermitian operators.

Two-qubit matrices use the fixed product-basis ordering
``|00>, |01>, |10>, |11>`` (first factor = subsystem A, second = B); every
concrete matrix in this package is written in that ordering. Values are
double-precision complex, equality checks carry an explicit absolute
tolerance, and operators are immutable after construction, so everything
here is safe for concurrent use.

Eigenvalues are computed by a self-contained cyclic-Jacobi routine (on the
real symmetric embedding of the Hermitian matrix) rather than an external
solver; see ``gptcomp._kernels``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    InvalidBlochVectorError,
    InvalidParameterError,
    UnsupportedDimensionError,
)

DEFAULT_TOL = 1e-9
HERMITICITY_TOL = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HermitianOperator:
    """A self-adjoint complex matrix.

    The constructor rejects non-square input and anything farther than
    ``HERMITICITY_TOL`` from its conjugate transpose, then stores the
    exactly symmetrized matrix read-only.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidParameterError(f"operator must be square, got shape {m.shape}")
        dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if dev > HERMITICITY_TOL:
            raise InvalidParameterError(
                f"matrix is not Hermitian: max |H - H^dag| = {dev:.3e}"
            )
        object.__setattr__(self, "matrix", _frozen((m + m.conj().T) / 2.0))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self.matrix + other.matrix)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self.matrix - other.matrix)

    def __mul__(self, scalar: float) -> "HermitianOperator":
        return HermitianOperator(self.matrix * float(scalar))

    __rmul__ = __mul__

    def isclose(self, other: "HermitianOperator", tol: float = DEFAULT_TOL) -> bool:
        if self.dim != other.dim:
            return False
        return float(np.max(np.abs(self.matrix - other.matrix))) <= tol

    def to_dict(self) -> dict:
        """JSON form: row-major complex entries as [re, im] pairs."""
        flat = self.matrix.reshape(-1)
        return {
            "dim": self.dim,
            "entries": [[float(z.real), float(z.imag)] for z in flat],
        }

    @staticmethod
    def from_dict(obj: dict) -> "HermitianOperator":
        dim = int(obj["dim"])
        entries = obj["entries"]
        if len(entries) != dim * dim:
            raise InvalidParameterError(
                f"expected {dim * dim} entries for dim {dim}, got {len(entries)}"
            )
        m = np.array(
            [complex(re, im) for re, im in entries], dtype=complex
        ).reshape(dim, dim)
        return HermitianOperator(m)


# Single-qubit constants. SIGMA[0] is the identity.
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
PAULI = (_frozen(np.eye(2)), SIGMA_X, SIGMA_Y, SIGMA_Z)

KET_0 = np.array([1.0, 0.0], dtype=complex)
KET_1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)

# Two-qubit Pauli product basis sigma_i (x) sigma_j, indexed [i][j].
_PAULI_2Q = tuple(
    tuple(_frozen(np.kron(PAULI[i], PAULI[j])) for j in range(4)) for i in range(4)
)


def identity(dim: int) -> HermitianOperator:
    return HermitianOperator(np.eye(dim, dtype=complex))


def projector(vec) -> HermitianOperator:
    """Rank-one projector onto the (normalized) vector ``vec``."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise InvalidParameterError("cannot project onto the zero vector")
    v = v / norm
    return HermitianOperator(np.outer(v, v.conj()))


def ket_product(*factors) -> np.ndarray:
    """Kronecker product of single-system kets."""
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def bell_ket(name: str) -> np.ndarray:
    """The four maximally entangled two-qubit kets.

    ``phi+/phi-`` superpose |00> and |11>, ``psi+/psi-`` superpose |01>
    and |10>.
    """
    table = {
        "phi+": (ket_product(KET_0, KET_0) + ket_product(KET_1, KET_1)),
        "phi-": (ket_product(KET_0, KET_0) - ket_product(KET_1, KET_1)),
        "psi+": (ket_product(KET_0, KET_1) + ket_product(KET_1, KET_0)),
        "psi-": (ket_product(KET_0, KET_1) - ket_product(KET_1, KET_0)),
    }
    if name not in table:
        raise InvalidParameterError(f"unknown Bell state {name!r}")
    return table[name] / np.sqrt(2.0)


def bell_state(name: str) -> HermitianOperator:
    return projector(bell_ket(name))


def tensor(a: HermitianOperator, b: HermitianOperator) -> HermitianOperator:
    """Kronecker product; dim multiplies, Hermiticity is preserved."""
    return HermitianOperator(np.kron(a.matrix, b.matrix))


def partial_transpose(w: HermitianOperator, subsystem: str = "B") -> HermitianOperator:
    """Transpose one tensor factor of a two-qubit operator.

    An involution that preserves trace and Hermiticity but not
    positivity.

    Parameters
    ----------
    w : HermitianOperator
        A 4x4 operator in the fixed product-basis ordering.
    subsystem : {"A", "B"}
        Which factor to transpose.
    """
    if w.dim != 4:
        raise UnsupportedDimensionError(
            f"partial transpose implemented for dim 4 only, got dim {w.dim}"
        )
    sub = subsystem.upper()
    if sub not in ("A", "B"):
        raise InvalidParameterError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    t = w.matrix.reshape(2, 2, 2, 2)
    perm = (2, 1, 0, 3) if sub == "A" else (0, 3, 2, 1)
    return HermitianOperator(np.transpose(t, perm).reshape(4, 4))


def pauli_decompose(w: HermitianOperator) -> np.ndarray:
    """Real coefficient table c with ``W = (1/4) sum_ij c_ij s_i (x) s_j``.

    ``s_0`` is the identity, ``s_1..s_3`` the Paulis; ``c_ij`` is
    ``Tr[(s_i (x) s_j) W]`` and is real for Hermitian input.
    """
    if w.dim != 4:
        raise UnsupportedDimensionError(
            f"Pauli decomposition needs a two-qubit operator, got dim {w.dim}"
        )
    c = np.empty((4, 4), dtype=float)
    for i in range(4):
        for j in range(4):
            c[i, j] = float(np.trace(_PAULI_2Q[i][j] @ w.matrix).real)
    return c


def pauli_compose(coeffs) -> HermitianOperator:
    """Inverse of :func:`pauli_decompose`."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (4, 4):
        raise InvalidParameterError(f"coefficient table must be 4x4, got {c.shape}")
    m = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            m += c[i, j] * _PAULI_2Q[i][j]
    return HermitianOperator(m / 4.0)


def eigenvalues(h: HermitianOperator) -> np.ndarray:
    """All real eigenvalues, ascending.

    Embeds the d x d Hermitian matrix as the real symmetric 2d x 2d block
    matrix [[Re, -Im], [Im, Re]] (whose spectrum is the original one with
    every eigenvalue doubled) and runs the Jacobi kernel.
    """
    m = h.matrix
    d = h.dim
    re, im = m.real, m.imag
    s = np.block([[re, -im], [im, re]])
    doubled = _kernels.jacobi_eigenvalues(s)
    return np.asarray(doubled[::2][:d])


def min_eigenvalue(h: HermitianOperator) -> float:
    return float(eigenvalues(h)[0])


def is_psd(h: HermitianOperator, tol: float = DEFAULT_TOL) -> bool:
    return min_eigenvalue(h) >= -tol


def bloch_state(m) -> HermitianOperator:
    """Qubit state ``(I + m . sigma) / 2`` for a Bloch vector ``m``.

    Unit vectors give pure states (eigenvalues {0, 1}); the zero vector
    gives the maximally mixed state.
    """
    v = np.asarray(m, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise InvalidBlochVectorError(f"Bloch vector must have 3 components, got {v.shape}")
    norm = float(np.linalg.norm(v))
    if norm > 1.0 + 1e-9:
        raise InvalidBlochVectorError(f"Bloch vector norm {norm} exceeds 1")
    mat = PAULI[0] + v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z
    return HermitianOperator(mat / 2.0)


def trace_pair(e: HermitianOperator, w: HermitianOperator) -> float:
    """The Born pairing ``Tr[E W]`` (real for Hermitian arguments)."""
    if e.dim != w.dim:
        raise InvalidParameterError(f"dimension mismatch: {e.dim} vs {w.dim}")
    return float(np.trace(e.matrix @ w.matrix).real)
