"""Backend selection for the numeric hot kernels.

Two interchangeable implementations exist: a Cython extension
(``_ckernels``) and a numpy fallback (``_pykernels``). The compiled one is
preferred when importable; set ``GPTCOMP_KERNELS=python`` or
``GPTCOMP_KERNELS=compiled`` to force a choice. ``benchmarks/bench_kernels.py``
compares the two.
"""

from __future__ import annotations

import os

from .. import errors
from . import _pykernels

_FORCED = os.environ.get("GPTCOMP_KERNELS", "auto").strip().lower()
if _FORCED not in ("auto", "compiled", "python"):
    raise errors.InvalidParameterError(
        f"GPTCOMP_KERNELS must be 'auto', 'compiled' or 'python', got {_FORCED!r}"
    )

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

if _FORCED == "compiled" and _ckernels is None:
    raise ImportError(
        "GPTCOMP_KERNELS=compiled but the extension is not built; "
        "run 'python setup.py build_ext --inplace'"
    )

_active = _pykernels if (_FORCED == "python" or _ckernels is None) else _ckernels

backend_name = _active.BACKEND
jacobi_eigenvalues = _active.jacobi_eigenvalues
product_grid_min = _active.product_grid_min


def available_backends() -> tuple[str, ...]:
    return ("python",) if _ckernels is None else ("python", "compiled")


def get_backend(name: str):
    """Return the kernel module for ``name`` regardless of the active one."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _ckernels is None:
            raise errors.InvalidParameterError("compiled backend is not built")
        return _ckernels
    raise errors.InvalidParameterError(f"unknown kernel backend {name!r}")
