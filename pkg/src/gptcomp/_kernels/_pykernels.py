"""Pure-Python (numpy) implementations of the two hot kernels.

These mirror the compiled versions in ``_ckernels.pyx`` operation for
operation, so both backends produce the same numbers up to the last few
ulps of float64 arithmetic.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def jacobi_eigenvalues(a, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps annihilate every off-diagonal pair (p, q) with the classical
    rotation choosing the smaller tangent root; convergence is quadratic.
    Stops when the off-diagonal Frobenius mass drops below ``tol`` times
    the matrix scale.

    Returns the eigenvalues sorted ascending.
    """
    m = np.array(a, dtype=np.float64, copy=True)
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n:
        raise ValueError("matrix must be square")
    for _ in range(max_sweeps):
        off2 = 2.0 * float(np.sum(np.triu(m, 1) ** 2))
        scale = math.sqrt(off2 + float(np.sum(np.diagonal(m) ** 2)))
        if math.sqrt(off2) <= tol * max(1.0, scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (m[q, q] - m[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = m[p, :].copy()
                rq = m[q, :].copy()
                m[p, :] = c * rp - s * rq
                m[q, :] = s * rp + c * rq
                cp = m[:, p].copy()
                cq = m[:, q].copy()
                m[:, p] = c * cp - s * cq
                m[:, q] = s * cp + c * cq
    return np.sort(np.diagonal(m).copy())


def product_grid_min(points, coeffs, block: int = 1024):
    """Minimum of ``0.25 * p_i @ coeffs @ p_j`` over all point pairs.

    ``points`` has one row (1, mx, my, mz) per Bloch-sphere grid point and
    ``coeffs`` is the 4x4 real correlation table of a two-qubit Hermitian
    operator, so the scanned value is the operator's expectation on the
    pure product state indexed by (i, j).

    Returns ``(min_value, i, j)`` with the first minimizing pair in
    row-major (i outer, j inner) order.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    c = np.ascontiguousarray(coeffs, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 4 or c.shape != (4, 4):
        raise ValueError("points must be (n, 4) and coeffs (4, 4)")
    n = pts.shape[0]
    left = pts @ c
    best = math.inf
    bi = bj = 0
    for start in range(0, n, block):
        vals = left[start : start + block] @ pts.T
        k = int(np.argmin(vals))
        v = float(vals.flat[k])
        if v < best:
            best = v
            bi = start + k // n
            bj = k % n
    return 0.25 * best, bi, bj
