# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in ``_pykernels.py``.

Same algorithms, same operation order; only the loop bodies are lowered
to C. Keep the two files in sync.
"""

import math

import numpy as np

from libc.math cimport fabs, sqrt

BACKEND = "compiled"


def jacobi_eigenvalues(a, double tol=1e-14, int max_sweeps=100):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    w = np.array(a, dtype=np.float64, copy=True, order="C")
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("matrix must be square")
    cdef double[:, ::1] m = w
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweep
    cdef double off2, scale, diag2, apq, theta, t, c, s, tp, tq
    for sweep in range(max_sweeps):
        off2 = 0.0
        diag2 = 0.0
        for p in range(n):
            diag2 += m[p, p] * m[p, p]
            for q in range(p + 1, n):
                off2 += 2.0 * m[p, q] * m[p, q]
        scale = sqrt(off2 + diag2)
        if scale < 1.0:
            scale = 1.0
        if sqrt(off2) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if fabs(apq) <= 1e-300:
                    continue
                theta = (m[q, q] - m[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    tp = m[p, i]
                    tq = m[q, i]
                    m[p, i] = c * tp - s * tq
                    m[q, i] = s * tp + c * tq
                for i in range(n):
                    tp = m[i, p]
                    tq = m[i, q]
                    m[i, p] = c * tp - s * tq
                    m[i, q] = s * tp + c * tq
    return np.sort(np.diagonal(w).copy())


def product_grid_min(points, coeffs, block: int = 1024):
    """Minimum of ``0.25 * p_i @ coeffs @ p_j`` over all point pairs."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    cmat = np.ascontiguousarray(coeffs, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 4 or cmat.shape != (4, 4):
        raise ValueError("points must be (n, 4) and coeffs (4, 4)")
    cdef const double[:, ::1] m = pts
    cdef const double[:, ::1] c = cmat
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t i, j, bi = 0, bj = 0
    cdef double best = math.inf
    cdef double r0, r1, r2, r3, v
    for i in range(n):
        r0 = m[i, 0] * c[0, 0] + m[i, 1] * c[1, 0] + m[i, 2] * c[2, 0] + m[i, 3] * c[3, 0]
        r1 = m[i, 0] * c[0, 1] + m[i, 1] * c[1, 1] + m[i, 2] * c[2, 1] + m[i, 3] * c[3, 1]
        r2 = m[i, 0] * c[0, 2] + m[i, 1] * c[1, 2] + m[i, 2] * c[2, 2] + m[i, 3] * c[3, 2]
        r3 = m[i, 0] * c[0, 3] + m[i, 1] * c[1, 3] + m[i, 2] * c[2, 3] + m[i, 3] * c[3, 3]
        for j in range(n):
            v = r0 * m[j, 0] + r1 * m[j, 1] + r2 * m[j, 2] + r3 * m[j, 3]
            if v < best:
                best = v
                bi = i
                bj = j
    return 0.25 * best, bi, bj
