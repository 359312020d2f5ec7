# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic Jacobi eigendecomposition and the batched
pairwise |difference| product used by Monte Carlo volume estimation.

Must stay operation-for-operation in sync with ``_core_py.py`` (the pure
fallback): both backends are required to produce bit-identical output.
"""

import numpy as np

from libc.math cimport fabs, sqrt


def jacobi_eigh(double[:, ::1] a, double off_tol, int max_sweeps):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns (eigenvalues unsorted, eigenvector columns, sweeps used).
    Convergence: off-diagonal Frobenius norm <= off_tol * ||A||_F.
    """
    cdef Py_ssize_t n = a.shape[0]
    b_arr = np.array(a, dtype=np.float64, copy=True, order="C")
    v_arr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] b = b_arr
    cdef double[:, ::1] v = v_arr

    cdef double acc = 0.0
    cdef Py_ssize_t p, q, k
    for p in range(n):
        for q in range(n):
            acc += b[p, q] * b[p, q]
    cdef double thresh = off_tol * sqrt(acc)

    cdef int sweeps = 0
    cdef double off, apq, tau, t, c, s, bpk, bqk, bkp, bkq, vkp, vkq
    cdef bint converged = False
    while sweeps < max_sweeps:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += b[p, q] * b[p, q]
        if sqrt(2.0 * off) <= thresh:
            converged = True
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = b[p, q]
                if apq == 0.0:
                    continue
                tau = (b[q, q] - b[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    bpk = b[p, k]
                    bqk = b[q, k]
                    b[p, k] = c * bpk - s * bqk
                    b[q, k] = s * bpk + c * bqk
                for k in range(n):
                    bkp = b[k, p]
                    bkq = b[k, q]
                    b[k, p] = c * bkp - s * bkq
                    b[k, q] = s * bkp + c * bkq
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq

    if not converged:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += b[p, q] * b[p, q]
        if sqrt(2.0 * off) > thresh:
            raise ArithmeticError(
                f"jacobi_eigh did not converge in {max_sweeps} sweeps"
            )

    w = np.empty(n, dtype=np.float64)
    cdef double[::1] wv = w
    for p in range(n):
        wv[p] = b[p, p]
    return w, v_arr, sweeps


def pairdiff_abs_prod(double[:, ::1] pts):
    """Row-wise product of |p_j - p_i| over coordinate pairs i < j."""
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t d = pts.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t r, i, j
    cdef double w
    for r in range(n):
        w = 1.0
        for i in range(d - 1):
            for j in range(i + 1, d):
                w *= fabs(pts[r, j] - pts[r, i])
        ov[r] = w
    return out
