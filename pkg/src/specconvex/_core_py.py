"""Pure-Python kernel twins.

These mirror the compiled kernels in ``_core.pyx`` operation for operation:
same sweep order, same rotation formulas, same accumulation order, so both
backends return bit-identical results. Keep the two files in sync.
"""

import math

import numpy as np


def jacobi_eigh(a, off_tol, max_sweeps):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns (eigenvalues unsorted, eigenvector columns, sweeps used).
    Convergence: off-diagonal Frobenius norm <= off_tol * ||A||_F.
    """
    n = a.shape[0]
    b = [list(map(float, row)) for row in a]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]

    acc = 0.0
    for p in range(n):
        for q in range(n):
            acc += b[p][q] * b[p][q]
    thresh = off_tol * math.sqrt(acc)

    sweeps = 0
    while sweeps < max_sweeps:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += b[p][q] * b[p][q]
        if math.sqrt(2.0 * off) <= thresh:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = b[p][q]
                if apq == 0.0:
                    continue
                tau = (b[q][q] - b[p][p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                bp = b[p]
                bq = b[q]
                for k in range(n):
                    bpk = bp[k]
                    bqk = bq[k]
                    bp[k] = c * bpk - s * bqk
                    bq[k] = s * bpk + c * bqk
                for k in range(n):
                    bk = b[k]
                    bkp = bk[p]
                    bkq = bk[q]
                    bk[p] = c * bkp - s * bkq
                    bk[q] = s * bkp + c * bkq
                for k in range(n):
                    vk = v[k]
                    vkp = vk[p]
                    vkq = vk[q]
                    vk[p] = c * vkp - s * vkq
                    vk[q] = s * vkp + c * vkq
    else:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += b[p][q] * b[p][q]
        if math.sqrt(2.0 * off) > thresh:
            raise ArithmeticError(
                f"jacobi_eigh did not converge in {max_sweeps} sweeps"
            )

    w = np.array([b[i][i] for i in range(n)], dtype=np.float64)
    return w, np.array(v, dtype=np.float64), sweeps


def pairdiff_abs_prod(pts):
    """Row-wise product of |p_j - p_i| over coordinate pairs i < j.

    Same pair order as the compiled kernel (i outer, j inner), applied as
    vector operations, so the per-element multiplication sequence matches.
    """
    n, d = pts.shape
    out = np.ones(n, dtype=np.float64)
    for i in range(d - 1):
        for j in range(i + 1, d):
            out *= np.abs(pts[:, j] - pts[:, i])
    return out
