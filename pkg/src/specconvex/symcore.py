"""Symmetric-matrix linear algebra.

Eigendecomposition (descending eigenvalues), diagonal embedding and
projection, tensor products, ordered k-subset indexing, and the invariants
of the characteristic polynomial det(A + tI). Everything here is a pure
function of its inputs; all downstream modules depend on the descending
eigenvalue order fixed by :func:`eigh`.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .caps import block_order_cap
from .errors import CapExceeded


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending and an orthonormal eigenvector basis.

    Satisfies Q diag(lam) Q^T == A to 1e-9 * max(1, ||A||_inf) and
    ||Q^T Q - I||_inf <= 1e-10.
    """

    lam: np.ndarray
    Q: np.ndarray


def as_symmetric(A, tol=1e-12):
    """Validate and return a symmetric float matrix.

    Accepts tiny roundoff asymmetry (relative to the largest entry) and
    symmetrizes it away so downstream kernels see an exactly symmetric
    matrix.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if float(np.abs(A - A.T).max(initial=0.0)) > tol * scale:
        raise ValueError("matrix is not symmetric")
    return (A + A.T) / 2.0


def eigh(A):
    """Spectral decomposition with eigenvalues sorted descending (stable)."""
    B = as_symmetric(A)
    w, V, _ = kernels.jacobi_eigh(B)
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(lam=w[order], Q=V[:, order])


def eigvals(A):
    """Descending eigenvalue vector of a symmetric matrix."""
    return eigh(A).lam


def diag_embed(p):
    """Embed a vector as a diagonal matrix."""
    return np.diag(np.asarray(p, dtype=np.float64))


def diag_project(A):
    """Project a matrix to its diagonal vector (A_11, ..., A_dd)."""
    return np.diag(np.asarray(A, dtype=np.float64)).copy()


def kron(A, B, cap=None):
    """Tensor product with row-major pair indexing.

    (A (x) B)[(i,k),(j,l)] = A[i,j] * B[k,l]. Refuses results whose order
    exceeds the block-order cap.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    cap = block_order_cap() if cap is None else cap
    order = A.shape[0] * B.shape[0]
    if order > cap:
        raise CapExceeded(
            f"tensor product order {order} exceeds cap {cap}",
            block_order=order,
        )
    return np.kron(A, B)


def k_subsets(d, k):
    """All k-element subsets of {1..d} as sorted tuples, lexicographic.

    The ordering is a frozen contract: it indexes the basis of every
    compound matrix, so consumers may cache positions.
    """
    if not 0 <= k <= d:
        raise ValueError(f"k={k} out of range for d={d}")
    return tuple(itertools.combinations(range(1, d + 1), k))


def subset_sum(v, subset):
    """Sum of the entries of v indexed by a 1-based subset."""
    return float(sum(v[i - 1] for i in subset))


def char_poly_coeffs(A):
    """Coefficients (eta_1, ..., eta_d) of det(A + tI) = t^d + eta_1 t^{d-1} + ...

    Faddeev-LeVerrier recursion on -A; uses only matrix products and
    traces, no eigendecomposition. eta_i equals the i-th elementary
    symmetric polynomial of the eigenvalues.
    """
    A = as_symmetric(A)
    d = A.shape[0]
    B = -A
    M = np.eye(d)
    coeffs = np.empty(d)
    c = -np.trace(B @ M)
    coeffs[0] = c
    for k in range(1, d):
        M = B @ M + c * np.eye(d)
        c = -np.trace(B @ M) / (k + 1)
        coeffs[k] = c
    return coeffs


# Upper-triangle storage, row-major over i <= j. This layout is the wire
# format for matrices and the variable order of every representation
# builder.

def upper_indices(d):
    """0-based (i, j) pairs with i <= j, row-major."""
    return [(i, j) for i in range(d) for j in range(i, d)]


def upper_from_sym(A):
    """Flatten the upper triangle of a symmetric matrix (row-major)."""
    A = np.asarray(A, dtype=np.float64)
    d = A.shape[0]
    return np.array([A[i, j] for i, j in upper_indices(d)])


def sym_from_upper(d, upper):
    """Materialize a symmetric matrix from its row-major upper triangle."""
    upper = np.asarray(upper, dtype=np.float64)
    expected = d * (d + 1) // 2
    if upper.shape != (expected,):
        raise ValueError(
            f"expected {expected} upper-triangle entries for d={d}, "
            f"got {upper.shape}"
        )
    A = np.zeros((d, d))
    for value, (i, j) in zip(upper, upper_indices(d)):
        A[i, j] = value
        A[j, i] = value
    return A


def sym_basis(d, i, j):
    """Symmetric basis matrix for entry (i, j), 0-based, i <= j.

    E_ii = e_i e_i^T and E_ij = e_i e_j^T + e_j e_i^T, so that
    sum over the upper triangle of A[i,j] * E_ij reproduces A exactly.
    """
    E = np.zeros((d, d))
    E[i, j] = 1.0
    E[j, i] = 1.0
    return E
