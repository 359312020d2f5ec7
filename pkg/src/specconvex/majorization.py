"""Partial sums, the majorization order, and orbit-halfspace membership.

The rearrangement identity max over permutations of <sigma a, x> equals
<a sorted desc, x sorted desc> reduces every orbit-inequality test to one
sort, which is what makes symmetric-polyhedron membership cheap.
"""

import numpy as np

from .errors import DimensionMismatch

DEFAULT_TOL = 1e-9


def _eff_tol(tol, ref):
    """Absolute tolerance scaled by max(1, ||ref||_inf)."""
    ref = np.asarray(ref, dtype=np.float64)
    return tol * max(1.0, float(np.abs(ref).max(initial=0.0)))


def sort_desc(v):
    """Descending stable sort of a vector."""
    v = np.asarray(v, dtype=np.float64)
    return -np.sort(-v, kind="stable")


def is_descending(v, tol=0.0):
    v = np.asarray(v, dtype=np.float64)
    return bool(np.all(v[:-1] >= v[1:] - tol))


def top_k_sum(p, k):
    """s_k(p): the sum of the k largest entries of p."""
    p = np.asarray(p, dtype=np.float64)
    if not 1 <= k <= p.size:
        raise ValueError(f"k={k} out of range 1..{p.size}")
    return float(np.sort(p)[::-1][:k].sum())


def partial_sums_desc(p):
    """Vector (s_1(p), ..., s_d(p)) of all top-k sums."""
    p = np.asarray(p, dtype=np.float64)
    return np.cumsum(np.sort(p)[::-1])


def majorizes(p, q, tol=DEFAULT_TOL):
    """True iff q is majorized by p: equal totals and s_k(q) <= s_k(p)."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise DimensionMismatch(f"lengths differ: {p.size} vs {q.size}")
    eff = _eff_tol(tol, p)
    sp = partial_sums_desc(p)
    sq = partial_sums_desc(q)
    if abs(sp[-1] - sq[-1]) > eff:
        return False
    return bool(np.all(sq[:-1] <= sp[:-1] + eff))


def permutahedron_contains(p, q, tol=DEFAULT_TOL):
    """Membership of q in the permutahedron of p (all permutations' hull)."""
    return majorizes(p, q, tol=tol)


def orbit_inner_max(a, x):
    """max over permutations sigma of <sigma a, x> = <a desc, x desc>."""
    a = np.asarray(a, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if a.shape != x.shape:
        raise DimensionMismatch(f"lengths differ: {a.size} vs {x.size}")
    return float(np.dot(sort_desc(a), sort_desc(x)))


def orbit_halfspace_contains(a, b, x, tol=DEFAULT_TOL):
    """Membership of x in {y : <sigma a, y> <= b for all permutations}."""
    return orbit_inner_max(a, x) <= b + _eff_tol(tol, a)
