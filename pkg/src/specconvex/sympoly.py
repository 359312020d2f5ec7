"""Symmetric polyhedra, numerical chains, and the eigenvalue membership oracle.

A symmetric polyhedron is a finite intersection of permutation orbits of a
single halfspace <a, x> <= b. Generators are canonicalized to descending
order on construction, which every chain construction below assumes. A
numerical chain is a tuple (I_1, ..., I_d) of subsets of {1..d} with
|I_j| = j; the chain vectors a^I built from a generator give a redundant
but structurally useful inequality description of the same orbit
halfspace.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import majorization, symcore
from .caps import CHAIN_ENUM_CAP
from .errors import CapExceeded, DimensionMismatch


@dataclass(frozen=True)
class OrbitHalfspace:
    """One orbit of inequalities <sigma a, x> <= b; a stored descending."""

    a: np.ndarray
    b: float

    def __post_init__(self):
        a = majorization.sort_desc(self.a)
        if not np.isfinite(a).all() or not np.any(a != 0.0):
            raise ValueError("generator must be finite and nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", float(self.b))

    @property
    def d(self):
        return self.a.size


@dataclass(frozen=True)
class SymmetricPolyhedron:
    """Intersection of M orbit halfspaces in dimension d."""

    d: int
    orbits: tuple = field(default_factory=tuple)

    def __post_init__(self):
        orbits = tuple(self.orbits)
        if not orbits:
            raise ValueError("a symmetric polyhedron needs at least one orbit")
        for idx, orbit in enumerate(orbits):
            if orbit.d != self.d:
                raise DimensionMismatch(
                    f"orbit {idx} has dimension {orbit.d}, expected {self.d}"
                )
        object.__setattr__(self, "orbits", orbits)

    @property
    def n_orbits(self):
        return len(self.orbits)


@dataclass(frozen=True)
class MembershipCertificate:
    """Outcome of a membership test.

    ``margin`` is the smallest slack min_i (b_i - max_sigma <sigma a_i, x>):
    positive strictly inside, negative outside. ``orbit`` is the index
    attaining it (the violated orbit on failure) and ``violation`` its
    positive violation magnitude, 0 when inside.
    """

    inside: bool
    margin: float
    orbit: int
    point: np.ndarray
    eigenvalues: Optional[np.ndarray] = None

    @property
    def violation(self):
        return max(0.0, -self.margin)


def contains_point(P, x, tol=majorization.DEFAULT_TOL):
    """Membership of a point in P with a per-orbit slack certificate."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (P.d,):
        raise DimensionMismatch(f"point has shape {x.shape}, expected ({P.d},)")
    slacks = [h.b - majorization.orbit_inner_max(h.a, x) for h in P.orbits]
    worst = int(np.argmin(slacks))
    margin = float(slacks[worst])
    inside = all(
        margin_i >= -majorization._eff_tol(tol, h.a)
        for margin_i, h in zip(slacks, P.orbits)
    )
    return MembershipCertificate(inside=inside, margin=margin, orbit=worst, point=x)


def spectral_contains(P, A, tol=majorization.DEFAULT_TOL):
    """Membership of a symmetric matrix: eigenvalues of A against P."""
    A = symcore.as_symmetric(A)
    if A.shape[0] != P.d:
        raise DimensionMismatch(
            f"matrix is {A.shape[0]}x{A.shape[0]}, polyhedron is d={P.d}"
        )
    lam = symcore.eigvals(A)
    cert = contains_point(P, lam, tol=tol)
    return MembershipCertificate(
        inside=cert.inside,
        margin=cert.margin,
        orbit=cert.orbit,
        point=cert.point,
        eigenvalues=lam,
    )


def chain_count(d):
    """Number of numerical chains: prod_j C(d, j)."""
    return math.prod(math.comb(d, j) for j in range(1, d + 1))


def numerical_chains(d, cap=CHAIN_ENUM_CAP):
    """Stream all numerical chains (I_1, ..., I_d) in lexicographic order.

    Order: lexicographic in the tuple of subsets under the k_subsets
    ordering, I_1 slowest. Never materializes the full list; refuses
    instances with more than ``cap`` chains.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    total = chain_count(d)
    if total > cap:
        raise CapExceeded(
            f"{total} numerical chains exceed the cap {cap}", declared_size=total
        )
    levels = [symcore.k_subsets(d, j) for j in range(1, d + 1)]
    return itertools.product(*levels)


def chain_vector(a, chain):
    """Chain vector a^I = sum_j (a_j - a_{j+1}) 1_{I_j}, with a_{d+1} = 0.

    Evaluated per coordinate by telescoping over maximal runs of
    consecutive levels containing it, which is the same sum with fewer
    roundings: a nested chain corresponding to a permutation sigma
    reproduces sigma a bit-exactly. In general a^I is majorized by a.
    """
    a = np.asarray(a, dtype=np.float64)
    d = a.size
    if len(chain) != d:
        raise DimensionMismatch(f"chain has {len(chain)} levels, expected {d}")
    member = np.zeros((d, d), dtype=bool)
    for j, subset in enumerate(chain, start=1):
        if len(subset) != j:
            raise ValueError(f"chain level {j} has size {len(subset)}, expected {j}")
        for i in subset:
            if not 1 <= i <= d:
                raise ValueError(f"chain level {j} contains {i}, outside 1..{d}")
            member[i - 1, j - 1] = True
    a_ext = np.append(a, 0.0)
    out = np.zeros(d)
    for i in range(d):
        j = 0
        while j < d:
            if member[i, j]:
                start = j
                while j < d and member[i, j]:
                    j += 1
                out[i] += a_ext[start] - a_ext[j]
            else:
                j += 1
    return out


def redundant_description(h, cap=CHAIN_ENUM_CAP):
    """All chain inequalities (a^I, b) of an orbit halfspace.

    Cuts out exactly the same set as the d! orbit inequalities: chains
    through permutations reproduce them, and every other chain vector is
    majorized by the generator, hence valid.
    """
    return [(chain_vector(h.a, chain), h.b) for chain in numerical_chains(h.d, cap=cap)]
