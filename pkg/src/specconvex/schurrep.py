"""Additive compound matrices and exact LMI representations.

The k-th compound L_k(A) acts on the wedge basis indexed by k_subsets: its
eigenvalues are all sums of k eigenvalues of A. Tensoring compounds over
all k and weighting by successive differences of a descending generator
gives a linear map whose eigenvalues run over every chain evaluation
<a^I, lambda(A)>, which is exactly what turns one orbit halfspace into one
linear matrix inequality. The builders emit those inequalities as
:class:`~specconvex.probio.SdpProblem` objects.
"""

import math

import numpy as np

from . import symcore
from .caps import block_order_cap
from .errors import CapExceeded
from .probio import SdpProblem


def compound_order(d, k):
    return math.comb(d, k)


def compound_matrix(A, k):
    """k-th additive compound of a symmetric matrix on the k_subsets basis.

    Entry rules: diagonal (I, I) -> sum of A_ii over I; off-diagonal
    (I, J) with |I and J| = k-1, I\\J = {r}, J\\I = {s} ->
    (-1)^(pos_I(r) + pos_J(s)) * A_rs with 0-based positions inside the
    sorted subsets; all other entries vanish. L_1(A) = A and
    L_d(A) = [tr A].
    """
    A = np.asarray(A, dtype=np.float64)
    d = A.shape[0]
    if not 1 <= k <= d:
        raise ValueError(f"k={k} out of range 1..{d}")
    subsets = symcore.k_subsets(d, k)
    n = len(subsets)
    M = np.zeros((n, n))
    sets = [frozenset(s) for s in subsets]
    for r_idx, I in enumerate(subsets):
        M[r_idx, r_idx] = sum(A[i - 1, i - 1] for i in I)
        for c_idx in range(r_idx + 1, n):
            J = subsets[c_idx]
            inter = sets[r_idx] & sets[c_idx]
            if len(inter) != k - 1:
                continue
            (r,) = sets[r_idx] - inter
            (s,) = sets[c_idx] - inter
            sign = (-1) ** (I.index(r) + J.index(s))
            value = sign * A[r - 1, s - 1]
            M[r_idx, c_idx] = value
            M[c_idx, r_idx] = value
    return M


def schur_functor(A, k, cap=None):
    """Compound matrix with its basis bookkeeping attached."""
    A = np.asarray(A, dtype=np.float64)
    d = A.shape[0]
    if not 1 <= k <= d:
        raise ValueError(f"k={k} out of range 1..{d}")
    cap = block_order_cap() if cap is None else cap
    n = compound_order(d, k)
    if n > cap:
        raise CapExceeded(f"compound order {n} exceeds cap {cap}", block_order=n)
    return CompoundMatrix(d=d, k=k, M=compound_matrix(A, k), subsets=symcore.k_subsets(d, k))


class CompoundMatrix:
    """Compound matrix of order C(d, k) on the ordered k-subset basis."""

    def __init__(self, d, k, M, subsets):
        self.d = d
        self.k = k
        self.M = M
        self.subsets = subsets

    @property
    def order(self):
        return self.M.shape[0]


def sfh_order(d):
    """prod_{j=1}^{d} C(d, j), the order of the tensor-lift matrices."""
    return math.prod(math.comb(d, j) for j in range(1, d + 1))


def sfh(a, A, cap=None):
    """Tensor lift sum_j (a_j - a_{j+1}) I x ... x L_j(A) x ... x I.

    ``a`` must be descending; a_{d+1} := 0. Eigenvalues run over all chain
    evaluations <a^I, lambda(A)>. Factor j carries the j-th compound;
    indices compose row-major left to right (factor 1 most significant).
    """
    a = np.asarray(a, dtype=np.float64)
    A = np.asarray(A, dtype=np.float64)
    d = A.shape[0]
    if a.shape != (d,):
        raise ValueError(f"generator has shape {a.shape}, expected ({d},)")
    cap = block_order_cap() if cap is None else cap
    N = sfh_order(d)
    if N > cap:
        raise CapExceeded(f"tensor-lift order {N} exceeds cap {cap}", block_order=N)
    orders = [compound_order(d, j) for j in range(1, d + 1)]
    out = np.zeros((N, N))
    for j in range(1, d + 1):
        coeff = a[j - 1] - (a[j] if j < d else 0.0)
        if coeff == 0.0:
            continue
        factors = [np.eye(n) for n in orders]
        factors[j - 1] = compound_matrix(A, j)
        term = factors[0]
        for f in factors[1:]:
            term = np.kron(term, f)
        out += coeff * term
    return out


# Per-dimension cache of the tensor-lift structure of each symmetric basis
# matrix: _sfh_basis(d)[var][j] is the triplet list of
# I x ... x L_{j+1}(E_var) x ... x I on the big basis (unscaled).
_SFH_BASIS_CACHE = {}


def _sfh_basis(d):
    cached = _SFH_BASIS_CACHE.get(d)
    if cached is not None:
        return cached
    orders = [compound_order(d, j) for j in range(1, d + 1)]
    strides = [1] * d
    for f in range(d - 2, -1, -1):
        strides[f] = strides[f + 1] * orders[f + 1]

    def others(j):
        # All diagonal index combinations of the identity factors.
        ranges = [range(orders[f]) if f != j else (0,) for f in range(d)]
        out = []
        import itertools

        for combo in itertools.product(*ranges):
            base = sum(combo[f] * strides[f] for f in range(d) if f != j)
            out.append(base)
        return out

    per_var = []
    for (i, j_idx) in symcore.upper_indices(d):
        E = symcore.sym_basis(d, i, j_idx)
        per_j = []
        for j in range(d):
            L = compound_matrix(E, j + 1)
            triplets = []
            nz = np.argwhere(L != 0.0)
            bases = others(j)
            for (r, c) in nz:
                if r > c:
                    continue
                v = L[r, c]
                for base in bases:
                    triplets.append(
                        (base + int(r) * strides[j], base + int(c) * strides[j], float(v))
                    )
            per_j.append(triplets)
        per_var.append(per_j)
    _SFH_BASIS_CACHE[d] = per_var
    return per_var


def build_spectrahedron(P, cap=None):
    """Exact LMI representation of the spectral set of a symmetric polyhedron.

    One block per orbit: b_i I - (tensor lift of a_i applied to A) PSD,
    each of order prod_j C(d, j). Feasibility of the blocks at a concrete
    A is equivalent to the eigenvalue membership test. Refuses instances
    whose block order exceeds the cap, reporting the would-be size.
    """
    d = P.d
    cap = block_order_cap() if cap is None else cap
    N = sfh_order(d)
    M = P.n_orbits
    if N > cap:
        raise CapExceeded(
            f"block order {N} exceeds cap {cap}; representation size would be {M * N}",
            declared_size=M * N,
            block_order=N,
        )
    problem = SdpProblem()
    names = problem.add_matrix_variables(d)
    basis = _sfh_basis(d)
    non_generic = [
        i for i, h in enumerate(P.orbits) if np.unique(h.a).size < d
    ]
    for h in P.orbits:
        a = h.a
        block = problem.new_block(N)
        for r in range(N):
            block.add_const(r, r, h.b)
        coeffs = [a[j] - (a[j + 1] if j + 1 < d else 0.0) for j in range(d)]
        for vidx, name in enumerate(names):
            acc = {}
            for j in range(d):
                cj = coeffs[j]
                if cj == 0.0:
                    continue
                for (r, c, v) in basis[vidx][j]:
                    key = (r, c)
                    acc[key] = acc.get(key, 0.0) + cj * v
            for (r, c), v in acc.items():
                block.add_coeff(name, r, c, -v)
    problem.metadata = {
        "builder": "build_spectrahedron",
        "d": d,
        "orbits": M,
        "size": M * N,
        "size_formula": "M * prod_{i=1}^{d} C(d, i)",
        "lower_bound": M * math.factorial(d),
        "non_generic_orbits": non_generic,
    }
    problem.validate()
    return problem


def permutahedron_lmi(p):
    """LMI for matrices whose eigenvalues lie in the permutahedron of p.

    Constraints: tr A = s_d(p) (equality) and s_k(p) I - L_k(A) PSD for
    k = 1..d-1.
    """
    p = np.asarray(p, dtype=np.float64)
    d = p.size
    sp = np.cumsum(np.sort(p)[::-1])
    problem = SdpProblem()
    names = problem.add_matrix_variables(d)
    entry_pos = {idx: name for idx, name in zip(symcore.upper_indices(d), names)}
    for k in range(1, d):
        n = compound_order(d, k)
        block = problem.new_block(n)
        for r in range(n):
            block.add_const(r, r, float(sp[k - 1]))
        for (i, j), name in entry_pos.items():
            L = compound_matrix(symcore.sym_basis(d, i, j), k)
            for (r, c) in zip(*np.nonzero(L)):
                if r > c:
                    continue
                block.add_coeff(name, int(r), int(c), -float(L[r, c]))
    problem.add_eq({entry_pos[(i, i)]: 1.0 for i in range(d)}, float(sp[-1]))
    problem.metadata = {
        "builder": "permutahedron_lmi",
        "d": d,
        "size": sum(compound_order(d, k) for k in range(1, d)),
        "size_formula": "sum_{k=1}^{d-1} C(d, k)",
    }
    problem.validate()
    return problem


def adjugate_functor_d2(a, A):
    """Linear 2x2 functor a_1 A + a_2 adj(A).

    Its eigenvalues are <sigma a, lambda(A)> for both permutations; no
    analogue is constructed here for d >= 3.
    """
    A = np.asarray(A, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    if A.shape != (2, 2) or a.shape != (2,):
        raise ValueError("adjugate functor is defined for d = 2 only")
    adj = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]])
    return a[0] * A + a[1] * adj


def representation_sizes(P):
    """(upper, lower) sizes: M prod C(d, i) and the generic bound M d!."""
    d = P.d
    M = P.n_orbits
    return M * sfh_order(d), M * math.factorial(d)
