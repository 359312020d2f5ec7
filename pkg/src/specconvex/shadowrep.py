"""Projected (shadow) representations and solver-free verification.

The top-k eigenvalue-sum bound s_k(lambda(A)) <= t has a lift with
auxiliaries Z (symmetric) and s: Z PSD, Z - A + sI PSD, and the scalar
t - k s - tr Z >= 0. Feasibility in (Z, s) at fixed (A, t) is equivalent
to the bound: any feasible pair gives t >= ks + tr Z >= s_k(lambda(A)),
and (s = lambda_k, Z = sum_{i<k} (lambda_i - lambda_k) v_i v_i^T)
achieves equality. Chaining these bounds through shared auxiliaries
t_1..t_{d-1} yields small projected representations of spectral sets
given either by orbit hulls of points (V form) or by orbit halfspaces
(H form, assembled by partial summation over the sorted generator).

No SDP solver is bundled: correctness is established by explicit
witnesses checked with :func:`check_assignment`, and problems are
exported for external solvers.
"""

from dataclasses import dataclass

import numpy as np

from . import majorization, probio, symcore
from .errors import DimensionMismatch
from .probio import SdpProblem


@dataclass(frozen=True)
class BtnWitness:
    """Feasible (Z, s) for the top-k sum lift at t = s_k(lambda(A))."""

    Z: np.ndarray
    s: float


@dataclass(frozen=True)
class CheckReport:
    """Outcome of evaluating a problem at a full variable assignment."""

    ok: bool
    block_min_eigs: tuple
    eq_residuals: tuple
    ineq_slacks: tuple

    @property
    def worst(self):
        candidates = list(self.block_min_eigs) + list(self.ineq_slacks)
        candidates += [-abs(r) for r in self.eq_residuals]
        return min(candidates) if candidates else 0.0


def _add_psd_identity(block, order, var, scale=1.0):
    for r in range(order):
        block.add_coeff(var, r, r, scale)


def _add_matrix_coeffs(block, d, names_by_entry, scale):
    """Add scale * A to a block of order d via the entry variables."""
    for (i, j), name in names_by_entry.items():
        block.add_coeff(name, i, j, scale)


def _entry_names(problem, d, prefix="A"):
    return {
        (i, j): f"{prefix}_{i + 1}_{j + 1}" for (i, j) in symcore.upper_indices(d)
    }


def _add_btn_fragment(problem, d, entry_names, t_var, z_prefix, s_var, k):
    """Append the lift blocks for s_k(lambda(A)) <= t_var, 1 < k < d."""
    z_names = {}
    for (i, j) in symcore.upper_indices(d):
        z_names[(i, j)] = problem.add_variable(f"{z_prefix}_{i + 1}_{j + 1}")
    problem.add_variable(s_var)

    z_block = problem.new_block(d)
    _add_matrix_coeffs(z_block, d, z_names, 1.0)

    shift_block = problem.new_block(d)
    _add_matrix_coeffs(shift_block, d, z_names, 1.0)
    _add_matrix_coeffs(shift_block, d, entry_names, -1.0)
    _add_psd_identity(shift_block, d, s_var)

    # t - k s - tr Z >= 0  as  k s + tr Z - t <= 0
    coeffs = {s_var: float(k), t_var: -1.0}
    for i in range(d):
        coeffs[z_names[(i, i)]] = coeffs.get(z_names[(i, i)], 0.0) + 1.0
    problem.add_ineq(coeffs, 0.0)
    return z_names


def btn_lift(d, k):
    """Lift fragment for s_k(lambda(A)) <= t.

    Variables: the entries of A and t, plus (Z, s) when 1 < k < d. Size
    2d + 1 in that case; the k = 1 case is the single block tI - A PSD of
    size d. Feasibility in the auxiliaries at fixed (A, t) is equivalent
    to the top-k bound.
    """
    if not 1 <= k <= d - 1:
        raise ValueError(f"k={k} out of range 1..{d - 1}")
    problem = SdpProblem()
    problem.add_matrix_variables(d)
    entry_names = _entry_names(problem, d)
    t_var = problem.add_variable("t")
    if k == 1:
        block = problem.new_block(d)
        _add_psd_identity(block, d, t_var)
        _add_matrix_coeffs(block, d, entry_names, -1.0)
    else:
        _add_btn_fragment(problem, d, entry_names, t_var, "Z", "s", k)
    problem.metadata = {
        "builder": "btn_lift",
        "d": d,
        "k": k,
        "size": problem.declared_size(),
        "size_formula": "d if k == 1 else 2d + 1",
    }
    problem.validate()
    return problem


def btn_witness(A, k):
    """Equality witness for the top-k lift at t = s_k(lambda(A)).

    s is the k-th largest eigenvalue and Z collects the exceedance of the
    top k - 1 eigenvalues over it, so tr Z + k s = s_k(lambda(A)).
    """
    dec = symcore.eigh(A)
    d = dec.lam.size
    if not 1 <= k <= d - 1:
        raise ValueError(f"k={k} out of range 1..{d - 1}")
    s = float(dec.lam[k - 1])
    Z = np.zeros((d, d))
    for i in range(k - 1):
        v = dec.Q[:, i]
        Z += (dec.lam[i] - s) * np.outer(v, v)
    return BtnWitness(Z=Z, s=s)


def _simplex_and_trace(problem, points, entry_names, d):
    """mu on the simplex, trace tied to p = sum mu_i v_i."""
    M = len(points)
    mu_names = [problem.add_variable(f"mu_{i + 1}") for i in range(M)]
    for name in mu_names:
        problem.add_ineq({name: -1.0}, 0.0)
    problem.add_eq({name: 1.0 for name in mu_names}, 1.0)
    totals = [float(np.sum(v)) for v in points]
    coeffs = {entry_names[(i, i)]: 1.0 for i in range(d)}
    for name, tot in zip(mu_names, totals):
        coeffs[name] = -tot
    problem.add_eq(coeffs, 0.0)
    return mu_names


def build_shadow_vrep(points, d=None):
    """Projected representation from hull points in the descending cone.

    The eigenvalues of A must be majorized by some convex combination
    p = sum mu_i v_i. Since every v_i is descending, the top-k sum of p
    is the linear form sum_i mu_i s_k(v_i); each bound
    s_k(lambda(A)) <= t_k runs through the lift, with t_k pinned to that
    form by a (size-free) equality. Counted size M + 2d^2 - 2d - 2.
    """
    points = [np.asarray(p, dtype=np.float64) for p in points]
    if not points:
        raise ValueError("need at least one point")
    if d is None:
        d = points[0].size
    for idx, p in enumerate(points):
        if p.shape != (d,):
            raise DimensionMismatch(f"point {idx} has shape {p.shape}")
        if not majorization.is_descending(p):
            raise ValueError(f"point {idx} is not sorted descending")
    M = len(points)

    problem = SdpProblem()
    problem.add_matrix_variables(d)
    entry_names = _entry_names(problem, d)
    t_names = [problem.add_variable(f"t_{k}") for k in range(1, d)]
    mu_names = _simplex_and_trace(problem, points, entry_names, d)

    # t_k = sum_i mu_i s_k(v_i)
    psums = [np.cumsum(v) for v in points]
    for k in range(1, d):
        coeffs = {t_names[k - 1]: 1.0}
        for name, ps in zip(mu_names, psums):
            coeffs[name] = -float(ps[k - 1])
        problem.add_eq(coeffs, 0.0)

    top_block = problem.new_block(d)
    _add_psd_identity(top_block, d, t_names[0])
    _add_matrix_coeffs(top_block, d, entry_names, -1.0)
    for k in range(2, d):
        _add_btn_fragment(problem, d, entry_names, t_names[k - 1], f"Z{k}", f"s_{k}", k)

    problem.metadata = {
        "builder": "build_shadow_vrep",
        "d": d,
        "points": M,
        "size": problem.declared_size(),
        "size_formula": "M + 2d^2 - 2d - 2",
    }
    problem.validate()
    assert problem.declared_size() == M + 2 * d * d - 2 * d - 2
    return problem


def build_shadow_hrep(P):
    """Projected representation of the spectral set of a symmetric polyhedron.

    Shared auxiliaries t_1..t_{d-1} bound the top-k eigenvalue sums once;
    each orbit then contributes the single scalar inequality obtained by
    partial summation over its sorted generator:
    sum_{j<d} (a_j - a_{j+1}) t_j + a_d tr A <= b. The summation
    coefficients are nonnegative because generators are canonically
    descending, so the t_j bounds transfer to the orbit inequality.
    Counted size M + 2d^2 - 2d - 2.
    """
    d = P.d
    problem = SdpProblem()
    problem.add_matrix_variables(d)
    entry_names = _entry_names(problem, d)
    t_names = [problem.add_variable(f"t_{k}") for k in range(1, d)]

    top_block = problem.new_block(d)
    _add_psd_identity(top_block, d, t_names[0])
    _add_matrix_coeffs(top_block, d, entry_names, -1.0)
    for k in range(2, d):
        _add_btn_fragment(problem, d, entry_names, t_names[k - 1], f"Z{k}", f"s_{k}", k)

    for h in P.orbits:
        a = h.a
        coeffs = {}
        for j in range(1, d):
            c = float(a[j - 1] - a[j])
            if c != 0.0:
                coeffs[t_names[j - 1]] = coeffs.get(t_names[j - 1], 0.0) + c
        if a[d - 1] != 0.0:
            for i in range(d):
                name = entry_names[(i, i)]
                coeffs[name] = coeffs.get(name, 0.0) + float(a[d - 1])
        problem.add_ineq(coeffs, h.b)

    problem.metadata = {
        "builder": "build_shadow_hrep",
        "d": d,
        "orbits": P.n_orbits,
        "size": problem.declared_size(),
        "size_formula": "M + 2d^2 - 2d - 2",
        "notes": "orbit inequalities assembled from shared top-k bounds by "
        "partial summation over the sorted generator",
    }
    problem.validate()
    assert problem.declared_size() == P.n_orbits + 2 * d * d - 2 * d - 2
    return problem


def check_assignment(problem, assignment, tol=1e-9):
    """Evaluate every constraint of a problem at a full assignment.

    Reports the smallest eigenvalue of each block and the residual of
    every linear row; passes iff all of them clear -tol (equalities in
    absolute value).
    """
    missing = [v.name for v in problem.variables if v.name not in assignment]
    if missing:
        raise KeyError(f"assignment missing variables: {missing}")
    min_eigs = []
    for block in problem.blocks:
        M = probio.block_dense(block, assignment)
        min_eigs.append(float(np.linalg.eigvalsh(M)[0]))
    eq_residuals = [
        probio.row_value(row, assignment) - row.rhs for row in problem.linear_eqs
    ]
    ineq_slacks = [
        row.rhs - probio.row_value(row, assignment) for row in problem.linear_ineqs
    ]
    ok = (
        all(e >= -tol for e in min_eigs)
        and all(s >= -tol for s in ineq_slacks)
        and all(abs(r) <= tol for r in eq_residuals)
    )
    return CheckReport(
        ok=ok,
        block_min_eigs=tuple(min_eigs),
        eq_residuals=tuple(eq_residuals),
        ineq_slacks=tuple(ineq_slacks),
    )


def shadow_witness_assignment(problem, A, mu=None, points=None):
    """Explicit feasible assignment for a shadow problem at a member A.

    For the H form, t_k = s_k(lambda(A)); for the V form (pass mu and
    points) t_k is pinned to the mixture value sum_i mu_i s_k(v_i),
    which dominates s_k(lambda(A)) whenever lambda(A) is majorized by
    the mixture. Auxiliaries come from :func:`btn_witness`.
    """
    A = symcore.as_symmetric(A)
    d = A.shape[0]
    lam = symcore.eigvals(A)
    s_lam = np.cumsum(lam)
    assignment = probio.assignment_from_matrix(problem, A)
    if mu is not None:
        mu = np.asarray(mu, dtype=np.float64)
        for i, value in enumerate(mu):
            assignment[f"mu_{i + 1}"] = float(value)
        psums = np.array([np.cumsum(v) for v in points])
        t_vals = mu @ psums
    else:
        t_vals = s_lam
    for k in range(1, d):
        assignment[f"t_{k}"] = float(t_vals[k - 1])
    for k in range(2, d):
        wit = btn_witness(A, k)
        assignment[f"s_{k}"] = wit.s
        for (i, j) in symcore.upper_indices(d):
            assignment[f"Z{k}_{i + 1}_{j + 1}"] = float(wit.Z[i, j])
    return assignment
