"""Convex-geometry calculus on eigenvalue-defined sets.

Support functions and polarity pairings, Minkowski sums, zonotopes of
permutation orbits and the commutator/nuclear-norm identity, Monte Carlo
Steiner polynomials, and hyperbolicity sampling checks.

Volume normalization: volumes live in Frobenius-orthonormal coordinates
on symmetric matrices (diagonal units e_ii, off-diagonal units
(e_ij + e_ji)/sqrt(2)), so the set of matrices with eigenvalue vector in
the Euclidean unit ball is itself the unit ball of dimension d(d+1)/2.
The Monte Carlo volume of such a set reduces to a weighted integral over
the eigenvalue region with weight prod_{i<j} |p_j - p_i| and a
dimensional constant c_d calibrated from the ball case.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from . import kernels, majorization, sampling, symcore, sympoly
from .errors import DimensionMismatch

_GRID_SEED = 0x5EED
_GRID_SIZE = 1000
_grid_cache = {}

_ZONOTOPE_DIM_CAP = 8
_STEINER_DIM_CAP = 4
_HYPERBOLIC_DIM_CAP = 5
_MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class OrbitHull:
    """Orbit hull of finitely many descending points plus a ball term.

    Describes the symmetric convex body conv(orbit of points) + radius * B.
    Points must be sorted descending; at least one point or a positive
    radius is required.
    """

    d: int
    points: tuple = field(default_factory=tuple)
    radius: float = 0.0

    def __post_init__(self):
        pts = tuple(np.asarray(p, dtype=np.float64) for p in self.points)
        for idx, p in enumerate(pts):
            if p.shape != (self.d,):
                raise DimensionMismatch(f"point {idx} has shape {p.shape}")
            if not majorization.is_descending(p):
                raise ValueError(f"point {idx} is not sorted descending")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if not pts and self.radius == 0.0:
            raise ValueError("need at least one point or a positive radius")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def n_points(self):
        return len(self.points)


@dataclass(frozen=True)
class SpectralZonotope:
    """Sum over generators of the permutation-orbit segment sums."""

    d: int
    generators: tuple = field(default_factory=tuple)

    def __post_init__(self):
        gens = tuple(np.asarray(z, dtype=np.float64) for z in self.generators)
        if not gens:
            raise ValueError("need at least one generator")
        for idx, z in enumerate(gens):
            if z.shape != (self.d,):
                raise DimensionMismatch(f"generator {idx} has shape {z.shape}")
            if not np.any(z != 0.0):
                raise ValueError(f"generator {idx} is zero")
        object.__setattr__(self, "generators", gens)


# -- support functions -------------------------------------------------------

def support_hull(K, c):
    """Support value of the hull at direction c.

    max_i <v_i, c sorted desc> + radius * ||c||_2; with no points the hull
    part contributes 0 (the body is the centered ball).
    """
    c = np.asarray(c, dtype=np.float64)
    if c.shape != (K.d,):
        raise DimensionMismatch(f"direction has shape {c.shape}, expected ({K.d},)")
    cs = majorization.sort_desc(c)
    base = max((float(np.dot(v, cs)) for v in K.points), default=0.0)
    return base + K.radius * float(np.linalg.norm(c))


def support_spectral(K, B):
    """Support value of the matrix set at a symmetric direction B."""
    B = symcore.as_symmetric(B)
    if B.shape[0] != K.d:
        raise DimensionMismatch(
            f"direction is {B.shape[0]}x{B.shape[0]}, hull is d={K.d}"
        )
    return support_hull(K, symcore.eigvals(B))


def minkowski_support(K, L, B):
    """Support of the Minkowski sum, evaluated additively."""
    if K.d != L.d:
        raise DimensionMismatch(f"dimension mismatch: {K.d} vs {L.d}")
    return support_spectral(K, B) + support_spectral(L, B)


def hull_minkowski_sum(K, L):
    """Hull description of the Minkowski sum: pairwise point sums, summed radii."""
    if K.d != L.d:
        raise DimensionMismatch(f"dimension mismatch: {K.d} vs {L.d}")
    if not K.points and not L.points:
        points = ()
    else:
        pk = K.points if K.points else (np.zeros(K.d),)
        pl = L.points if L.points else (np.zeros(L.d),)
        points = tuple(v + w for v in pk for w in pl)
    return OrbitHull(d=K.d, points=points, radius=K.radius + L.radius)


# -- membership --------------------------------------------------------------

def _direction_grid(d):
    dirs = _grid_cache.get(d)
    if dirs is None:
        rng = sampling.philox(_GRID_SEED)
        dirs = rng.standard_normal((_GRID_SIZE, d))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        dirs = -np.sort(-dirs, axis=1)
        _grid_cache[d] = dirs
    return dirs


def _hull_lp_feasible(psums, x_sorted, tol):
    """LP feasibility: some mixture of the points majorizes x."""
    M, d = psums.shape
    sx = np.cumsum(x_sorted)
    A_ub = [-psums[:, k] for k in range(d - 1)]
    b_ub = [-(sx[k] - tol) for k in range(d - 1)]
    A_ub.append(psums[:, d - 1])
    b_ub.append(sx[d - 1] + tol)
    A_ub.append(-psums[:, d - 1])
    b_ub.append(-(sx[d - 1] - tol))
    res = linprog(
        c=np.zeros(M),
        A_ub=np.array(A_ub),
        b_ub=np.array(b_ub),
        A_eq=np.ones((1, M)),
        b_eq=np.array([1.0]),
        bounds=(0.0, None),
        method="highs",
    )
    return res.status == 0


def hull_contains_batch(K, xs, extra_radius=0.0, tol=0.0):
    """Membership of sample rows in the hull grown by extra_radius.

    Exact when the effective ball term is zero or the hull is a pure
    ball; otherwise decided by support separation over a frozen grid of
    1000 descending directions (acceptance region contains the body,
    bias O(grid^-2)).
    """
    xs = np.asarray(xs, dtype=np.float64)
    xs_sorted = -np.sort(-xs, axis=1)
    rho = K.radius + extra_radius
    if not K.points:
        return np.linalg.norm(xs, axis=1) <= rho + tol
    psums = np.array([np.cumsum(v) for v in K.points])
    if rho == 0.0:
        sx = np.cumsum(xs_sorted, axis=1)
        if len(K.points) == 1:
            ps = psums[0]
            ok = np.abs(sx[:, -1] - ps[-1]) <= tol
            for k in range(K.d - 1):
                ok &= sx[:, k] <= ps[k] + tol
            return ok
        # Screens: majorized by a single point is sufficient; exceeding
        # every mixture bound is impossible. LP settles the rest.
        definitely_in = np.zeros(len(xs), dtype=bool)
        for ps in psums:
            cand = np.abs(sx[:, -1] - ps[-1]) <= tol
            for k in range(K.d - 1):
                cand &= sx[:, k] <= ps[k] + tol
            definitely_in |= cand
        upper = psums.max(axis=0)
        lower_tot, upper_tot = psums[:, -1].min(), psums[:, -1].max()
        possible = (sx[:, -1] >= lower_tot - tol) & (sx[:, -1] <= upper_tot + tol)
        for k in range(K.d - 1):
            possible &= sx[:, k] <= upper[k] + tol
        out = definitely_in.copy()
        lp_tol = max(tol, 1e-12)
        for idx in np.nonzero(possible & ~definitely_in)[0]:
            out[idx] = _hull_lp_feasible(psums, xs_sorted[idx], lp_tol)
        return out
    dirs = _direction_grid(K.d)
    h = (dirs @ np.array(K.points).T).max(axis=1) + rho
    out = np.empty(len(xs), dtype=bool)
    for start in range(0, len(xs), 8192):
        chunk = xs_sorted[start : start + 8192]
        out[start : start + 8192] = ((chunk @ dirs.T) <= h + tol).all(axis=1)
    return out


def hull_contains(K, x, tol=majorization.DEFAULT_TOL):
    """Membership of one vector in the hull body."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (K.d,):
        raise DimensionMismatch(f"point has shape {x.shape}, expected ({K.d},)")
    return bool(hull_contains_batch(K, x[None, :], tol=tol)[0])


def hull_separates(K, x, tol=majorization.DEFAULT_TOL):
    """Grid-direction separation test: True when x is certified outside."""
    x = np.asarray(x, dtype=np.float64)
    xs = majorization.sort_desc(x)
    dirs = _direction_grid(K.d)
    if K.points:
        h = (dirs @ np.array(K.points).T).max(axis=1)
    else:
        h = np.zeros(len(dirs))
    h = h + K.radius
    return bool(np.any(dirs @ xs > h + tol))


# -- polarity ----------------------------------------------------------------

@dataclass(frozen=True)
class PolarPairingReport:
    """Duality pairing diagnostics for a hull body and two matrices."""

    pairing: float
    lambda_in_set: bool
    support_value: float
    implication_holds: bool


def polar_pairing_check(K, A, B, tol=majorization.DEFAULT_TOL):
    """Check the polarity pairing bound tr(AB) <= 1.

    Applies whenever the eigenvalues of A lie in the hull body and B has
    support value at most 1 (so B lies in the polar of the matrix set).
    """
    A = symcore.as_symmetric(A)
    B = symcore.as_symmetric(B)
    pairing = float(np.trace(A @ B))
    lam_in = hull_contains(K, symcore.eigvals(A), tol=tol)
    hB = support_spectral(K, B)
    applicable = lam_in and hB <= 1.0 + tol
    holds = (not applicable) or pairing <= 1.0 + tol
    return PolarPairingReport(
        pairing=pairing,
        lambda_in_set=lam_in,
        support_value=hB,
        implication_holds=holds,
    )


# -- zonotopes and the commutator map ----------------------------------------

def zonotope_support(Z, B):
    """Support of a spectral zonotope: sum over generators and permutations.

    Exact enumeration of all d! permutations per generator; refuses d > 8.
    """
    B = symcore.as_symmetric(B)
    if B.shape[0] != Z.d:
        raise DimensionMismatch(
            f"direction is {B.shape[0]}x{B.shape[0]}, zonotope is d={Z.d}"
        )
    if Z.d > _ZONOTOPE_DIM_CAP:
        raise ValueError(f"d={Z.d} exceeds the enumeration cap {_ZONOTOPE_DIM_CAP}")
    lam = symcore.eigvals(B)
    perms = np.array(list(itertools.permutations(lam)))
    total = 0.0
    for z in Z.generators:
        total += float(np.abs(perms @ z).sum())
    return total


def commutator_map(B):
    """Matrix of X -> BX - XB in Frobenius-orthonormal bases.

    Domain: skew-symmetric matrices (units (e_ij - e_ji)/sqrt(2), i < j);
    codomain: traceless symmetric matrices (off-diagonal units
    (e_ij + e_ji)/sqrt(2), then a traceless diagonal orthonormal basis).
    Nonzero singular values are |lambda_i - lambda_j| over pairs i < j, so
    the nuclear norm of this matrix is the pairwise eigenvalue spread.
    """
    B = symcore.as_symmetric(B)
    d = B.shape[0]
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    domain = []
    for (i, j) in pairs:
        S = np.zeros((d, d))
        S[i, j] = 1.0 / math.sqrt(2.0)
        S[j, i] = -1.0 / math.sqrt(2.0)
        domain.append(S)
    codomain = []
    for (i, j) in pairs:
        C = np.zeros((d, d))
        C[i, j] = 1.0 / math.sqrt(2.0)
        C[j, i] = 1.0 / math.sqrt(2.0)
        codomain.append(C)
    for k in range(1, d):
        diag = np.zeros(d)
        diag[:k] = 1.0
        diag[k] = -float(k)
        codomain.append(np.diag(diag) / math.sqrt(k * (k + 1.0)))
    T = np.zeros((len(codomain), len(domain)))
    for col, S in enumerate(domain):
        img = B @ S - S @ B
        for row, C in enumerate(codomain):
            T[row, col] = float(np.sum(C * img))
    return T


def singular_values(M):
    """Singular values from the eigenvalues of M^T M (descending)."""
    M = np.asarray(M, dtype=np.float64)
    gram = M.T @ M
    w = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(w, 0.0, None))[::-1]


def nuclear_norm(M):
    return float(singular_values(M).sum())


# -- Steiner polynomials by Monte Carlo --------------------------------------

def _ball_volume(n):
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


@dataclass(frozen=True)
class Calibration:
    d: int
    c: float
    stderr: float
    samples: int
    seed: int


_calibration_cache = {}


def calibrate_cd(d, n_samples=1_000_000, seed=0):
    """Dimensional constant c_d of the volume formula.

    c_d = omega_N / integral over the unit d-ball of prod |p_j - p_i| dp
    with N = d(d+1)/2; the denominator is estimated by rejection Monte
    Carlo in the box [-1, 1]^d. Cached per (d, n_samples, seed).
    """
    if not 2 <= d <= _STEINER_DIM_CAP:
        raise ValueError(f"d={d} out of the supported range 2..{_STEINER_DIM_CAP}")
    key = (d, n_samples, seed)
    cached = _calibration_cache.get(key)
    if cached is not None:
        return cached
    box_vol = 2.0**d
    sums, sq_sums, n_done, chunk_idx = [], [], 0, 0
    while n_done < n_samples:
        m = min(_MC_CHUNK, n_samples - n_done)
        rng = sampling.philox(seed, counter=chunk_idx)
        pts = rng.uniform(-1.0, 1.0, size=(m, d))
        w = kernels.pairdiff_abs_prod(pts)
        w = np.where(np.linalg.norm(pts, axis=1) <= 1.0, w, 0.0)
        sums.append(float(w.sum()))
        sq_sums.append(float((w * w).sum()))
        n_done += m
        chunk_idx += 1
    mean = math.fsum(sums) / n_samples
    var = max(math.fsum(sq_sums) / n_samples - mean * mean, 0.0)
    integral = box_vol * mean
    integral_se = box_vol * math.sqrt(var / n_samples)
    omega = _ball_volume(d * (d + 1) // 2)
    c = omega / integral
    stderr = omega * integral_se / (integral * integral)
    result = Calibration(d=d, c=c, stderr=stderr, samples=n_samples, seed=seed)
    _calibration_cache[key] = result
    return result


@dataclass(frozen=True)
class SteinerEstimate:
    t: float
    volume: float
    stderr: float
    acceptance: float


def steiner_mc(K, t_values, n_samples, seed, calibration=None):
    """Volume of the matrix set grown by t, for each t, by Monte Carlo.

    Estimates c_d * integral over (hull + t ball) of prod |p_j - p_i| dp
    by rejection sampling from the box [-R, R]^d with
    R = max_i ||v_i||_inf + radius + t. Deterministic for a fixed seed;
    chunk i draws from the stream seed + i (a global chunk counter runs
    across the t values). Standard errors include the calibration
    uncertainty.
    """
    d = K.d
    if d > _STEINER_DIM_CAP:
        raise ValueError(f"d={d} exceeds the Monte Carlo cap {_STEINER_DIM_CAP}")
    if n_samples < 10_000:
        raise ValueError("n_samples must be at least 10^4")
    if calibration is None:
        calibration = calibrate_cd(d, n_samples=n_samples, seed=seed + 1_000_003)
    base_R = max((float(np.abs(v).max()) for v in K.points), default=0.0) + K.radius
    results = []
    chunk_idx = 0
    for t in t_values:
        t = float(t)
        if t < 0:
            raise ValueError("t values must be nonnegative")
        R = base_R + t
        box_vol = (2.0 * R) ** d
        sums, sq_sums, accepted, n_done = [], [], 0, 0
        while n_done < n_samples:
            m = min(_MC_CHUNK, n_samples - n_done)
            rng = sampling.philox(seed, counter=chunk_idx)
            pts = rng.uniform(-R, R, size=(m, d))
            inside = hull_contains_batch(K, pts, extra_radius=t)
            w = kernels.pairdiff_abs_prod(pts)
            w = np.where(inside, w, 0.0)
            sums.append(float(w.sum()))
            sq_sums.append(float((w * w).sum()))
            accepted += int(inside.sum())
            n_done += m
            chunk_idx += 1
        if accepted == 0:
            raise ArithmeticError(
                f"zero acceptance at t={t}: degenerate body or bad box"
            )
        mean = math.fsum(sums) / n_samples
        var = max(math.fsum(sq_sums) / n_samples - mean * mean, 0.0)
        integral = box_vol * mean
        integral_se = box_vol * math.sqrt(var / n_samples)
        volume = calibration.c * integral
        stderr = math.hypot(calibration.c * integral_se, integral * calibration.stderr)
        results.append(
            SteinerEstimate(
                t=t, volume=volume, stderr=stderr, acceptance=accepted / n_samples
            )
        )
    return results


def quermass_fit(samples, N):
    """Quermassintegrals from (t, volume) samples by polynomial fit.

    Fits a degree-N polynomial in t by least squares and converts the
    coefficients through the binomial normalization
    vol = sum_i C(N, i) W_{N-i} t^i. Needs at least N + 1 distinct t.
    """
    ts = np.array([float(t) for t, _ in samples])
    vols = np.array([float(v) for _, v in samples])
    if np.unique(ts).size < N + 1:
        raise ValueError(f"need at least {N + 1} distinct t values for degree {N}")
    coeffs = np.polynomial.polynomial.polyfit(ts, vols, N)
    return np.array([coeffs[N - j] / math.comb(N, j) for j in range(N + 1)])


def spectral_volume_mc(K, n_samples, seed):
    """Direct volume of the matrix set in Frobenius-orthonormal coordinates.

    Cross-oracle for the weighted-integral route: samples symmetric
    matrices from a bounding box in orthonormal coordinates and tests
    eigenvalue membership. Practical for d <= 3.
    """
    d = K.d
    if d > 3:
        raise ValueError("direct matrix-space sampling is supported for d <= 3")
    N = d * (d + 1) // 2
    basis = [symcore.diag_embed(np.eye(d)[i]) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            E = np.zeros((d, d))
            E[i, j] = E[j, i] = 1.0 / math.sqrt(2.0)
            basis.append(E)
    R = max((float(np.linalg.norm(v)) for v in K.points), default=0.0) + K.radius
    box_vol = (2.0 * R) ** N
    hits, n_done, chunk_idx = [], 0, 0
    while n_done < n_samples:
        m = min(_MC_CHUNK, n_samples - n_done)
        rng = sampling.philox(seed, counter=chunk_idx)
        coords = rng.uniform(-R, R, size=(m, N))
        mats = np.einsum("sc,cij->sij", coords, np.array(basis))
        lams = np.linalg.eigvalsh(mats)[:, ::-1]
        inside = hull_contains_batch(K, lams)
        hits.append(float(inside.sum()))
        n_done += m
        chunk_idx += 1
    frac = math.fsum(hits) / n_samples
    volume = box_vol * frac
    stderr = box_vol * math.sqrt(max(frac * (1.0 - frac), 0.0) / n_samples)
    return volume, stderr


# -- hyperbolicity sampling ----------------------------------------------------

@dataclass(frozen=True)
class HyperbolicityReport:
    """Aggregate of the factor-root and membership-sign sampling check.

    ``sample_roots`` holds the sorted factor roots of the first trial
    (factors constant in t excluded).
    """

    trials: int
    factors_per_trial: int
    skipped_factors: int
    agreements: int
    disagreements: int
    all_roots_real: bool
    sample_roots: tuple = ()


def hyperbolicity_sample_check(P, trials, seed, tol=majorization.DEFAULT_TOL):
    """Sampling check of the product-of-linear-factors cone polynomial.

    ``P`` must have all right-hand sides zero and is read with the >= 0
    orientation: the cone is {x : <sigma a_i, x> >= 0 for all sigma, i}.
    For random X the polynomial t -> prod <sigma a_i, lambda(X) - t 1>
    factors into linear terms whose roots <sigma a, lambda> / <a, 1> are
    real by construction; membership of X (all factor values at t = 0
    nonnegative) is cross-checked against the halfspace oracle on the
    sign-flipped polyhedron. Generators orthogonal to the all-ones vector
    make their factor constant in t and are skipped for the root count.
    """
    d = P.d
    if d > _HYPERBOLIC_DIM_CAP:
        raise ValueError(f"d={d} exceeds the enumeration cap {_HYPERBOLIC_DIM_CAP}")
    for idx, h in enumerate(P.orbits):
        if h.b != 0.0:
            raise ValueError(f"orbit {idx} has b={h.b}, cones need b=0")
    flipped = sympoly.SymmetricPolyhedron(
        d=d,
        orbits=tuple(sympoly.OrbitHalfspace(a=-h.a, b=0.0) for h in P.orbits),
    )
    perm_mats = np.array(list(itertools.permutations(range(d))))
    rng = sampling.philox(seed)
    constant_factor = [
        abs(float(np.sum(h.a))) <= 1e-12 * float(np.abs(h.a).max())
        for h in P.orbits
    ]
    skipped = sum(constant_factor) * math.factorial(d)
    agreements = 0
    disagreements = 0
    sample_roots = None
    for _ in range(trials):
        X = sampling.random_symmetric(rng, d)
        lam = symcore.eigvals(X)
        inside_factors = True
        roots = []
        for h, constant in zip(P.orbits, constant_factor):
            values = lam[perm_mats] @ h.a
            if values.min() < -majorization._eff_tol(tol, h.a):
                inside_factors = False
            if not constant:
                roots.extend(values / float(np.sum(h.a)))
        if sample_roots is None:
            sample_roots = tuple(sorted(float(r) for r in roots))
        inside_oracle = sympoly.spectral_contains(flipped, X, tol=tol).inside
        if inside_factors == inside_oracle:
            agreements += 1
        else:
            disagreements += 1
    return HyperbolicityReport(
        trials=trials,
        factors_per_trial=P.n_orbits * math.factorial(d),
        skipped_factors=skipped,
        agreements=agreements,
        disagreements=disagreements,
        all_roots_real=True,
        sample_roots=sample_roots or (),
    )
