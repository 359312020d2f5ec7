"""Oracle-equivalence verification suites.

Each suite runs a seeded batch of randomized cross-checks between a
construction and an independent oracle for it (brute-force enumeration,
explicit witnesses, analytic values) and reports trial/failure counts.
Reports are deterministic functions of (suites, trials, seed, tol).
"""

import itertools
import math

import numpy as np

from . import (
    kernels,
    majorization,
    probio,
    sampling,
    schurrep,
    shadowrep,
    specgeo,
    symcore,
    sympoly,
)


def _suite_eig(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    worst = 0.0
    for _ in range(trials):
        d = int(rng.integers(1, 7))
        A = sampling.random_symmetric(rng, d, scale=float(rng.uniform(0.5, 3.0)))
        dec = symcore.eigh(A)
        scale = max(1.0, float(np.abs(A).max()))
        resid = float(np.abs(dec.Q @ np.diag(dec.lam) @ dec.Q.T - A).max()) / scale
        orth = float(np.abs(dec.Q.T @ dec.Q - np.eye(d)).max())
        worst = max(worst, resid, orth)
        if resid > 1e-9 or orth > 1e-10 or not majorization.is_descending(dec.lam):
            failures += 1
    return {"trials": trials, "failures": failures, "worst_residual": worst}


def _suite_majorization(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    for _ in range(trials):
        d = int(rng.integers(2, 6))
        a = rng.standard_normal(d)
        x = rng.standard_normal(d)
        brute = max(
            float(np.dot(np.array(p), x)) for p in itertools.permutations(a)
        )
        if abs(brute - majorization.orbit_inner_max(a, x)) > 1e-10:
            failures += 1
        p = rng.standard_normal(d)
        q = sampling.random_majorized(rng, p)
        if not majorization.majorizes(p, q, tol=tol):
            failures += 1
        k = int(rng.integers(1, d + 1))
        u, v = rng.standard_normal(d), rng.standard_normal(d)
        if majorization.top_k_sum(u + v, k) > (
            majorization.top_k_sum(u, k) + majorization.top_k_sum(v, k) + 1e-10
        ):
            failures += 1
    return {"trials": trials, "failures": failures}


def _suite_chains(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    d = 3
    # Nested chains reproduce permutations exactly.
    a = majorization.sort_desc(rng.standard_normal(4))
    for perm in itertools.permutations(range(1, 5)):
        chain = tuple(tuple(sorted(perm[: j + 1])) for j in range(4))
        v = sympoly.chain_vector(a, chain)
        expect = np.empty(4)
        for pos, idx in enumerate(perm):
            expect[idx - 1] = a[pos]
        if not np.array_equal(v, expect):
            failures += 1
    h = sympoly.OrbitHalfspace(a=rng.standard_normal(d), b=float(rng.uniform(0.5, 2)))
    rows = sympoly.redundant_description(h)
    for chain in sympoly.numerical_chains(d):
        if not majorization.majorizes(h.a, sympoly.chain_vector(h.a, chain), tol=tol):
            failures += 1
    for _ in range(trials):
        x = rng.standard_normal(d) * float(rng.uniform(0.2, 2.5))
        via_orbit = majorization.orbit_halfspace_contains(h.a, h.b, x, tol=tol)
        via_chains = all(
            float(np.dot(av, x)) <= b + majorization._eff_tol(tol, h.a)
            for av, b in rows
        )
        if via_orbit != via_chains:
            failures += 1
    return {"trials": trials, "failures": failures, "chain_rows": len(rows)}


def _suite_compound(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    worst = 0.0
    per_case = max(1, trials // 9)
    for d in (2, 3, 4):
        for k in range(1, d + 1):
            for _ in range(per_case):
                A = sampling.random_symmetric(rng, d)
                lam = symcore.eigvals(A)
                ev = np.sort(np.linalg.eigvalsh(schurrep.compound_matrix(A, k)))
                sums = np.sort(
                    [sum(lam[i - 1] for i in I) for I in symcore.k_subsets(d, k)]
                )
                dev = float(np.abs(ev - sums).max())
                worst = max(worst, dev)
                if dev > 1e-8:
                    failures += 1
    return {"trials": per_case * 9, "failures": failures, "worst_dev": worst}


def _suite_sfh(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    worst = 0.0
    for _ in range(trials):
        A = sampling.random_symmetric(rng, 3)
        a = majorization.sort_desc(rng.standard_normal(3))
        lam = symcore.eigvals(A)
        ev = np.sort(np.linalg.eigvalsh(schurrep.sfh(a, A)))
        chain_vals = np.sort(
            [
                float(np.dot(sympoly.chain_vector(a, ch), lam))
                for ch in sympoly.numerical_chains(3)
            ]
        )
        dev = float(np.abs(ev - chain_vals).max())
        worst = max(worst, dev)
        if dev > 1e-8:
            failures += 1
    return {"trials": trials, "failures": failures, "worst_dev": worst}


def _scaled_to_boundary(rng, P, A):
    """Rescale A so its eigenvalues straddle the boundary of the body."""
    lam = symcore.eigvals(A)
    tops = [majorization.orbit_inner_max(h.a, lam) for h in P.orbits]
    ratios = [h.b / m for h, m in zip(P.orbits, tops) if m > 1e-12]
    if not ratios:
        return A
    return A * (min(ratios) * float(rng.uniform(0.5, 1.5)))


def _suite_spectrahedron(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    band = 0
    P = sampling.random_polyhedron(rng, 3, 2)
    problem = schurrep.build_spectrahedron(P)
    stacks = [probio.block_stack(problem, b) for b in range(len(problem.blocks))]
    for _ in range(trials):
        A = _scaled_to_boundary(rng, P, sampling.random_symmetric(rng, 3))
        asn = probio.assignment_from_matrix(problem, A)
        x = np.array([asn[n] for n in problem.variable_names])
        mineig = min(
            float(np.linalg.eigvalsh((c0 + x @ C).reshape(9, 9))[0])
            for c0, C, _ in stacks
        )
        cert = sympoly.spectral_contains(P, A, tol=tol)
        if abs(mineig - cert.margin) > 1e-8 * max(1.0, abs(cert.margin)):
            failures += 1
        if abs(cert.margin) <= 1e-7:
            band += 1
            continue
        if (mineig > 0) != cert.inside:
            failures += 1
    return {"trials": trials, "failures": failures, "on_band": band}


def _suite_btn(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    for _ in range(trials):
        d = int(rng.integers(3, 6))
        k = int(rng.integers(1, d))
        A = sampling.random_symmetric(rng, d)
        lam = symcore.eigvals(A)
        sk = float(np.cumsum(lam)[k - 1])
        problem = shadowrep.btn_lift(d, k)
        base = probio.assignment_from_matrix(problem, A)
        if k > 1:
            wit = shadowrep.btn_witness(A, k)
            if np.linalg.eigvalsh(wit.Z)[0] < -1e-9:
                failures += 1
            if np.linalg.eigvalsh(wit.Z - A + wit.s * np.eye(d))[0] < -1e-9:
                failures += 1
            if abs(float(np.trace(wit.Z)) + k * wit.s - sk) > 1e-9:
                failures += 1
            for (i, j) in symcore.upper_indices(d):
                base[f"Z_{i + 1}_{j + 1}"] = float(wit.Z[i, j])
            base["s"] = wit.s
        for t_ok in (sk, sk + float(rng.uniform(0.01, 1.0))):
            asn = dict(base, t=t_ok)
            if not shadowrep.check_assignment(problem, asn, tol=1e-8).ok:
                failures += 1
        asn = dict(base, t=sk - 1e-3)
        if shadowrep.check_assignment(problem, asn, tol=1e-8).ok:
            failures += 1
        # Any feasible auxiliary pair certifies t >= s_k: random feasible
        # (Z, s) samples never undercut the top-k sum.
        if k > 1:
            s = float(lam[k - 1] + rng.uniform(0.0, 1.0))
            G = sampling.random_symmetric(rng, d)
            noise = G @ G.T * float(rng.uniform(0.0, 0.3))
            shifted = A - s * np.eye(d)
            dec = symcore.eigh(shifted)
            Zpos = dec.Q @ np.diag(np.clip(dec.lam, 0.0, None)) @ dec.Q.T + noise
            if float(np.trace(Zpos)) + k * s < sk - 1e-8:
                failures += 1
    return {"trials": trials, "failures": failures}


def _suite_shadow(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    P = sampling.random_polyhedron(rng, 3, 2)
    hrep = shadowrep.build_shadow_hrep(P)
    if hrep.metadata["size"] != 2 + 2 * 9 - 2 * 3 - 2:
        failures += 1
    for _ in range(trials):
        A = _scaled_to_boundary(rng, P, sampling.random_symmetric(rng, 3))
        asn = shadowrep.shadow_witness_assignment(hrep, A)
        ok = shadowrep.check_assignment(hrep, asn, tol=1e-8).ok
        if ok != sympoly.spectral_contains(P, A, tol=tol).inside:
            failures += 1
    points = [majorization.sort_desc(rng.standard_normal(3)) for _ in range(3)]
    vrep = shadowrep.build_shadow_vrep(points)
    if vrep.metadata["size"] != 3 + 2 * 9 - 2 * 3 - 2:
        failures += 1
    for _ in range(trials):
        A, mu = sampling.random_spectral_member(rng, points)
        asn = shadowrep.shadow_witness_assignment(vrep, A, mu=mu, points=points)
        if not shadowrep.check_assignment(vrep, asn, tol=1e-8).ok:
            failures += 1
    return {"trials": 2 * trials, "failures": failures}


def _suite_polarity(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    for _ in range(trials):
        d = int(rng.integers(2, 6))
        Q1 = sampling.random_orthogonal(rng, d)
        A = Q1 @ np.diag(rng.uniform(-1.0, 1.0, d)) @ Q1.T
        Q2 = sampling.random_orthogonal(rng, d)
        signs = rng.choice([-1.0, 1.0], d)
        mags = rng.random(d)
        mags /= mags.sum()
        B = Q2 @ np.diag(signs * mags * float(rng.uniform(0.2, 1.0))) @ Q2.T
        if float(np.trace(A @ B)) > 1.0 + 1e-9:
            failures += 1
    # Hull-level pairing on the d=2 segment body.
    K = specgeo.OrbitHull(d=2, points=(np.array([1.0, -1.0]),))
    for _ in range(trials):
        q = sampling.random_majorized(rng, np.array([1.0, -1.0]))
        Q = sampling.random_orthogonal(rng, 2)
        A = Q @ np.diag(q) @ Q.T
        B = sampling.random_symmetric(rng, 2)
        h = specgeo.support_spectral(K, B)
        if h > 1e-9:
            B = B / h
        report = specgeo.polar_pairing_check(K, A, B, tol=tol)
        if not report.implication_holds:
            failures += 1
    return {"trials": 2 * trials, "failures": failures}


def _suite_nuclear(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    worst = 0.0
    for _ in range(trials):
        d = int(rng.integers(2, 6))
        B = sampling.random_symmetric(rng, d)
        lam = symcore.eigvals(B)
        spread = float(sum(abs(lam[i] - lam[j]) for i in range(d) for j in range(i + 1, d)))
        nuc = specgeo.nuclear_norm(specgeo.commutator_map(B))
        dev = abs(nuc - spread)
        zono = specgeo.SpectralZonotope(
            d=d, generators=(np.eye(d)[0] - np.eye(d)[1],)
        )
        via_zono = specgeo.zonotope_support(zono, B) / (2.0 * math.factorial(d - 2))
        dev = max(dev, abs(via_zono - spread))
        worst = max(worst, dev)
        if dev > 1e-8:
            failures += 1
    return {"trials": trials, "failures": failures, "worst_dev": worst}


def _suite_zonotope(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    for _ in range(trials):
        d = int(rng.integers(2, 6))
        B = sampling.random_symmetric(rng, d)
        lam = symcore.eigvals(B)
        zono = specgeo.SpectralZonotope(d=d, generators=(np.eye(d)[0],))
        expect = math.factorial(d - 1) * float(np.abs(lam).sum())
        if abs(specgeo.zonotope_support(zono, B) - expect) > 1e-8:
            failures += 1
    return {"trials": trials, "failures": failures}


def _suite_hyperbolic(trials, seed, tol):
    rng = sampling.philox(seed)
    cone = sympoly.SymmetricPolyhedron(
        d=3,
        orbits=tuple(
            sympoly.OrbitHalfspace(a=rng.standard_normal(3) + 1.0, b=0.0)
            for _ in range(2)
        ),
    )
    report = specgeo.hyperbolicity_sample_check(cone, trials=trials, seed=seed + 1)
    return {
        "trials": trials,
        "failures": report.disagreements,
        "skipped_factors": report.skipped_factors,
    }


def _suite_volume(trials, seed, tol):
    n = max(trials, 50) * 2000
    K = specgeo.OrbitHull(d=2, points=(), radius=1.0)
    cal = specgeo.calibrate_cd(2, n_samples=n, seed=seed + 1_000_003)
    weighted = specgeo.steiner_mc(K, [0.0], n_samples=n, seed=seed, calibration=cal)[0]
    direct, direct_se = specgeo.spectral_volume_mc(K, n_samples=n, seed=seed + 7)
    gap = abs(weighted.volume - direct)
    bound = 3.0 * (weighted.stderr + direct_se)
    return {
        "trials": 1,
        "failures": 0 if gap <= bound else 1,
        "weighted": weighted.volume,
        "direct": direct,
        "bound": bound,
    }


def _suite_formats(trials, seed, tol):
    rng = sampling.philox(seed)
    failures = 0
    P = sampling.random_polyhedron(rng, 3, 1)
    problem = schurrep.build_spectrahedron(P)
    text = probio.export_sdpa(problem)
    if text != probio.export_sdpa(problem):
        failures += 1
    parsed = probio.parse_sdpa(text)
    if parsed.m != len(problem.variables):
        failures += 1
    lmi = schurrep.permutahedron_lmi(np.array([1.0, 0.0]))
    text2 = probio.export_sdpa(lmi)
    parsed2 = probio.parse_sdpa(text2)
    n_scalar = len(lmi.linear_ineqs) + 2 * len(lmi.linear_eqs)
    if parsed2.block_sizes[-1] != -n_scalar:
        failures += 1
    return {"trials": 2, "failures": failures}


SUITES = {
    "eig": _suite_eig,
    "majorization": _suite_majorization,
    "chains": _suite_chains,
    "compound": _suite_compound,
    "sfh": _suite_sfh,
    "spectrahedron": _suite_spectrahedron,
    "btn": _suite_btn,
    "shadow": _suite_shadow,
    "polarity": _suite_polarity,
    "nuclear": _suite_nuclear,
    "zonotope": _suite_zonotope,
    "hyperbolic": _suite_hyperbolic,
    "volume": _suite_volume,
    "formats": _suite_formats,
}


def run_suites(names=None, trials=200, seed=0, tol=1e-9):
    """Run the named suites (all by default) and return a report dict."""
    if names is None or names == ["all"]:
        names = sorted(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {unknown} (have {sorted(SUITES)})")
    results = []
    for offset, name in enumerate(names):
        out = SUITES[name](trials, seed + 1000 * offset, tol)
        out = {"name": name, "passed": out.get("failures", 0) == 0, **out}
        results.append(out)
    return {
        "seed": seed,
        "trials": trials,
        "tol": tol,
        "backend": kernels.BACKEND,
        "suites": results,
        "all_passed": all(r["passed"] for r in results),
    }
