"""Acceptance suite.

One test per criterion, each printing a single PASS/FAIL line. Every
tolerance is pinned here; run with ``pytest tests/test_acceptance.py -v -s``
to see the per-criterion lines.
"""

import itertools
import json
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from specconvex import (
    majorization,
    probio,
    sampling,
    schurrep,
    shadowrep,
    specgeo,
    symcore,
    sympoly,
)
from specconvex.errors import CapExceeded

GOLDEN = Path(__file__).parent / "golden"


def report(num, ok, detail):
    line = f"ACCEPTANCE {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def test_criterion_01_compound_eigenvalue_law():
    start = time.time()
    rng = sampling.philox(101)
    worst = 0.0
    for d in (2, 3, 4, 5):
        for k in range(1, d + 1):
            subsets = symcore.k_subsets(d, k)
            for _ in range(100):
                A = sampling.random_symmetric(rng, d)
                lam = symcore.eigvals(A)
                got = np.sort(np.linalg.eigvalsh(schurrep.compound_matrix(A, k)))
                want = np.sort([sum(lam[i - 1] for i in I) for I in subsets])
                worst = max(worst, float(np.abs(got - want).max()))
    elapsed = time.time() - start
    report(
        1,
        worst <= 1e-8 and elapsed < 10.0,
        f"compound eigenvalue law d<=5, 100 trials each: max dev {worst:.2e}, "
        f"{elapsed:.1f}s",
    )


def test_criterion_02_spectrahedron_equivalence():
    start = time.time()
    rng = sampling.philox(102)
    n_samples = 10_000
    total = 0
    on_band = 0
    sign_mismatch = 0
    slack_mismatch = 0
    for poly_idx in range(5):
        M = (poly_idx % 3) + 1
        P = sampling.random_polyhedron(rng, 3, M)
        problem = schurrep.build_spectrahedron(P)
        stacks = [probio.block_stack(problem, b) for b in range(M)]
        names = problem.variable_names
        uppers = symcore.upper_indices(3)

        mats = np.array(
            [sampling.random_symmetric(rng, 3) for _ in range(n_samples)]
        )
        scales = rng.uniform(0.5, 1.5, n_samples)
        lams = np.array([symcore.eigvals(A) for A in mats])
        for s in range(n_samples):
            tops = [majorization.orbit_inner_max(h.a, lams[s]) for h in P.orbits]
            ratios = [h.b / m for h, m in zip(P.orbits, tops) if m > 1e-12]
            if ratios:
                mats[s] *= min(ratios) * scales[s]
                lams[s] *= min(ratios) * scales[s]
        X = np.array([[A[i, j] for (i, j) in uppers] for A in mats])
        assert names == [f"A_{i + 1}_{j + 1}" for (i, j) in uppers]
        mineigs = np.full(n_samples, np.inf)
        for c0, C, _ in stacks:
            vals = (X @ C + c0).reshape(n_samples, 9, 9)
            mineigs = np.minimum(mineigs, np.linalg.eigvalsh(vals)[:, 0])
        for s in range(n_samples):
            cert = sympoly.spectral_contains(P, mats[s])
            total += 1
            if abs(mineigs[s] - cert.margin) > 1e-8 * max(1.0, abs(cert.margin)):
                slack_mismatch += 1
            if abs(cert.margin) <= 1e-7:
                on_band += 1
                continue
            if (mineigs[s] > 0) != cert.inside:
                sign_mismatch += 1
    elapsed = time.time() - start
    ok = (
        sign_mismatch == 0
        and slack_mismatch == 0
        and on_band <= 0.005 * total
        and elapsed < 60.0
    )
    report(
        2,
        ok,
        f"LMI equivalence on {total} samples: {sign_mismatch} sign mismatches, "
        f"{slack_mismatch} slack mismatches, {on_band} on-band, {elapsed:.1f}s",
    )


def test_criterion_03_chain_redundancy():
    rng = sampling.philox(103)
    disagreements = 0
    checked = 0
    for d in (3, 4):
        h = sympoly.OrbitHalfspace(
            a=rng.standard_normal(d), b=float(rng.uniform(0.5, 2.0))
        )
        rows = sympoly.redundant_description(h)
        assert len(rows) == {3: 9, 4: 96}[d]
        perms = [np.array(p) for p in itertools.permutations(h.a)]
        eff = majorization._eff_tol(1e-9, h.a)
        for _ in range(2000):
            x = rng.standard_normal(d) * float(rng.uniform(0.2, 2.5))
            via_orbit = all(float(np.dot(p, x)) <= h.b + eff for p in perms)
            via_chain = all(float(np.dot(v, x)) <= b + eff for v, b in rows)
            checked += 1
            disagreements += via_orbit != via_chain
    report(
        3,
        disagreements == 0,
        f"chain description vs orbit enumeration on {checked} points: "
        f"{disagreements} disagreements",
    )


def test_criterion_04_btn_lift():
    rng = sampling.philox(104)
    failures = 0
    for _ in range(500):
        d = int(rng.integers(3, 6))
        k = int(rng.integers(1, d))
        A = sampling.random_symmetric(rng, d)
        lam = symcore.eigvals(A)
        sk = float(np.cumsum(lam)[k - 1])
        problem = shadowrep.btn_lift(d, k)
        base = probio.assignment_from_matrix(problem, A)
        if k > 1:
            wit = shadowrep.btn_witness(A, k)
            base["s"] = wit.s
            for (i, j) in symcore.upper_indices(d):
                base[f"Z_{i + 1}_{j + 1}"] = float(wit.Z[i, j])
            # The lift's certificate: every feasible pair has
            # tr Z + k s >= s_k, with equality on the witness.
            if abs(float(np.trace(wit.Z)) + k * wit.s - sk) > 1e-9:
                failures += 1
        eps = float(rng.uniform(1e-4, 0.5))
        if not shadowrep.check_assignment(problem, dict(base, t=sk + eps), 1e-8).ok:
            failures += 1
        if not shadowrep.check_assignment(problem, dict(base, t=sk), 1e-8).ok:
            failures += 1
        if shadowrep.check_assignment(problem, dict(base, t=sk - 1e-3), 1e-8).ok:
            failures += 1
    # Smoke test: random assignments cannot rescue an undercut t.
    d, k = 4, 2
    A = sampling.random_symmetric(rng, d)
    lam = symcore.eigvals(A)
    sk = float(np.cumsum(lam)[k - 1])
    problem = shadowrep.btn_lift(d, k)
    base = probio.assignment_from_matrix(problem, A)
    for _ in range(100):
        asn = dict(base, t=sk - 1e-3, s=float(rng.normal()))
        Zr = sampling.random_symmetric(rng, d)
        for (i, j) in symcore.upper_indices(d):
            asn[f"Z_{i + 1}_{j + 1}"] = float(Zr[i, j])
        if shadowrep.check_assignment(problem, asn, 1e-8).ok:
            failures += 1
    report(4, failures == 0, f"top-k lift witnesses and rejections: {failures} failures")


def test_criterion_05_representation_sizes():
    rng = sampling.philox(105)
    failures = []
    for d in range(2, 7):
        for M in range(1, 6):
            P = sampling.random_polyhedron(rng, d, M)
            expect_shadow = M + 2 * d * d - 2 * d - 2
            got_shadow = shadowrep.build_shadow_hrep(P).metadata["size"]
            if got_shadow != expect_shadow:
                failures.append((d, M, "hrep", got_shadow))
            expect_lmi = M * schurrep.sfh_order(d)
            try:
                got_lmi = schurrep.build_spectrahedron(P).metadata["size"]
            except CapExceeded as err:
                got_lmi = err.declared_size
            if got_lmi != expect_lmi:
                failures.append((d, M, "lmi", got_lmi))
            if schurrep.representation_sizes(P) != (expect_lmi, M * math.factorial(d)):
                failures.append((d, M, "sizes", None))
    P32 = sampling.random_polyhedron(rng, 3, 2)
    if shadowrep.build_shadow_hrep(P32).metadata["size"] != 12:
        failures.append((3, 2, "spot-hrep", None))
    blocks = schurrep.build_spectrahedron(P32).blocks
    if [b.order for b in blocks] != [9, 9]:
        failures.append((3, 2, "spot-lmi", None))
    report(
        5,
        not failures,
        f"size formulas over d<=6, M<=5 plus (3,2) spot values: {failures or 'exact'}",
    )


def test_criterion_06_projected_generation():
    rng = sampling.philox(106)
    points = [majorization.sort_desc(rng.standard_normal(3)) for _ in range(3)]
    problem = shadowrep.build_shadow_vrep(points)
    K = specgeo.OrbitHull(d=3, points=tuple(points))
    witness_failures = 0
    for _ in range(1000):
        A, mu = sampling.random_spectral_member(rng, points)
        asn = shadowrep.shadow_witness_assignment(problem, A, mu=mu, points=points)
        if not shadowrep.check_assignment(problem, asn, tol=1e-8).ok:
            witness_failures += 1
    inversions = 0
    outside = 0
    scale = max(float(np.abs(v).max()) for v in points)
    while outside < 1000:
        A = sampling.random_symmetric(rng, 3, scale=2.0 * scale)
        lam = symcore.eigvals(A)
        if not specgeo.hull_separates(K, lam):
            continue
        outside += 1
        if specgeo.hull_contains(K, lam):
            inversions += 1
    ok = witness_failures == 0 and inversions == 0
    report(
        6,
        ok,
        f"projected V-form: {witness_failures} witness failures on 1000 members, "
        f"{inversions} inversions on 1000 separated outsiders",
    )


def test_criterion_07_nuclear_norm_identity():
    rng = sampling.philox(107)
    worst = 0.0
    for trial in range(200):
        d = 2 + trial % 4
        B = sampling.random_symmetric(rng, d)
        lam = symcore.eigvals(B)
        spread = float(
            sum(abs(lam[i] - lam[j]) for i in range(d) for j in range(i + 1, d))
        )
        nuc = specgeo.nuclear_norm(specgeo.commutator_map(B))
        Z = specgeo.SpectralZonotope(d=d, generators=(np.eye(d)[0] - np.eye(d)[1],))
        via_zono = specgeo.zonotope_support(Z, B) / (2.0 * math.factorial(d - 2))
        worst = max(worst, abs(nuc - spread), abs(via_zono - spread))
    report(
        7,
        worst <= 1e-8,
        f"pairwise eigenvalue spread vs commutator nuclear norm and zonotope "
        f"support, 200 trials d<=5: max dev {worst:.2e}",
    )


def test_criterion_08_steiner_ball_law():
    start = time.time()
    cal = specgeo.calibrate_cd(2, n_samples=1_000_000, seed=208)
    c_target = math.pi / math.sqrt(2.0)
    cal_ok = abs(cal.c - c_target) / c_target <= 0.01
    K = specgeo.OrbitHull(d=2, points=(), radius=1.0)
    rows = specgeo.steiner_mc(
        K, [0.0, 0.5, 1.0, 2.0], n_samples=1_000_000, seed=108, calibration=cal
    )
    details = []
    rows_ok = True
    for row in rows:
        truth = (4.0 * math.pi / 3.0) * (1.0 + row.t) ** 3
        dev = abs(row.volume - truth)
        rows_ok &= dev <= 3.0 * row.stderr and row.stderr / row.volume <= 0.02
        details.append(f"t={row.t:g}:{dev / row.stderr:.1f}se")
    elapsed = time.time() - start
    report(
        8,
        cal_ok and rows_ok and elapsed < 60.0,
        f"ball growth law, 10^6 samples: c2 off by "
        f"{abs(cal.c - c_target) / c_target:.2%}, deviations {' '.join(details)}, "
        f"{elapsed:.1f}s",
    )


def test_criterion_09_duality_pairing():
    rng = sampling.philox(109)
    violations = 0
    worst = -np.inf
    for _ in range(500):
        d = int(rng.integers(2, 6))
        Q1 = sampling.random_orthogonal(rng, d)
        A = Q1 @ np.diag(rng.uniform(-1.0, 1.0, d)) @ Q1.T
        Q2 = sampling.random_orthogonal(rng, d)
        mags = rng.random(d)
        mags /= mags.sum()
        mags *= float(rng.uniform(0.2, 1.0))
        B = Q2 @ np.diag(rng.choice([-1.0, 1.0], d) * mags) @ Q2.T
        pairing = float(np.trace(A @ B))
        worst = max(worst, pairing)
        if pairing > 1.0 + 1e-9:
            violations += 1
    report(
        9,
        violations == 0,
        f"operator/nuclear pairing bound on 500 pairs: max tr(AB) = {worst:.6f}",
    )


def test_criterion_10_determinism_and_formats():
    args = [
        sys.executable, "-m", "specconvex",
        "verify", "--strict", "--seed", "17", "--trials", "60",
    ]
    run1 = subprocess.run(args, capture_output=True, text=True, timeout=600)
    run2 = subprocess.run(args, capture_output=True, text=True, timeout=600)
    verify_ok = (
        run1.returncode == 0
        and run1.stdout == run2.stdout
        and json.loads(run1.stdout)["all_passed"]
    )
    lmi = schurrep.permutahedron_lmi(np.array([1.0, 0.0]))
    golden1 = probio.export_sdpa(lmi) == (
        GOLDEN / "permutahedron_lmi_d2.dat-s"
    ).read_text()
    P = sympoly.SymmetricPolyhedron(
        d=3, orbits=(sympoly.OrbitHalfspace(a=np.array([1.0, 0.0, 0.0]), b=1.0),)
    )
    golden2 = probio.export_sdpa(schurrep.build_spectrahedron(P)) == (
        GOLDEN / "spectrahedron_d3_M1.dat-s"
    ).read_text()
    report(
        10,
        verify_ok and golden1 and golden2,
        f"verify --strict byte-identical: {verify_ok}; golden SDPA files "
        f"byte-exact: {golden1 and golden2}",
    )
