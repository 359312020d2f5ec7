"""Seeded random generators used by the verification suites and the CLI.

All randomness flows through a 64-bit counter-based generator (Philox), so
every suite is reproducible from its seed and parallel chunks can derive
independent streams from seed + chunk index.
"""

import numpy as np

from . import sympoly


def philox(seed, counter=0):
    return np.random.Generator(np.random.Philox(key=np.uint64(seed + counter)))


def random_symmetric(rng, d, scale=1.0):
    G = rng.standard_normal((d, d))
    return scale * (G + G.T) / 2.0


def random_orthogonal(rng, d):
    """Haar-ish orthogonal matrix via QR with sign fixing."""
    G = rng.standard_normal((d, d))
    Q, R = np.linalg.qr(G)
    return Q * np.sign(np.diag(R))


def random_permutation_matrix(rng, d):
    P = np.zeros((d, d))
    P[np.arange(d), rng.permutation(d)] = 1.0
    return P


def random_doubly_stochastic(rng, d, mixtures=8):
    """Convex mixture of random permutation matrices."""
    weights = rng.random(mixtures)
    weights /= weights.sum()
    D = np.zeros((d, d))
    for w in weights:
        D += w * random_permutation_matrix(rng, d)
    return D


def random_majorized(rng, p):
    """A vector majorized by p: D p for a random doubly stochastic D."""
    p = np.asarray(p, dtype=np.float64)
    return random_doubly_stochastic(rng, p.size) @ p


def random_descending(rng, d, scale=1.0):
    return -np.sort(-(scale * rng.standard_normal(d)))


def random_polyhedron(rng, d, n_orbits):
    """A symmetric polyhedron with unit generators and 0 in its interior."""
    orbits = []
    for _ in range(n_orbits):
        a = rng.standard_normal(d)
        while not np.any(a != 0.0):
            a = rng.standard_normal(d)
        a /= np.linalg.norm(a)
        b = rng.uniform(0.5, 2.0)
        orbits.append(sympoly.OrbitHalfspace(a=a, b=b))
    return sympoly.SymmetricPolyhedron(d=d, orbits=tuple(orbits))


def random_spectral_member(rng, points):
    """A symmetric matrix whose eigenvalues are majorized by a mixture.

    Draws mu on the simplex, mixes the descending points, smears the
    mixture with a doubly stochastic map, and conjugates by a random
    orthogonal matrix. Returns (A, mu).
    """
    points = [np.asarray(p, dtype=np.float64) for p in points]
    d = points[0].size
    mu = rng.random(len(points))
    mu /= mu.sum()
    p = sum(m * v for m, v in zip(mu, points))
    q = random_majorized(rng, p)
    Q = random_orthogonal(rng, d)
    return Q @ np.diag(q) @ Q.T, mu
