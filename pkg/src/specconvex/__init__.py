"""specconvex: eigenvalue-defined convex sets of symmetric matrices.

A set of symmetric matrices is eigenvalue-defined when membership depends
only on the (sorted) eigenvalue vector lying in a permutation-invariant
convex set. This package provides exact membership oracles for such sets
over symmetric polyhedra, exact linear-matrix-inequality representations
and small projected representations, the support/polarity/Minkowski
calculus including zonotopes of permutation orbits, Monte Carlo Steiner
polynomials, and deterministic SDPA export of every representation.
"""

from .errors import CapExceeded, DimensionMismatch, SchemaError, SpecConvexError
from .kernels import BACKEND
from .majorization import (
    majorizes,
    orbit_halfspace_contains,
    permutahedron_contains,
    top_k_sum,
)
from .probio import SdpProblem, export_sdpa, parse_problem, parse_sdpa
from .schurrep import (
    adjugate_functor_d2,
    build_spectrahedron,
    permutahedron_lmi,
    representation_sizes,
    schur_functor,
    sfh,
)
from .shadowrep import (
    BtnWitness,
    btn_lift,
    btn_witness,
    build_shadow_hrep,
    build_shadow_vrep,
    check_assignment,
)
from .specgeo import (
    OrbitHull,
    SpectralZonotope,
    calibrate_cd,
    commutator_map,
    hyperbolicity_sample_check,
    minkowski_support,
    polar_pairing_check,
    quermass_fit,
    steiner_mc,
    support_hull,
    support_spectral,
    zonotope_support,
)
from .symcore import (
    SpectralDecomposition,
    char_poly_coeffs,
    diag_embed,
    diag_project,
    eigh,
    eigvals,
    k_subsets,
    kron,
)
from .sympoly import (
    MembershipCertificate,
    OrbitHalfspace,
    SymmetricPolyhedron,
    chain_vector,
    numerical_chains,
    redundant_description,
    spectral_contains,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BtnWitness",
    "CapExceeded",
    "DimensionMismatch",
    "MembershipCertificate",
    "OrbitHalfspace",
    "OrbitHull",
    "SchemaError",
    "SdpProblem",
    "SpecConvexError",
    "SpectralDecomposition",
    "SpectralZonotope",
    "SymmetricPolyhedron",
    "adjugate_functor_d2",
    "btn_lift",
    "btn_witness",
    "build_shadow_hrep",
    "build_shadow_vrep",
    "build_spectrahedron",
    "calibrate_cd",
    "chain_vector",
    "char_poly_coeffs",
    "check_assignment",
    "commutator_map",
    "diag_embed",
    "diag_project",
    "eigh",
    "eigvals",
    "export_sdpa",
    "hyperbolicity_sample_check",
    "k_subsets",
    "kron",
    "majorizes",
    "minkowski_support",
    "numerical_chains",
    "orbit_halfspace_contains",
    "parse_problem",
    "parse_sdpa",
    "permutahedron_contains",
    "permutahedron_lmi",
    "polar_pairing_check",
    "quermass_fit",
    "redundant_description",
    "representation_sizes",
    "schur_functor",
    "sfh",
    "spectral_contains",
    "steiner_mc",
    "support_hull",
    "support_spectral",
    "top_k_sum",
    "zonotope_support",
]
