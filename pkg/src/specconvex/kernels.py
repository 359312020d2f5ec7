"""Kernel backend selection.

Prefers the compiled extension ``specconvex._core``; falls back to the
pure-Python twin when it is absent. ``SPECCONVEX_BACKEND=python`` or
``=compiled`` forces a backend (the latter raises if unavailable). The two
backends are maintained to produce bit-identical results.
"""

import os

import numpy as np

JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

_forced = os.environ.get("SPECCONVEX_BACKEND", "").strip().lower()
if _forced == "python":
    from . import _core_py as _impl

    BACKEND = "python"
elif _forced == "compiled":
    from . import _core as _impl  # noqa: F401  (ImportError is the message)

    BACKEND = "compiled"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _core_py as _impl

        BACKEND = "python"


def jacobi_eigh(A):
    """Cyclic Jacobi eigendecomposition: (eigenvalues, columns Q, sweeps)."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    return _impl.jacobi_eigh(A, JACOBI_OFF_TOL, JACOBI_MAX_SWEEPS)


def pairdiff_abs_prod(pts):
    """prod_{i<j} |p_j - p_i| for every row of an (n, d) array."""
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("expected a 2-d array of sample rows")
    return _impl.pairdiff_abs_prod(pts)
