import numpy as np
import pytest

from specconvex import _core_py, kernels, sampling

try:
    from specconvex import _core
except ImportError:
    _core = None


def test_backend_reports_something():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.skipif(_core is None, reason="compiled kernels not built")
def test_jacobi_twins_bit_identical():
    rng = sampling.philox(42)
    for _ in range(50):
        d = int(rng.integers(1, 9))
        A = sampling.random_symmetric(rng, d, scale=float(rng.uniform(0.1, 10)))
        A = np.ascontiguousarray(A)
        w1, V1, s1 = _core.jacobi_eigh(A, 1e-13, 100)
        w2, V2, s2 = _core_py.jacobi_eigh(A, 1e-13, 100)
        assert s1 == s2
        assert np.array_equal(w1, w2)
        assert np.array_equal(V1, V2)


@pytest.mark.skipif(_core is None, reason="compiled kernels not built")
def test_pairdiff_twins_bit_identical():
    rng = sampling.philox(43)
    for d in (2, 3, 4):
        pts = np.ascontiguousarray(rng.uniform(-3, 3, size=(500, d)))
        assert np.array_equal(
            _core.pairdiff_abs_prod(pts), _core_py.pairdiff_abs_prod(pts)
        )


def test_jacobi_zero_and_identity():
    w, V, sweeps = kernels.jacobi_eigh(np.zeros((4, 4)))
    assert np.array_equal(w, np.zeros(4))
    assert np.array_equal(V, np.eye(4))
    assert sweeps == 0
    w, V, _ = kernels.jacobi_eigh(np.eye(3))
    assert np.array_equal(w, np.ones(3))


def test_pairdiff_values():
    pts = np.array([[1.0, 4.0], [2.0, 2.0]])
    out = kernels.pairdiff_abs_prod(pts)
    assert np.allclose(out, [3.0, 0.0])
    pts3 = np.array([[3.0, 1.0, 0.0]])
    # |1-3| * |0-3| * |0-1| = 6
    assert np.allclose(kernels.pairdiff_abs_prod(pts3), [6.0])
