import numpy as np
import pytest

from specconvex import caps, sampling, schurrep
from specconvex.errors import CapExceeded


def test_default_cap():
    assert caps.block_order_cap() == 20000


def test_env_override_lowers_cap(monkeypatch):
    monkeypatch.setenv("SPECCONVEX_CAP", "50")
    assert caps.block_order_cap() == 50
    rng = sampling.philox(1)
    P = sampling.random_polyhedron(rng, 5, 1)
    with pytest.raises(CapExceeded) as err:
        schurrep.build_spectrahedron(P)
    assert err.value.declared_size == 2500


def test_env_override_raises_cap(monkeypatch):
    monkeypatch.setenv("SPECCONVEX_CAP", "30000")
    assert caps.block_order_cap() == 30000


def test_env_override_invalid(monkeypatch):
    monkeypatch.setenv("SPECCONVEX_CAP", "-3")
    with pytest.raises(ValueError):
        caps.block_order_cap()


def test_d1_degenerate_instances():
    from specconvex import sympoly

    assert sympoly.chain_count(1) == 1
    assert list(sympoly.numerical_chains(1)) == [((1,),)]
    P = sympoly.SymmetricPolyhedron(
        d=1, orbits=(sympoly.OrbitHalfspace(a=np.array([2.0]), b=1.0),)
    )
    prob = schurrep.build_spectrahedron(P)
    assert prob.metadata["size"] == 1
    assert sympoly.spectral_contains(P, np.array([[0.4]])).inside
    assert not sympoly.spectral_contains(P, np.array([[0.6]])).inside
