import numpy as np
import pytest

from oracles import random_configs
from swpclock import _kernels_py, kernels

COMPILED = "compiled" in kernels.available_backends()


def _inputs(seed, n=4000):
    rng = np.random.default_rng(seed)
    v0, v1, a, e = random_configs(rng, n)
    return np.sqrt(2 * e), v0, v1, a


def test_backend_listing():
    assert "python" in kernels.available_backends()
    assert kernels.backend() in kernels.available_backends()


def test_use_backend_roundtrip():
    before = kernels.backend()
    prev = kernels.use_backend("python")
    assert prev == before
    assert kernels.backend() == "python"
    kernels.use_backend(before)
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@pytest.mark.skipif(not COMPILED, reason="compiled extension not built")
def test_barrier_times_parity():
    from swpclock import _kernels

    k, v0, v1, a = _inputs(5)
    for i in range(0, len(k), 97):
        args = (k[i:i + 50], float(v0[i]), float(v1[i]), float(a[i]), 1.0, 1.0)
        ref = _kernels_py.barrier_times(*args)
        got = _kernels.barrier_times(*args)
        assert np.array_equal(ref[0], got[0])
        for x, y in zip(ref[1:], got[1:]):
            np.testing.assert_allclose(y, x, rtol=1e-12, atol=1e-14)


@pytest.mark.skipif(not COMPILED, reason="compiled extension not built")
def test_integrand_parity():
    from swpclock import _kernels

    k = np.linspace(0.05, 1.5, 3001)
    for v1 in (0.15, -0.15, 0.0):
        ref = _kernels_py.ensemble_integrand(k, 0.66, 10.0, 0.30, v1, 7.0, 1.0, 1.0)
        got = _kernels.ensemble_integrand(k, 0.66, 10.0, 0.30, v1, 7.0, 1.0, 1.0)
        np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-300)


def test_below_level_columns():
    k = np.array([0.3, 0.5, 0.7])
    cols = _kernels_py.ensemble_integrand(k, 0.5, 2.0, 0.30, 0.15, 3.0, 1.0, 1.0)
    assert np.all(cols[:2, 1] == 0.0)
    assert np.all(cols[:2, 3] == 0.0)
    assert np.allclose(cols[:2, 2], cols[:2, 0])


def test_averages_independent_of_backend():
    from swpclock import BarrierConfig, GaussianPacket, ScatteringContext, ensemble_averages

    args = (GaussianPacket(0.66, 10.0, -80.0), ScatteringContext(), BarrierConfig(0.30, -0.15, 12.0))
    results = {}
    for name in kernels.available_backends():
        prev = kernels.use_backend(name)
        try:
            results[name] = ensemble_averages(*args)
        finally:
            kernels.use_backend(prev)
    ref = results["python"]
    for r in results.values():
        assert r.avg_tcr == pytest.approx(ref.avg_tcr, rel=1e-11)
        assert r.p_t == pytest.approx(ref.p_t, rel=1e-11)
