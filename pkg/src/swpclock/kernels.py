"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy twin.
``use_backend`` switches explicitly (tests and the benchmark use it).
"""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

PROPAGATING = _kernels_py.PROPAGATING
EVANESCENT = _kernels_py.EVANESCENT
BELOW_RIGHT_LEVEL = _kernels_py.BELOW_RIGHT_LEVEL
N_COMPONENTS = _kernels_py.N_COMPONENTS

_active = _compiled if _compiled is not None else _kernels_py


def available_backends():
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def backend():
    return "compiled" if _active is _compiled and _compiled is not None else "python"


def use_backend(name):
    """Select ``"compiled"`` or ``"python"``; returns the previous name."""
    global _active
    previous = backend()
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernel is not built")
        _active = _compiled
    elif name == "python":
        _active = _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def barrier_times(k1, v0, v1, a, hbar=1.0, mu=1.0):
    return _active.barrier_times(k1, v0, v1, a, hbar, mu)


def ensemble_integrand(k, k0, sigma, v0, v1, a, hbar=1.0, mu=1.0):
    return _active.ensemble_integrand(k, k0, sigma, v0, v1, a, hbar, mu)
