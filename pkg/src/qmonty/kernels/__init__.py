"""Evaluation kernels with a compiled fast path and a numpy fallback.

The compiled extension `_native` is preferred when importable; setting the
environment variable QMONTY_DISABLE_NATIVE to a non-empty value forces the
pure-numpy `_reference` backend.  Both expose the same two functions:

    config_probs(ta1, ta2, tb1, tb2, d1, d2, d3, px, py, pz, entangled)
    theta_grid_mean(nodes, weights, d1, d2, d3, px, py, pz, entangled)
"""

import os

from . import _reference

if os.environ.get("QMONTY_DISABLE_NATIVE"):
    _impl = _reference
else:
    try:
        from . import _native as _impl
    except ImportError:
        _impl = _reference

BACKEND = "native" if _impl is not _reference else "reference"
DEGENERATE_TOL = _reference.DEGENERATE_TOL

config_probs = _impl.config_probs
theta_grid_mean = _impl.theta_grid_mean


def available_backends():
    """Names of the importable backends, fast path first."""
    names = []
    try:
        from . import _native  # noqa: F401

        names.append("native")
    except ImportError:
        pass
    names.append("reference")
    return names


def get_backend(name):
    """Fetch a backend module by name ("native" or "reference")."""
    if name == "reference":
        return _reference
    if name == "native":
        from . import _native

        return _native
    raise ValueError(f"unknown backend {name!r}")
