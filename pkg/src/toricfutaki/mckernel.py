"""Sampling-kernel selection: compiled extension when available, pure
Python otherwise. Set TORICFUTAKI_PURE=1 to force the fallback."""

import os

from . import _mc_py

if os.environ.get("TORICFUTAKI_PURE"):
    _impl = _mc_py
    COMPILED = False
else:
    try:
        from . import _mc_cy as _impl

        COMPILED = True
    except ImportError:
        _impl = _mc_py
        COMPILED = False

KERNEL_NAME = "compiled" if COMPILED else "pure-python"
sample_counts = _impl.sample_counts


def available_kernels():
    """Name -> sample_counts callable, for benchmarks and equality tests."""
    kernels = {"pure-python": _mc_py.sample_counts}
    try:
        from . import _mc_cy

        kernels["compiled"] = _mc_cy.sample_counts
    except ImportError:
        pass
    return kernels
