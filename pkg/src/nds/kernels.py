"""Kernel backend selection.

NDS_BACKEND=auto|numba|numpy picks the block kernel; auto means numba
when it imports, numpy otherwise. Both backends expose the same
scan_block signature and the same integer-valued outputs; float outputs
agree to one ulp (the numpy power path rounds differently).
"""

import os

from .errors import DomainError

_CACHE = {}


def available_backends():
    names = ["numpy"]
    try:
        import numba  # noqa: F401

        names.insert(0, "numba")
    except ImportError:
        pass
    return names


def get_kernel(name=None):
    """Resolve (scan_block, backend_name) for `name` or $NDS_BACKEND."""
    req = (name or os.environ.get("NDS_BACKEND", "auto")).lower()
    if req not in ("auto", "numba", "numpy"):
        raise DomainError(f"unknown backend {req!r}; use auto, numba, or numpy")
    if req in _CACHE:
        return _CACHE[req]
    if req == "numpy":
        from . import _kernel_numpy as mod

        pair = (mod.scan_block, "numpy")
    elif req == "numba":
        from . import _kernel_numba as mod

        pair = (mod.scan_block, "numba")
    else:
        try:
            from . import _kernel_numba as mod

            pair = (mod.scan_block, "numba")
        except ImportError:
            from . import _kernel_numpy as mod

            pair = (mod.scan_block, "numpy")
    _CACHE[req] = pair
    return pair
