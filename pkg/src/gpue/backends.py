"""Kernel lane selection.

Two interchangeable implementations of the hot kernels exist: a Cython
extension (``gpue._kernels``) and a numpy fallback (``gpue._pykernels``).
The compiled lane is preferred when importable; ``GPUE_BACKEND=python``
or ``GPUE_BACKEND=compiled`` forces a lane.
"""

import os

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None


def _select():
    forced = os.environ.get("GPUE_BACKEND")
    if forced in (None, ""):
        return _compiled if HAVE_COMPILED else _pykernels
    if forced == "python":
        return _pykernels
    if forced == "compiled":
        if not HAVE_COMPILED:
            raise ImportError(
                "GPUE_BACKEND=compiled but the gpue._kernels extension is "
                "not built; install with the Cython extension or unset the "
                "variable"
            )
        return _compiled
    raise ValueError(f"unknown GPUE_BACKEND {forced!r}; use 'python' or 'compiled'")


active = _select()
BACKEND_NAME = active.NAME


def get_backend(name=None):
    """Return a kernel module by name (None selects the active lane)."""
    if name is None:
        return active
    if name == "python":
        return _pykernels
    if name == "compiled":
        if not HAVE_COMPILED:
            raise ImportError("compiled kernel lane is not available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    names = ["python"]
    if HAVE_COMPILED:
        names.append("compiled")
    return names
