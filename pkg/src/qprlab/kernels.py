"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback. Set ``QPRLAB_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("QPRLAB_PURE_PYTHON", "") != "1":
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"


def jacobi_eigh(A, tol=1e-13, max_sweeps=100):
    return _impl.jacobi_eigh(A, tol, max_sweeps)


def hill_climb(starts, noise, step0, decay, objective, maximize):
    return _impl.hill_climb(starts, noise, step0, decay, objective, maximize)


def backends():
    """Return the available backends as a name -> module mapping."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels as _compiled
    except ImportError:
        return out
    out["compiled"] = _compiled
    return out
