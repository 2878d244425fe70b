"""Backend selection for the hot loops.

Importing this module picks the compiled extension when it has been
built (``python setup.py build_ext --inplace``) and silently falls back
to the pure-Python reference otherwise.  Set HOLTORUS_PURE_PYTHON=1 to
force the fallback; both backends produce bit-identical results.
"""

import os

from . import _kernels_py

if os.environ.get("HOLTORUS_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

walk_traces = _impl.walk_traces
walk_traces_fixed = _impl.walk_traces_fixed
ellipticize_search = _impl.ellipticize_search
walk_pairs = _impl.walk_pairs


def available_backends():
    """Name -> module for every importable backend."""
    out = {"python": _kernels_py}
    try:
        from . import _speedups
        out["compiled"] = _speedups
    except ImportError:
        pass
    return out
