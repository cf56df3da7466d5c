"""Select the elimination kernel at import time.

Set ``MACINV_PURE_PYTHON=1`` to force the pure-Python kernel.
"""

import os

from . import _kernels_py

if os.environ.get("MACINV_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

rref_int = _impl.rref_int

__all__ = ["BACKEND", "rref_int"]
