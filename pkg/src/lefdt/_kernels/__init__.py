"""Hot loops (map enumeration, per-map Lefschetz evaluation).

The compiled Cython module is used when it was built; otherwise the pure
Python twin is selected.  Set ``LEFDT_PURE_PYTHON=1`` to force the
fallback.
"""
import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if not os.environ.get("LEFDT_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "cython" if backend is compiled_backend else "python"

MAX_KERNEL_CELL = 64

STAT_FIXED = _pykernels.STAT_FIXED
STAT_LEFSCHETZ = _pykernels.STAT_LEFSCHETZ
STAT_AFP = _pykernels.STAT_AFP

__all__ = ["backend", "python_backend", "compiled_backend", "BACKEND_NAME",
           "STAT_FIXED", "STAT_LEFSCHETZ", "STAT_AFP"]
