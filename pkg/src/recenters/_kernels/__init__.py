"""Exact-rational kernels: compiled core with a pure-Python fallback.

The compiled module is used when importable, unless the environment
variable ``RE_CENTERS_PUREPY`` is set to a non-empty value.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("RE_CENTERS_PUREPY"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "compiled" if compiled_backend is not None else "python"

matmul = backend.matmul
rref = backend.rref
rank_ff = backend.rank_ff

__all__ = ["matmul", "rref", "rank_ff", "BACKEND_NAME", "python_backend", "compiled_backend"]
