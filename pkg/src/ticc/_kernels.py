"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``TICC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _peel_py

python_peel_kernel = _peel_py.peel_kernel

try:
    if os.environ.get("TICC_PURE_PYTHON") == "1":
        raise ImportError("pure-Python kernels requested")
    from ._peel import peel_kernel as compiled_peel_kernel
except ImportError:
    compiled_peel_kernel = None

if compiled_peel_kernel is not None:
    BACKEND = "cython"
    peel_kernel = compiled_peel_kernel
else:
    BACKEND = "python"
    peel_kernel = python_peel_kernel
