"""Selects the mod-p kernel backend at import.

The compiled module is used when it was built; setting WEAKHOPF_PURE_PYTHON=1
forces the numpy fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
matmul_mod = _pykernels.matmul_mod
rref_mod = _pykernels.rref_mod

if not os.environ.get("WEAKHOPF_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        matmul_mod = _ckernels.matmul_mod
        rref_mod = _ckernels.rref_mod
