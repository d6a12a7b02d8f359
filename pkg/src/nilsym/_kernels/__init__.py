"""Modular sampling kernels: compiled when available, pure Python otherwise.

Set ``NILSYM_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

PRIME = 2147483647  # 2**31 - 1; products of residues fit in int64

if os.environ.get("NILSYM_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

pfaffian_mod = _impl.pfaffian_mod
rank_mod = _impl.rank_mod
sample_pfaffians = _impl.sample_pfaffians
sample_ranks = _impl.sample_ranks

__all__ = ["BACKEND", "PRIME", "pfaffian_mod", "rank_mod", "sample_pfaffians", "sample_ranks"]
