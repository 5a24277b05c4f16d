"""Backend selection for the matching search.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over with identical results.  ``DP3_KERNEL=python`` forces the
fallback.
"""

from __future__ import annotations

import os

from . import _kernel_py
from ._kernel_py import MODE_COLLECT, MODE_COUNT, MODE_TALLY

BACKEND = "python"
_impl = _kernel_py

if os.environ.get("DP3_KERNEL", "").lower() != "python":
    try:
        from . import _kernel as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def search(n, off, nbr_v, nbr_e, vecs=(), dim=0, mode=MODE_COUNT, limit=0, backend=None):
    impl = _impl
    if backend == "python":
        impl = _kernel_py
    elif backend == "cython":
        from . import _kernel as impl
    return impl.search(n, off, nbr_v, nbr_e, vecs, dim, mode, limit)


__all__ = ["BACKEND", "MODE_COLLECT", "MODE_COUNT", "MODE_TALLY", "search"]
