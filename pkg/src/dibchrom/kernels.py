"""Backend selection for the colouring search.

The compiled extension is used when it imports and the digraph fits in 64
bits; otherwise the pure-Python mirror runs. Set ``DIB_PURE_PYTHON=1`` to
force the fallback.
"""
from __future__ import annotations

import os

from . import _search_py

FOUND, INFEASIBLE, LIMIT = _search_py.FOUND, _search_py.INFEASIBLE, _search_py.LIMIT

try:
    if os.environ.get("DIB_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _search as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def search(n, out, inn, k, need_b, node_limit=0, backend=None):
    """Dispatch to the selected backend; ``backend`` may force one by name."""
    name = backend or BACKEND
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled search extension is not built")
        if n <= 64:
            return _compiled.search(n, out, inn, k, need_b, node_limit)
    return _search_py.search(n, out, inn, k, need_b, node_limit)
