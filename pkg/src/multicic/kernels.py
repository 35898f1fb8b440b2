"""Backend selection for the hot rank-map kernels.

The compiled extension is used when it was built; set ``MULTICIC_PURE=1``
to force the numpy fallback.
"""
import os

import numpy as np

from . import _kernels_py

_compiled = None
if not os.environ.get("MULTICIC_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"
_impl = _compiled if _compiled is not None else _kernels_py


def _as_contiguous(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def count_le(sorted_values, queries):
    """Number of elements of ``sorted_values`` that are <= each query."""
    return _impl.count_le(_as_contiguous(sorted_values), _as_contiguous(queries))


def rank_map(queries, from_sorted, to_sorted):
    """Apply ``Q_to(F_from(y))`` to every query.

    Returns the mapped values and the number of queries for which
    ``F_from(y) == 0`` (resolved to the minimum of ``to_sorted``).
    """
    return _impl.rank_map(
        _as_contiguous(queries), _as_contiguous(from_sorted), _as_contiguous(to_sorted)
    )


def backends():
    """Mapping of available backend name -> kernel module."""
    out = {"numpy": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
