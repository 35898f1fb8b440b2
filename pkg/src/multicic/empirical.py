"""Empirical CDFs, generalized-inverse quantiles and their compositions.

Conventions
-----------
* ``F(y) = #{x <= y} / n``: right-continuous step function.
* ``Q(tau) = inf{y : F(y) >= tau}`` for ``tau`` in (0, 1]; ``Q(0)`` is the
  sample minimum.
* No smoothing or interpolation anywhere.
"""
import math

import numpy as np

from . import kernels
from .errors import EmptyCell, InvalidProbability, InvalidValue


class SortedSample:
    """Immutable ascending multiset of outcome values."""

    __slots__ = ("_values",)

    def __init__(self, values, *, _trusted=False):
        arr = np.array(values, dtype=np.float64) if not _trusted else values
        if not _trusted:
            if arr.ndim != 1:
                arr = arr.ravel()
            if arr.size == 0:
                raise EmptyCell(None, None, "cannot build a sample from no values")
            if not np.all(np.isfinite(arr)):
                raise InvalidValue("sample contains non-finite values")
            arr = np.sort(arr, kind="stable")
        arr.flags.writeable = False
        self._values = arr

    @classmethod
    def from_sorted(cls, arr):
        """Wrap an array already known to be ascending, finite and non-empty."""
        arr = np.ascontiguousarray(arr, dtype=np.float64)
        if arr.flags.writeable:
            arr = arr.copy()
        return cls(arr, _trusted=True)

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return self._values.shape[0]

    def __len__(self):
        return self.n

    @property
    def min(self):
        return float(self._values[0])

    @property
    def max(self):
        return float(self._values[-1])

    def __eq__(self, other):
        if not isinstance(other, SortedSample):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        if self.n <= 6:
            return f"SortedSample({self._values.tolist()})"
        return f"SortedSample(n={self.n}, min={self.min:g}, max={self.max:g})"


def build_sorted(values):
    """Sorted, validated copy of ``values``.

    Raises
    ------
    EmptyCell
        If ``values`` is empty.
    InvalidValue
        If any value is NaN or infinite.
    """
    return SortedSample(values)


class EmpiricalCDF:
    def __init__(self, base):
        self.base = base if isinstance(base, SortedSample) else build_sorted(base)

    def __call__(self, y):
        return cdf_eval(self, y)


class QuantileFunction:
    def __init__(self, base):
        self.base = base if isinstance(base, SortedSample) else build_sorted(base)

    def __call__(self, tau):
        return quantile_eval(self, tau)


def _sample_of(obj):
    if isinstance(obj, SortedSample):
        return obj
    return obj.base


def cdf_eval(F, y):
    """Fraction of the sample that is <= ``y``; vectorized over ``y``."""
    s = _sample_of(F)
    scalar = np.ndim(y) == 0
    counts = kernels.count_le(s.values, np.atleast_1d(y))
    out = counts / s.n
    return float(out[0]) if scalar else out


def quantile_index(n, tau):
    """0-based order-statistic index of ``Q(tau)`` for a sample of size ``n``.

    The smallest ``k`` with ``k/n >= tau`` (both sides as floats, the same
    arithmetic :func:`cdf_eval` uses), so ``Q(F(y))`` never overshoots by one
    step through rounding.
    """
    tau = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    bad = ~((tau >= 0.0) & (tau <= 1.0))
    if bad.any():
        raise InvalidProbability(f"probabilities must lie in [0, 1], got {tau[bad][:3].tolist()}")
    k = np.clip(np.ceil(n * tau).astype(np.int64), 1, n)
    down = (k > 1) & ((k - 1) / n >= tau)
    k[down] -= 1
    up = (k < n) & (k / n < tau)
    k[up] += 1
    return k - 1


def quantile_eval(Q, tau):
    """Generalized inverse ``inf{y : F(y) >= tau}``; ``tau = 0`` gives the minimum."""
    s = _sample_of(Q)
    scalar = np.ndim(tau) == 0
    out = s.values[quantile_index(s.n, tau)]
    return float(out[0]) if scalar else out


def rank_map(y, F_from, Q_to):
    """``Q_to(F_from(y))``, vectorized over ``y``.

    Where ``F_from(y) == 0`` the result is the minimum of ``Q_to``'s sample.
    """
    src = _sample_of(F_from)
    dst = _sample_of(Q_to)
    scalar = np.ndim(y) == 0
    out, _ = kernels.rank_map(np.atleast_1d(y), src.values, dst.values)
    return float(out[0]) if scalar else out


def rank_map_counted(y, F_from, Q_to):
    """Like :func:`rank_map` on an array, also returning the count of zero-rank hits."""
    return kernels.rank_map(np.atleast_1d(y), _sample_of(F_from).values, _sample_of(Q_to).values)


def mean(s):
    """Correctly rounded arithmetic mean (equals the integral of the step quantile)."""
    s = _sample_of(s)
    return math.fsum(s.values) / s.n


def sup_distance(s, cdf):
    """Kolmogorov distance between the ECDF of ``s`` and a continuous CDF callable."""
    s = _sample_of(s)
    v = s.values
    n = s.n
    Fv = np.asarray(cdf(v), dtype=np.float64)
    # ECDF jumps at each distinct value; use last index of each tie run
    last = np.searchsorted(v, v, side="right")
    first = np.searchsorted(v, v, side="left")
    upper = np.abs(last / n - Fv)
    lower = np.abs(first / n - Fv)
    return float(max(upper.max(), lower.max()))


def dkw_bound(n, alpha=0.01):
    """Dvoretzky-Kiefer-Wolfowitz radius: P(sup|F_n - F| > eps) <= alpha."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n))
