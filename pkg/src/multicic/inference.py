"""Cell-stratified nonparametric bootstrap for effect estimates.

This is plumbing, not theory: no validity result is claimed for bootstrapping
these plug-in functionals, and every interval says so in its ``note``.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dataset import PanelDataset
from .empirical import SortedSample
from .errors import CICError
from .estimators import ConfidenceInterval, estimate


@dataclass(frozen=True)
class BootstrapConfig:
    B: int = 999
    level: float = 0.95
    seed: int = 0
    scheme: str = "stratified-by-cell"
    workers: int = 1

    def __post_init__(self):
        if int(self.B) < 1:
            raise CICError(f"bootstrap replicate count must be >= 1, got {self.B}")
        if not (0.0 < float(self.level) < 1.0):
            raise CICError(f"coverage level must lie in (0, 1), got {self.level}")
        if self.scheme != "stratified-by-cell":
            raise CICError(f"unsupported resampling scheme {self.scheme!r}")
        if not (0 <= int(self.seed) < 2**64):
            raise CICError("seed must be a non-negative 64-bit integer")


def replicate_rng(seed, r):
    """Generator for replicate ``r``; depends only on (seed, r)."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(r),)))


def resample(ds, rng):
    """Resample every cell with replacement at its own size.

    Draw counts per sorted index and repeat, which yields the resampled cell
    already sorted without an O(n log n) sort.
    """
    cells = {}
    for t in (0, 1):
        for d in ds.levels:
            s = ds.cell(t, d)
            counts = np.bincount(rng.integers(0, s.n, size=s.n), minlength=s.n)
            cells[(t, d)] = SortedSample.from_sorted(np.repeat(s.values, counts))
    return PanelDataset(levels=ds.levels, cells=cells, min_cell_size=0)


def replicate_values(ds, requests, cfg):
    """Array of shape (B, len(requests)); row ``r`` uses only ``replicate_rng(seed, r)``."""
    def one(r):
        boot = resample(ds, replicate_rng(cfg.seed, r))
        return [estimate(boot, q).value for q in requests]

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(one, range(cfg.B)))
    else:
        rows = [one(r) for r in range(cfg.B)]
    return np.asarray(rows, dtype=np.float64).reshape(cfg.B, len(requests))


def percentile_interval(values, level):
    alpha = 1.0 - level
    lo, hi = np.quantile(values, [alpha / 2.0, 1.0 - alpha / 2.0])
    return float(lo), float(hi)


def bootstrap_ci(ds, request, cfg):
    """Percentile interval for one request.

    Returns ``(lower, upper, replicate_values)``. Errors are raised by the
    estimate on the original data; replicates keep every cell size, so they
    cannot hit an empty cell.
    """
    estimate(ds, request)
    reps = replicate_values(ds, [request], cfg)[:, 0]
    lo, hi = percentile_interval(reps, cfg.level)
    return lo, hi, reps


def bootstrap_many(ds, requests, cfg):
    """Intervals for several requests sharing the same replicates."""
    points = [estimate(ds, q) for q in requests]
    reps = replicate_values(ds, requests, cfg)
    out = []
    for j, est in enumerate(points):
        lo, hi = percentile_interval(reps[:, j], cfg.level)
        out.append(est.with_ci(ConfidenceInterval(lo, hi, float(cfg.level), int(cfg.B), cfg.scheme)))
    return out, reps
