"""Supplementary convergence checks at larger n (not acceptance criteria).

Acceptance criteria 1 and 2 fail at n=5000 because of sampling noise, not
bias; these show the same estimators meeting the same tolerances once the
cells are large enough.
"""
import pytest

from multicic.simulation import load_config, simulate

from conftest import CONFIGS
from test_acceptance import SEEDS, strong_ratio, weak_sup_errors

pytestmark = pytest.mark.slow


def test_weak_recovery_at_20000():
    cfg = load_config(CONFIGS / "weak_3level.yaml")
    worst = [max(weak_sup_errors(cfg, s, n=20_000).values()) for s in SEEDS]
    assert sum(w < 0.05 for w in worst) >= 19


def test_strong_recovery_at_100000():
    cfg = load_config(CONFIGS / "strong_3level.yaml")
    worst = [strong_ratio(simulate(cfg, 100_000, s).dataset) for s in SEEDS]
    assert sum(r <= 1.0 for r in worst) >= 19
