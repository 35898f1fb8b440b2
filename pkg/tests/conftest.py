import sys
from pathlib import Path

import pytest

from multicic import PanelDataset

HERE = Path(__file__).parent
ROOT = HERE.parent
CONFIGS = ROOT / "configs"
sys.path.insert(0, str(HERE))

MICRO_CSV = """outcome,treatment,period
1,0,0
2,0,0
3,0,0
2,0,1
4,0,1
6,0,1
2,A,0
3,A,0
5,A,1
7,A,1
"""


def make_ds(cells, levels, ordered=False):
    from multicic import TreatmentLevels

    return PanelDataset.from_cells(cells, TreatmentLevels(tuple(levels), ordered=ordered))


@pytest.fixture
def micro():
    return make_ds(
        {(0, "0"): [1, 2, 3], (1, "0"): [2, 4, 6], (0, "A"): [2, 3], (1, "A"): [5, 7]},
        ["0", "A"],
    )


@pytest.fixture
def micro_csv(tmp_path):
    p = tmp_path / "micro.csv"
    p.write_text(MICRO_CSV)
    return p


@pytest.fixture
def three_level():
    """Integer-valued ordered 3-level dataset with distinct time maps per arm."""
    return make_ds(
        {
            (0, "0"): [1, 2, 3, 4, 5, 6],
            (1, "0"): [2, 4, 6, 8, 10, 12],
            (0, "low"): [2, 3, 4, 5],
            (1, "low"): [6, 8, 9, 13],
            (0, "high"): [3, 4, 5, 6, 6],
            (1, "high"): [10, 11, 15, 16, 20],
        },
        ["0", "low", "high"],
        ordered=True,
    )


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
