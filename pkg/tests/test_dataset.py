import io
import random

import pytest

from multicic import load_csv, support_check
from multicic.dataset import PanelDataset, TreatmentLevels
from multicic.errors import EmptyCell, ParseError, SchemaError, UnknownCell, UnknownLevel

from conftest import MICRO_CSV, make_ds


def test_minimal_file(micro_csv):
    ds = load_csv(micro_csv)
    assert ds.levels.m == 2
    assert ds.levels.control == "0"
    assert ds.cell(0, "A").values.tolist() == [2, 3]
    assert ds.cell(1, "A").values.tolist() == [5, 7]


def test_four_row_file():
    ds = load_csv(io.StringIO("outcome,treatment,period\n1,0,0\n2,0,1\n3,A,0\n4,A,1\n"), min_cell_size=1)
    assert ds.levels.m == 2
    assert ds.cell(0, "0").values.tolist() == [1]
    assert ds.warnings == []


def test_missing_period1_control_rows():
    text = "outcome,treatment,period\n1,0,0\n3,A,0\n4,A,1\n"
    with pytest.raises(EmptyCell) as exc:
        load_csv(io.StringIO(text))
    assert (exc.value.period, exc.value.level) == (1, "0")


def test_ordered_three_levels():
    rows = ["outcome,treatment,period"]
    for lev, base in (("0", 0), ("low", 10), ("high", 20)):
        for t in (0, 1):
            rows += [f"{base + t + k},{lev},{t}" for k in range(3)]
    ds = load_csv(io.StringIO("\n".join(rows) + "\n"), levels=["0", "low", "high"], ordered=True)
    assert ds.levels.m == 3
    assert ds.levels.ordered
    assert ds.levels.levels == ("0", "low", "high")


def test_unordered_levels_not_inferred_lexicographically():
    ds = load_csv(io.StringIO(MICRO_CSV.replace(",A,", ",zz,")))
    assert not ds.levels.ordered


def test_missing_column():
    with pytest.raises(SchemaError):
        load_csv(io.StringIO("y,treatment,period\n1,0,0\n"))


def test_unparsable_row_reports_line():
    text = MICRO_CSV.replace("5,A,1", "five,A,1")
    with pytest.raises(ParseError) as exc:
        load_csv(io.StringIO(text))
    assert exc.value.row == 10


def test_bad_period_and_custom_labels():
    with pytest.raises(ParseError):
        load_csv(io.StringIO(MICRO_CSV.replace("2,A,0", "2,A,2")))
    text = MICRO_CSV.replace(",0\n", ",pre\n").replace(",1\n", ",post\n")
    ds = load_csv(io.StringIO(text), period_labels=("pre", "post"))
    assert ds.cell(1, "A").values.tolist() == [5, 7]


def test_custom_columns_and_control():
    text = MICRO_CSV.replace("outcome,treatment,period", "wage,program,wave").replace(",0,", ",none,")
    ds = load_csv(io.StringIO(text), outcome="wage", treatment="program", period="wave", control="none")
    assert ds.levels.levels == ("none", "A")


def test_unknown_level_in_declared_levels():
    with pytest.raises(UnknownLevel):
        load_csv(io.StringIO(MICRO_CSV), levels=["0", "B"])


def test_cell_lookup(micro):
    assert micro.cell(0, "0").values.tolist() == [1, 2, 3]
    assert micro.cell(1, "A").values.tolist() == [5, 7]
    with pytest.raises(UnknownCell):
        micro.cell(2, "A")
    with pytest.raises(UnknownCell):
        micro.cell(0, "Z")


def test_counts_and_shares(micro):
    for t in (0, 1):
        assert sum(micro.cell(t, d).n for d in micro.levels) == micro.n_period(t)
    assert micro.p_hat == {"0": 0.6, "A": 0.4}
    assert sum(micro.p_hat_period0.values()) == pytest.approx(1.0)
    assert all(0 < p <= 1 for p in micro.p_hat.values())


def test_row_order_does_not_matter():
    lines = MICRO_CSV.strip().split("\n")
    body = lines[1:]
    a = load_csv(io.StringIO(MICRO_CSV))
    for seed in range(5):
        random.Random(seed).shuffle(body)
        b = load_csv(io.StringIO("\n".join([lines[0]] + body) + "\n"))
        assert a.levels == b.levels
        assert a.cells == b.cells


def test_small_cells_warn():
    ds = make_ds({(0, "0"): [1], (1, "0"): [2], (0, "A"): [3, 4], (1, "A"): [5, 6]}, ["0", "A"])
    assert any("minimum cell size" in w for w in ds.warnings)


def test_levels_validation():
    with pytest.raises(SchemaError):
        TreatmentLevels(("0",))
    with pytest.raises(SchemaError):
        TreatmentLevels(("0", "A", "A"))


def test_support_check_examples():
    ok = make_ds({(0, "0"): [1, 2, 3], (1, "0"): [1, 2], (0, "d"): [2, 3], (1, "d"): [1, 2]}, ["0", "d"])
    assert support_check(ok, "weak") == []
    bad = make_ds({(0, "0"): [1, 2, 3], (1, "0"): [1, 2], (0, "d"): [2, 9], (1, "d"): [1, 2]}, ["0", "d"])
    findings = support_check(bad, "weak")
    assert len(findings) == 1
    f = findings[0]
    assert f.severity == "WARNING" and f.level == "d" and f.bound == "upper"
    assert (f.value, f.limit) == (9, 3)
    assert "9 > 3" in f.message


def test_support_check_identical_cells_and_strong_mode():
    same = make_ds({(0, "0"): [1, 2], (1, "0"): [1, 2], (0, "d"): [1, 2], (1, "d"): [1, 2]}, ["0", "d"])
    assert support_check(same, "weak") == []
    assert support_check(same, "strong") == []
    wide = make_ds({(0, "0"): [0, 5], (1, "0"): [1, 2], (0, "d"): [1, 2], (1, "d"): [1, 2]}, ["0", "d"])
    found = support_check(wide, "strong")
    # the control's period-0 range exceeds group d's on both sides
    assert {(f.level, f.reference, f.bound) for f in found} == {("0", "d", "lower"), ("0", "d", "upper")}
