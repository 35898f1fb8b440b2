"""Two-period repeated cross-sections indexed by (period, treatment level)."""
import csv
import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .empirical import SortedSample, build_sorted
from .errors import EmptyCell, InvalidValue, ParseError, SchemaError, UnknownCell, UnknownLevel

PERIODS = (0, 1)


class Observation(NamedTuple):
    outcome: float
    treatment: str
    period: int


@dataclass(frozen=True)
class TreatmentLevels:
    """Ordered tuple of distinct labels; the first one is the control."""

    levels: tuple
    ordered: bool = False

    def __post_init__(self):
        levels = tuple(str(x) for x in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) < 2:
            raise SchemaError(f"need at least two treatment levels, got {list(levels)}")
        if len(set(levels)) != len(levels):
            raise SchemaError(f"treatment levels must be distinct, got {list(levels)}")

    @property
    def control(self):
        return self.levels[0]

    @property
    def m(self):
        return len(self.levels)

    @property
    def treated(self):
        return self.levels[1:]

    def __contains__(self, level):
        return level in self.levels

    def __iter__(self):
        return iter(self.levels)

    def index(self, level):
        try:
            return self.levels.index(level)
        except ValueError:
            raise UnknownLevel(f"unknown treatment level {level!r}; known: {list(self.levels)}") from None

    def check(self, level):
        self.index(level)
        return level


@dataclass(frozen=True)
class SupportFinding:
    severity: str
    mode: str
    level: str
    reference: str
    bound: str
    value: float
    limit: float
    message: str

    def to_dict(self):
        return {
            "severity": self.severity,
            "mode": self.mode,
            "level": self.level,
            "reference": self.reference,
            "bound": self.bound,
            "value": self.value,
            "limit": self.limit,
            "message": self.message,
        }


@dataclass(eq=False)
class PanelDataset:
    """Validated repeated cross-section.

    ``cells`` maps ``(period, level)`` to the sorted outcomes of that cell.
    ``p_hat`` holds period-1 group shares; ``p_hat_period0`` is the period-0
    counterpart, kept as a composition-stability diagnostic.
    """

    levels: TreatmentLevels
    cells: dict
    warnings: list = field(default_factory=list)
    min_cell_size: int = 2
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for t in PERIODS:
            for d in self.levels:
                s = self.cells.get((t, d))
                if s is None or s.n == 0:
                    raise EmptyCell(t, d)
                if s.n < self.min_cell_size:
                    self.warnings.append(
                        f"WARNING: cell (period={t}, level={d!r}) has {s.n} observation(s), "
                        f"below the minimum cell size {self.min_cell_size}"
                    )

    @classmethod
    def from_arrays(cls, outcome, treatment, period, levels=None, control=None, ordered=False, min_cell_size=2):
        y = np.asarray(outcome, dtype=np.float64)
        d = np.asarray([str(x) for x in treatment], dtype=object)
        t = np.asarray(period, dtype=np.int64)
        if not (y.shape == d.shape == t.shape):
            raise SchemaError("outcome, treatment and period must have the same length")
        if not np.all(np.isfinite(y)):
            raise InvalidValue("outcomes must be finite")
        if not np.all((t == 0) | (t == 1)):
            raise SchemaError("period must be 0 or 1")
        tl = _resolve_levels(sorted(set(d.tolist())), levels, control, ordered)
        unknown = set(d.tolist()) - set(tl.levels)
        if unknown:
            raise UnknownLevel(f"treatment labels {sorted(unknown)} are not among the declared levels {list(tl.levels)}")
        cells = {}
        for tt in PERIODS:
            for lev in tl:
                vals = y[(t == tt) & (d == lev)]
                if vals.size == 0:
                    raise EmptyCell(tt, lev)
                cells[(tt, lev)] = build_sorted(vals)
        return cls(levels=tl, cells=cells, min_cell_size=min_cell_size)

    @classmethod
    def from_cells(cls, cells, levels, min_cell_size=2):
        """Build directly from ``{(period, level): values}``."""
        out = {}
        for key, vals in cells.items():
            out[(int(key[0]), str(key[1]))] = vals if isinstance(vals, SortedSample) else build_sorted(vals)
        if not isinstance(levels, TreatmentLevels):
            levels = TreatmentLevels(tuple(levels))
        return cls(levels=levels, cells=out, min_cell_size=min_cell_size)

    def cell(self, period, level):
        try:
            return self.cells[(period, level)]
        except (KeyError, TypeError):
            raise UnknownCell(f"no cell (period={period!r}, level={level!r})") from None

    def cell_sizes(self):
        return {(t, d): self.cells[(t, d)].n for t in PERIODS for d in self.levels}

    def n_period(self, t):
        return sum(self.cells[(t, d)].n for d in self.levels)

    def _shares(self, t):
        total = self.n_period(t)
        return {d: self.cells[(t, d)].n / total for d in self.levels}

    @property
    def p_hat(self):
        return self._shares(1)

    @property
    def p_hat_period0(self):
        return self._shares(0)

    def pooled(self, t):
        """All period-``t`` outcomes as one sorted sample (cached)."""
        key = ("pooled", t)
        if key not in self._cache:
            vals = np.concatenate([self.cells[(t, d)].values for d in self.levels])
            self._cache[key] = build_sorted(vals)
        return self._cache[key]

    def observations(self):
        """Iterate observations period by period, level by level, ascending outcome."""
        for t in PERIODS:
            for d in self.levels:
                for v in self.cells[(t, d)].values:
                    yield Observation(float(v), d, t)

    def map_outcomes(self, g):
        """New dataset with ``g`` applied elementwise to every outcome.

        ``g`` must be strictly increasing for the result to stay sorted.
        """
        cells = {k: build_sorted(g(s.values)) for k, s in self.cells.items()}
        return PanelDataset(levels=self.levels, cells=cells, min_cell_size=self.min_cell_size)

    def with_levels(self, levels):
        """Same cells under a different (e.g. ordered) level declaration."""
        if set(levels.levels) != set(self.levels.levels):
            raise SchemaError("re-declared levels must contain the same labels")
        return PanelDataset(levels=levels, cells=dict(self.cells), min_cell_size=self.min_cell_size)


def _resolve_levels(found, levels, control, ordered):
    if levels is not None:
        levels = [str(x) for x in levels]
        if control is not None and levels[0] != str(control):
            raise SchemaError(f"ordered levels must start with the control {control!r}, got {levels}")
        return TreatmentLevels(tuple(levels), ordered=bool(ordered))
    if control is None:
        if "0" not in found:
            raise SchemaError("no control level given and no level labelled '0' in the data")
        control = "0"
    control = str(control)
    if control not in found:
        raise EmptyCell(None, control, f"control level {control!r} does not occur in the data")
    rest = [x for x in found if x != control]
    return TreatmentLevels((control, *rest), ordered=False)


def load_csv(
    source,
    outcome="outcome",
    treatment="treatment",
    period="period",
    control=None,
    levels=None,
    ordered=False,
    period_labels=("0", "1"),
    min_cell_size=2,
):
    """Read a UTF-8 CSV with a header row into a :class:`PanelDataset`.

    Parameters
    ----------
    source : path or text stream
    outcome, treatment, period : column names
    control : label of the untreated level; defaults to ``"0"``
    levels : full ordered list of levels (control first). Implies ``ordered``
        when ``ordered`` is true; otherwise only fixes the level set.
    period_labels : labels of the pre and post period in the period column
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, newline="", encoding="utf-8") as fh:
            return _read(fh, outcome, treatment, period, control, levels, ordered, period_labels, min_cell_size)
    return _read(source, outcome, treatment, period, control, levels, ordered, period_labels, min_cell_size)


def _read(fh, outcome, treatment, period, control, levels, ordered, period_labels, min_cell_size):
    if isinstance(fh, io.BufferedIOBase):
        fh = io.TextIOWrapper(fh, encoding="utf-8", newline="")
    reader = csv.DictReader(fh)
    if reader.fieldnames is None:
        raise SchemaError("CSV input has no header row")
    header = [h.strip() for h in reader.fieldnames]
    reader.fieldnames = header
    missing = [c for c in (outcome, treatment, period) if c not in header]
    if missing:
        raise SchemaError(f"missing column(s) {missing}; header has {header}")
    pmap = {str(period_labels[0]): 0, str(period_labels[1]): 1}
    ys, ds, ts = [], [], []
    for row in reader:
        line = reader.line_num
        raw_y = (row.get(outcome) or "").strip()
        try:
            y = float(raw_y)
        except ValueError:
            raise ParseError(f"cannot parse outcome {raw_y!r}", row=line) from None
        if not math.isfinite(y):
            raise ParseError(f"non-finite outcome {raw_y!r}", row=line)
        raw_t = (row.get(period) or "").strip()
        if raw_t not in pmap:
            raise ParseError(f"period {raw_t!r} is not one of {list(pmap)}", row=line)
        d = (row.get(treatment) or "").strip()
        if not d:
            raise ParseError("empty treatment label", row=line)
        ys.append(y)
        ds.append(d)
        ts.append(pmap[raw_t])
    if not ys:
        raise EmptyCell(None, None, "CSV input has no data rows")
    return PanelDataset.from_arrays(ys, ds, ts, levels=levels, control=control, ordered=ordered, min_cell_size=min_cell_size)


def cell(ds, period, level):
    return ds.cell(period, level)


def support_check(ds, mode):
    """Range-containment diagnostics for the support conditions.

    Weak mode: every treated group's period-0 range must sit inside the
    period-0 control range. Strong mode: for each ordered pair (d, d'), group
    d''s period-0 range must sit inside group d's, because group d's time map
    is applied to it. Sample ranges only proxy population supports, so every
    finding is a WARNING.
    """
    if mode not in ("weak", "strong"):
        raise ValueError(f"mode must be 'weak' or 'strong', got {mode!r}")
    pairs = []
    if mode == "weak":
        pairs = [(d, ds.levels.control) for d in ds.levels.treated]
    else:
        pairs = [(dp, d) for d in ds.levels for dp in ds.levels if dp != d]
    findings = []
    for level, ref in pairs:
        s = ds.cell(0, level)
        r = ds.cell(0, ref)
        if s.min < r.min:
            findings.append(
                SupportFinding(
                    "WARNING", mode, level, ref, "lower", s.min, r.min,
                    f"level {level!r}: period-0 minimum {s.min:g} < {r.min:g}, the period-0 minimum of {ref!r}",
                )
            )
        if s.max > r.max:
            findings.append(
                SupportFinding(
                    "WARNING", mode, level, ref, "upper", s.max, r.max,
                    f"level {level!r}: period-0 maximum {s.max:g} > {r.max:g}, the period-0 maximum of {ref!r}",
                )
            )
    return findings
