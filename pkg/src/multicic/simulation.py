"""Synthetic repeated cross-sections with exact oracles.

A unit in period ``t`` from group ``g`` draws a rank ``U ~ Beta(a_g, b_g)``;
its potential outcome under arm ``d`` is ``h_{t,d}(U)``. Period-0 outcomes are
``h_{0,control}(U)`` and period-1 outcomes are ``h_{1,D}(U)``. Sharing the rank
law across periods is what makes the ranks stable; ``rank_laws_period1``
deliberately breaks that for adversarial designs.

Every structural map is strictly increasing with a closed-form inverse, so
conditional CDFs are ``BetaCDF(h^{-1}(y))`` and conditional quantiles are
``h(BetaPPF(tau))`` with no simulation error.
"""
import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml
from scipy import optimize, special

from . import kernels
from .dataset import PanelDataset, TreatmentLevels
from .empirical import dkw_bound
from .errors import CICError, ConfigError
from .estimators import MODES, EffectRequest, is_identified

_EPS = 1e-15

MAP_PARAMS = {
    "identity": {},
    "affine": {"a": None, "b": 0.0},
    "exp_affine": {"a": None, "b": 0.0},
    "power": {"gamma": None, "scale": 1.0, "shift": 0.0},
    "gaussian_affine": {"a": 1.0, "b": 0.0},
}


@dataclass(frozen=True)
class StructuralMap:
    """Strictly increasing map from ranks in [0, 1] to outcomes.

    ``affine``: a*u + b; ``exp_affine``: exp(a*u + b); ``power``:
    scale*u**gamma + shift; ``gaussian_affine``: a*Phi^{-1}(u) + b.
    """

    name: str
    params: dict = field(default_factory=dict)

    @classmethod
    def build(cls, spec, key="map"):
        if isinstance(spec, str):
            spec = {"name": spec}
        if not isinstance(spec, dict) or "name" not in spec:
            raise ConfigError("map must be a mapping with a 'name'", key)
        name = spec["name"]
        if name not in MAP_PARAMS:
            raise ConfigError(f"unknown map {name!r}; catalog: {sorted(MAP_PARAMS)}", key)
        params = {}
        for p, default in MAP_PARAMS[name].items():
            v = spec.get(p, default)
            if v is None:
                raise ConfigError(f"map {name!r} needs parameter {p!r}", f"{key}.{p}")
            try:
                params[p] = float(v)
            except (TypeError, ValueError):
                raise ConfigError(f"parameter must be a number, got {v!r}", f"{key}.{p}") from None
        extra = set(spec) - set(MAP_PARAMS[name]) - {"name"}
        if extra:
            raise ConfigError(f"unexpected parameter(s) {sorted(extra)} for map {name!r}", key)
        for p in ("a", "gamma", "scale"):
            if p in params and not params[p] > 0:
                raise ConfigError(f"{p} must be > 0 for a strictly increasing map", f"{key}.{p}")
        return cls(name, params)

    def __call__(self, u):
        u = np.asarray(u, dtype=np.float64)
        p = self.params
        if self.name == "identity":
            return u.copy()
        if self.name == "affine":
            return p["a"] * u + p["b"]
        if self.name == "exp_affine":
            return np.exp(p["a"] * u + p["b"])
        if self.name == "power":
            return p["scale"] * u ** p["gamma"] + p["shift"]
        return p["a"] * special.ndtri(u) + p["b"]

    def inverse(self, y):
        """Rank of ``y``, clipped to [0, 1] outside the map's image."""
        y = np.asarray(y, dtype=np.float64)
        p = self.params
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.name == "identity":
                u = y
            elif self.name == "affine":
                u = (y - p["b"]) / p["a"]
            elif self.name == "exp_affine":
                u = np.where(y > 0, (np.log(np.where(y > 0, y, 1.0)) - p["b"]) / p["a"], -np.inf)
            elif self.name == "power":
                z = (y - p["shift"]) / p["scale"]
                u = np.where(z > 0, np.abs(z) ** (1.0 / p["gamma"]), 0.0)
            else:
                u = special.ndtr((y - p["b"]) / p["a"])
        return np.clip(u, 0.0, 1.0)

    def to_dict(self):
        return {"name": self.name, **self.params}


@dataclass(frozen=True)
class RankLaw:
    alpha: float
    beta: float

    @classmethod
    def build(cls, spec, key):
        if isinstance(spec, dict):
            spec = (spec.get("alpha"), spec.get("beta"))
        try:
            a, b = (float(x) for x in spec)
        except (TypeError, ValueError):
            raise ConfigError("rank law must be [alpha, beta] or {alpha, beta}", key) from None
        if not (a > 0 and b > 0):
            raise ConfigError(f"Beta parameters must be > 0, got ({a}, {b})", key)
        return cls(a, b)

    def cdf(self, u):
        return special.betainc(self.alpha, self.beta, np.clip(u, 0.0, 1.0))

    def ppf(self, tau):
        return special.betaincinv(self.alpha, self.beta, tau)

    def mean(self):
        return self.alpha / (self.alpha + self.beta)


@dataclass(frozen=True)
class DgpConfig:
    """Data-generating process over ``levels`` (control first).

    ``maps`` is keyed by ``(period, level)``; ``(0, control)`` and ``(1, d)``
    for every level are required. Period-0 maps for treated arms default to
    the control's and only matter for the latent table.
    """

    levels: TreatmentLevels
    group_probs: dict
    rank_laws: dict
    maps: dict
    mode: str = "strong"
    rank_laws_period1: dict = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"must be one of {list(MODES)}, got {self.mode!r}", "mode")
        lv = self.levels.levels
        if set(self.group_probs) != set(lv):
            raise ConfigError(f"needs exactly one probability per level {list(lv)}", "group_probs")
        for d, p in self.group_probs.items():
            if not (0.0 < p < 1.0):
                raise ConfigError(f"probability must lie strictly between 0 and 1, got {p}", f"group_probs.{d}")
        total = math.fsum(self.group_probs.values())
        if abs(total - 1.0) > 1e-9:
            raise ConfigError(f"probabilities must sum to 1, got {total!r}", "group_probs")
        if set(self.rank_laws) != set(lv):
            raise ConfigError(f"needs one rank law per level {list(lv)}", "rank_laws")
        if self.rank_laws_period1 is not None and set(self.rank_laws_period1) != set(lv):
            raise ConfigError(f"needs one rank law per level {list(lv)}", "rank_laws_period1")
        need = [(0, self.levels.control)] + [(1, d) for d in lv]
        for t, d in need:
            if (t, d) not in self.maps:
                raise ConfigError("missing structural map", f"maps.{t}.{d}")
        for t, d in self.maps:
            if t not in (0, 1) or d not in lv:
                raise ConfigError("map for an unknown period or level", f"maps.{t}.{d}")

    @property
    def conforming(self):
        """True when ranks are stable across periods by construction."""
        return self.rank_laws_period1 is None

    def law(self, t, g):
        if t == 1 and self.rank_laws_period1 is not None:
            return self.rank_laws_period1[g]
        return self.rank_laws[g]

    def map(self, t, d):
        if (t, d) in self.maps:
            return self.maps[(t, d)]
        return self.maps[(0, self.levels.control)]

    @classmethod
    def from_dict(cls, tree):
        if not isinstance(tree, dict):
            raise ConfigError("config must be a key-value mapping", "<root>")
        for k in ("levels", "group_probs", "rank_laws", "maps"):
            if k not in tree:
                raise ConfigError("required key is missing", k)
        raw_levels = tree["levels"]
        if not isinstance(raw_levels, list):
            raise ConfigError("must be a list of labels, control first", "levels")
        try:
            levels = TreatmentLevels(tuple(str(x) for x in raw_levels), ordered=bool(tree.get("ordered", False)))
        except CICError as exc:
            raise ConfigError(str(exc), "levels") from None
        probs = {}
        for d, p in _mapping(tree["group_probs"], "group_probs").items():
            try:
                probs[str(d)] = float(p)
            except (TypeError, ValueError):
                raise ConfigError(f"not a number: {p!r}", f"group_probs.{d}") from None
        laws = {str(d): RankLaw.build(v, f"rank_laws.{d}") for d, v in _mapping(tree["rank_laws"], "rank_laws").items()}
        laws1 = None
        if tree.get("rank_laws_period1") is not None:
            laws1 = {
                str(d): RankLaw.build(v, f"rank_laws_period1.{d}")
                for d, v in _mapping(tree["rank_laws_period1"], "rank_laws_period1").items()
            }
        maps = {}
        for t, per in _mapping(tree["maps"], "maps").items():
            try:
                tt = int(t)
            except (TypeError, ValueError):
                raise ConfigError("period keys must be 0 or 1", f"maps.{t}") from None
            for d, spec in _mapping(per, f"maps.{t}").items():
                maps[(tt, str(d))] = StructuralMap.build(spec, f"maps.{tt}.{d}")
        return cls(levels, probs, laws, maps, str(tree.get("mode", "strong")), laws1)

    def to_dict(self):
        out = {
            "mode": self.mode,
            "levels": list(self.levels.levels),
            "ordered": self.levels.ordered,
            "group_probs": dict(self.group_probs),
            "rank_laws": {d: [r.alpha, r.beta] for d, r in self.rank_laws.items()},
            "maps": {},
        }
        for (t, d), m in sorted(self.maps.items()):
            out["maps"].setdefault(t, {})[d] = m.to_dict()
        if self.rank_laws_period1 is not None:
            out["rank_laws_period1"] = {d: [r.alpha, r.beta] for d, r in self.rank_laws_period1.items()}
        return out


def _mapping(obj, key):
    if not isinstance(obj, dict):
        raise ConfigError("must be a mapping", key)
    return obj


def load_config(path):
    """Read a YAML (or JSON) DGP config file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        tree = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else "<parse>"
        raise ConfigError(f"cannot parse config: {exc}", where) from None
    return DgpConfig.from_dict(tree)


@dataclass(frozen=True)
class Simulation:
    """A simulated dataset plus its quarantined latent table."""

    config: DgpConfig
    dataset: PanelDataset
    latent: dict
    seed: int
    n_per_period: int

    def observed_rows(self):
        """(outcome, treatment, period) rows in generation order."""
        lat = self.latent
        return list(zip(lat["outcome"].tolist(), lat["treatment"].tolist(), lat["period"].tolist()))


def _draw_period(cfg, t, n, rng):
    lv = cfg.levels.levels
    p = np.array([cfg.group_probs[d] for d in lv])
    g = rng.choice(len(lv), size=n, p=p)
    a = np.array([cfg.law(t, d).alpha for d in lv])[g]
    b = np.array([cfg.law(t, d).beta for d in lv])[g]
    u = np.clip(rng.beta(a, b), _EPS, 1.0 - _EPS)
    return g, u


def simulate(cfg, n_per_period, seed):
    """Draw ``n_per_period`` units in each period; deterministic given ``seed``."""
    m = cfg.levels.m
    if int(n_per_period) < 2 * m:
        raise ConfigError(f"n_per_period must be at least {2 * m} for {m} levels", "n")
    lv = cfg.levels.levels
    rng = np.random.default_rng(int(seed))
    cols = {"period": [], "group": [], "rank": [], "outcome": []}
    arms = {d: [] for d in lv}
    for t in (0, 1):
        g, u = _draw_period(cfg, t, int(n_per_period), rng)
        pot = {d: cfg.map(t, d)(u) for d in lv}
        if t == 0:
            y = pot[cfg.levels.control]
        else:
            y = np.choose(g, [pot[d] for d in lv])
        cols["period"].append(np.full(u.shape, t))
        cols["group"].append(g)
        cols["rank"].append(u)
        cols["outcome"].append(y)
        for d in lv:
            arms[d].append(pot[d])
    period = np.concatenate(cols["period"])
    group = np.concatenate(cols["group"])
    names = np.array(lv, dtype=object)
    latent = {
        "unit": np.arange(period.size),
        "period": period,
        "treatment": names[group],
        "rank": np.concatenate(cols["rank"]),
        "outcome": np.concatenate(cols["outcome"]),
    }
    for d in lv:
        latent[f"y_{d}"] = np.concatenate(arms[d])
    ds = PanelDataset.from_arrays(
        latent["outcome"], latent["treatment"], period, levels=lv, ordered=cfg.levels.ordered
    )
    return Simulation(cfg, ds, latent, int(seed), int(n_per_period))


def write_csv(sim, path, outcome="outcome", treatment="treatment", period="period"):
    """Write observed rows in the dataset schema and the latent table beside it.

    Returns the latent file path (``<stem>_latent<suffix>``).
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([outcome, treatment, period])
        for y, d, t in sim.observed_rows():
            w.writerow([repr(float(y)), d, int(t)])
    latent_path = path.with_name(f"{path.stem}_latent{path.suffix or '.csv'}")
    lat = sim.latent
    arm_cols = [k for k in lat if k.startswith("y_")]
    with open(latent_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["unit", "period", "treatment", "rank", *arm_cols])
        for i in range(lat["unit"].size):
            w.writerow(
                [int(lat["unit"][i]), int(lat["period"][i]), lat["treatment"][i], repr(float(lat["rank"][i]))]
                + [repr(float(lat[c][i])) for c in arm_cols]
            )
    return latent_path


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(512)
_TAU_NODES = 0.5 * (_GL_NODES + 1.0)
_TAU_WEIGHTS = 0.5 * _GL_WEIGHTS


@dataclass(frozen=True)
class OracleValue:
    value: float
    oracle_only: bool


class Oracle:
    """Closed-form distributions of every potential outcome under a config."""

    def __init__(self, cfg):
        self.cfg = cfg

    def _groups(self):
        return self.cfg.levels.levels

    def cdf(self, t, d, d_prime, y):
        """``P(Y_{t,d} <= y | D = d_prime)``; ``d_prime=None`` gives the population CDF."""
        u = self.cfg.map(t, d).inverse(y)
        if d_prime is not None:
            return self.cfg.law(t, d_prime).cdf(u)
        return sum(self.cfg.group_probs[g] * self.cfg.law(t, g).cdf(u) for g in self._groups())

    def rank_mixture_ppf(self, t, tau):
        """Inverse of the population rank CDF in period ``t`` (root-finding)."""
        probs = self.cfg.group_probs

        def mix(u):
            return sum(probs[g] * float(self.cfg.law(t, g).cdf(u)) for g in self._groups())

        out = []
        for q in np.atleast_1d(tau):
            if q <= 0.0:
                out.append(0.0)
            elif q >= 1.0:
                out.append(1.0)
            else:
                out.append(optimize.brentq(lambda u: mix(u) - q, 0.0, 1.0, xtol=1e-14))
        return np.array(out)

    def quantile(self, t, d, d_prime, tau):
        if d_prime is not None:
            u = self.cfg.law(t, d_prime).ppf(np.asarray(tau, dtype=np.float64))
        else:
            u = self.rank_mixture_ppf(t, tau)
        return self.cfg.map(t, d)(u)

    def mean(self, t, d, d_prime=None):
        """``E(Y_{t,d} | D = d_prime)`` by 512-node Gauss-Legendre over tau."""
        h = self.cfg.map(t, d)
        if d_prime is not None:
            return float(np.dot(_TAU_WEIGHTS, h(self.cfg.law(t, d_prime).ppf(_TAU_NODES))))
        return math.fsum(self.cfg.group_probs[g] * self.mean(t, d, g) for g in self._groups())

    def iqr(self, t, d, d_prime=None):
        q = self.quantile(t, d, d_prime, [0.25, 0.75])
        return float(q[1] - q[0])

    def effect(self, request):
        """True value of ``request`` under the config, tagged if outside the identified set."""
        r = request
        lv = self.cfg.levels
        d = r.d
        dp = lv.control if r.d_prime is None else r.d_prime
        p = r.parameter
        if p in ("ACR", "ACRT"):
            j = lv.index(d)
            if j == 0:
                raise CICError(f"{d!r} has no lower level")
            dp = lv.levels[j - 1]
        cond = d if r.cond is None else r.cond
        if p == "QTE":
            v = float(self.quantile(1, d, None, r.tau)[0] - self.quantile(1, dp, None, r.tau)[0])
        elif p in ("ATE", "ACR"):
            v = self.mean(1, d) - self.mean(1, dp)
        elif p == "QTT":
            v = float(self.quantile(1, d, cond, r.tau) - self.quantile(1, dp, cond, r.tau))
        elif p in ("ATT", "ACRT"):
            v = self.mean(1, d, cond) - self.mean(1, dp, cond)
        else:
            # the parallel-trends comparator targets ATT(d, control | d)
            v = self.mean(1, d, d) - self.mean(1, lv.control, d)
        identified = is_identified(lv, EffectRequest(p, d=r.d, d_prime=r.d_prime, cond=r.cond, tau=r.tau, mode=self.cfg.mode))
        return OracleValue(float(v), oracle_only=not identified)


def oracle_cdf(cfg, t, d, d_prime, y):
    return Oracle(cfg).cdf(t, d, d_prime, y)


def oracle_effect(cfg, request):
    return Oracle(cfg).effect(request)


@dataclass(frozen=True)
class AuditEntry:
    arm: str
    group: str
    sup_distance: float
    threshold: float
    strictly_increasing: bool
    flagged: bool

    def to_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True)
class AuditReport:
    n: int
    seed: int
    grid_size: int
    alpha: float
    entries: tuple

    @property
    def passed(self):
        return not any(e.flagged for e in self.entries)

    def flagged(self):
        return [e for e in self.entries if e.flagged]

    def entry(self, arm, group):
        for e in self.entries:
            if e.arm == arm and e.group == group:
                return e
        raise KeyError((arm, group))


def empirical_subcopula(values, groups, group, grid):
    """``P(F_n(Y) <= u, D = group)`` on ``grid``, with ``F_n`` the pooled ECDF of ``values``."""
    s = np.sort(values)
    r = kernels.count_le(s, values) / values.size
    sel = np.sort(r[groups == group])
    return kernels.count_le(sel, grid) / values.size


def copula_stability_audit(cfg, n, seed, grid_size=100, alpha=0.01):
    """Compare period-0 and period-1 subcopulas of each audited arm with each group.

    Weak-mode configs audit the control arm only; strong-mode configs audit
    every arm. A pair is flagged when the sup-distance over the grid exceeds
    ``2 * DKW(n, alpha)``. ``strictly_increasing`` is informational: at finite
    ``n`` a group with little mass in a grid cell shows a flat step even when
    its population subcopula is strictly increasing.
    """
    sim = simulate(cfg, n, seed)
    lat = sim.latent
    grid = np.arange(1, grid_size + 1) / grid_size
    arms = [cfg.levels.control] if cfg.mode == "weak" else list(cfg.levels.levels)
    threshold = 2.0 * dkw_bound(n, alpha)
    entries = []
    for arm in arms:
        for g in cfg.levels.levels:
            curves = []
            for t in (0, 1):
                sel = lat["period"] == t
                curves.append(empirical_subcopula(lat[f"y_{arm}"][sel], lat["treatment"][sel], g, grid))
            sup = float(np.max(np.abs(curves[0] - curves[1])))
            mono = bool(all(np.all(np.diff(np.concatenate([[0.0], c])) > 0) for c in curves))
            entries.append(AuditEntry(arm, g, sup, threshold, mono, sup > threshold))
    return AuditReport(int(n), int(seed), int(grid_size), float(alpha), tuple(entries))
