"""Plug-in changes-in-changes estimators for multi-valued discrete treatments.

Every counterfactual distribution is a *transformed sample*: the points of a
base cell pushed through an empirical time map ``y -> Q_to(F_from(y))``.
Quantiles and means of the counterfactual come from that sample.

Two identification regimes are supported:

``weak``
    Untreated ranks are stable over time within each group. Only effects of a
    treatment on its own group relative to the control are available.
``strong``
    Every arm's ranks are stable over time within each group. All QTE, ATE,
    QTT, ATT, ACR and ACRT parameters are available.
"""
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .empirical import SortedSample, cdf_eval, mean, quantile_eval, rank_map_counted
from .errors import (
    CICError,
    InvalidProbability,
    NoLowerLevel,
    NotIdentified,
    OrderingRequired,
    SelfCounterfactual,
)

MODES = ("weak", "strong")
PARAMETERS = ("QTE", "ATE", "QTT", "ATT", "ACR", "ACRT", "DID_ATT")
QUANTILE_PARAMETERS = ("QTE", "QTT")

WEAK_SCOPE = (
    "under weak rank stability only QTT(tau, d, control | d), ATT(d, control | d) "
    "and ACRT(d2 | d2) with d1 = control are identified"
)


@dataclass(frozen=True)
class CounterfactualDistribution:
    """Identified counterfactual outcome distribution.

    Attributes
    ----------
    kind : {"weak_conditional", "strong_unconditional", "strong_conditional"}
    arm : potential-outcome level whose period-1 distribution this is
    group : conditioning group, or None for the unconditional distribution
    transformed : the counterfactual sample
    composition : labels of the base, from and to cells, for audit output
    out_of_range : base points below the from-cell minimum (rank 0)
    """

    kind: str
    arm: str
    group: Optional[str]
    transformed: SortedSample
    composition: dict
    out_of_range: int
    base: SortedSample = field(repr=False)
    source: SortedSample = field(repr=False)
    target: SortedSample = field(repr=False)

    def cdf(self, y):
        return cdf_eval(self.transformed, y)

    def composition_cdf(self, y):
        """Literal plug-in ``F_base(Q_source(F_target(y)))``.

        Agrees with :meth:`cdf` except at ``y`` where ``n_source * F_target(y)``
        is an integer; there the two differ by the base mass lying strictly
        between two consecutive source order statistics.
        """
        return cdf_eval(self.base, quantile_eval(self.source, cdf_eval(self.target, y)))

    def quantile(self, tau):
        return quantile_eval(self.transformed, tau)

    def mean(self):
        return mean(self.transformed)


def _counterfactual(kind, arm, group, base, base_label, source, source_label, target, target_label):
    vals, zeros = rank_map_counted(base.values, source, target)
    # the map is monotone and base is ascending, so vals is already sorted
    return CounterfactualDistribution(
        kind=kind,
        arm=arm,
        group=group,
        transformed=SortedSample.from_sorted(vals),
        composition={"base": base_label, "from": source_label, "to": target_label},
        out_of_range=zeros,
        base=base,
        source=source,
        target=target,
    )


def _cached(ds, key, build):
    out = ds._cache.get(key)
    if out is None:
        out = build()
        ds._cache[key] = out
    return out


def counterfactual_weak(ds, d):
    """Period-1 untreated outcomes of group ``d``.

    Maps group ``d``'s period-0 sample through the control group's time map.
    """
    ds.levels.check(d)
    c = ds.levels.control
    if d == c:
        raise SelfCounterfactual(f"the control's untreated period-1 outcomes are observed: cell (1, {c!r})")

    def build():
        return _counterfactual(
            "weak_conditional", c, d,
            ds.cell(0, d), [0, d], ds.cell(0, c), [0, c], ds.cell(1, c), [1, c],
        )

    return _cached(ds, ("weak", d), build)


def counterfactual_strong_unconditional(ds, d):
    """Population distribution of the period-1 potential outcome under arm ``d``."""
    ds.levels.check(d)

    def build():
        return _counterfactual(
            "strong_unconditional", d, None,
            ds.pooled(0), [0, "*"], ds.cell(0, d), [0, d], ds.cell(1, d), [1, d],
        )

    return _cached(ds, ("strong_u", d), build)


def counterfactual_strong_conditional(ds, d, d_prime):
    """Distribution of the period-1 potential outcome under arm ``d`` for group ``d_prime``."""
    ds.levels.check(d)
    ds.levels.check(d_prime)

    def build():
        return _counterfactual(
            "strong_conditional", d, d_prime,
            ds.cell(0, d_prime), [0, d_prime], ds.cell(0, d), [0, d], ds.cell(1, d), [1, d],
        )

    return _cached(ds, ("strong_c", d, d_prime), build)


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    B: int
    scheme: str = "stratified-by-cell"
    method: str = "bootstrap-percentile"
    note: str = "bootstrap-percentile, no theoretical guarantee from the identification result"

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "level": self.level,
            "B": self.B,
            "scheme": self.scheme,
            "method": self.method,
            "note": self.note,
        }


@dataclass(frozen=True)
class EffectRequest:
    parameter: str
    d: Optional[str] = None
    d_prime: Optional[str] = None
    cond: Optional[str] = None
    tau: Optional[float] = None
    mode: str = "strong"

    def __post_init__(self):
        p = self.parameter.upper()
        if p == "DID":
            p = "DID_ATT"
        if p not in PARAMETERS:
            raise CICError(f"unknown parameter {self.parameter!r}; expected one of {list(PARAMETERS)}")
        object.__setattr__(self, "parameter", p)
        if self.mode not in MODES:
            raise CICError(f"mode must be one of {MODES}, got {self.mode!r}")
        if p in QUANTILE_PARAMETERS:
            if self.tau is None or not (0.0 < float(self.tau) < 1.0):
                raise InvalidProbability(f"{p} needs tau in (0, 1), got {self.tau!r}")
            object.__setattr__(self, "tau", float(self.tau))
        elif self.tau is not None:
            raise CICError(f"{p} is an average-type parameter and takes no tau")

    def args(self):
        return {"tau": self.tau, "d": self.d, "d_prime": self.d_prime, "cond": self.cond}

    def label(self):
        a = [] if self.tau is None else [f"tau={self.tau:g}"]
        a += [f"{k}={v}" for k, v in (("d", self.d), ("d'", self.d_prime), ("cond", self.cond)) if v is not None]
        return f"{self.parameter}({', '.join(a)})[{self.mode}]"


@dataclass(frozen=True)
class EffectEstimate:
    request: EffectRequest
    value: float
    ci: Optional[ConfidenceInterval] = None

    @property
    def parameter(self):
        return self.request.parameter

    @property
    def mode(self):
        return self.request.mode

    @property
    def args(self):
        return self.request.args()

    def with_ci(self, ci):
        return replace(self, ci=ci)

    def to_dict(self):
        return {
            "parameter": self.parameter,
            "args": self.args,
            "mode": self.mode,
            "value": self.value,
            "ci": None if self.ci is None else self.ci.to_dict(),
        }


def _check_mode(mode):
    if mode not in MODES:
        raise CICError(f"mode must be one of {MODES}, got {mode!r}")


def _conditional_sample(ds, arm, group, mode):
    """Sample representing ``Y_{1,arm} | D = group``."""
    if arm == group:
        return ds.cell(1, group)
    if mode == "weak":
        # callers have already enforced the weak scope: arm is the control
        return counterfactual_weak(ds, group).transformed
    return counterfactual_strong_conditional(ds, arm, group).transformed


def _resolve_treated_args(ds, d, d_prime, cond, mode, parameter):
    _check_mode(mode)
    lv = ds.levels
    lv.check(d)
    d_prime = lv.control if d_prime is None else lv.check(d_prime)
    cond = d if cond is None else lv.check(cond)
    if mode == "weak" and not (d_prime == lv.control and cond == d):
        raise NotIdentified(
            f"{parameter}(d={d}, d'={d_prime} | {cond}) is not identified: {WEAK_SCOPE}; "
            "use mode='strong' (strong rank stability) for it"
        )
    return d_prime, cond


def qtt(ds, tau, d, d_prime=None, cond=None, mode="strong"):
    """Quantile effect of ``d`` versus ``d_prime`` on group ``cond`` at ``tau``."""
    d_prime, cond = _resolve_treated_args(ds, d, d_prime, cond, mode, "QTT")
    req = EffectRequest("QTT", d=d, d_prime=d_prime, cond=cond, tau=tau, mode=mode)
    a = _conditional_sample(ds, d, cond, mode)
    b = _conditional_sample(ds, d_prime, cond, mode)
    return EffectEstimate(req, quantile_eval(a, req.tau) - quantile_eval(b, req.tau))


def att(ds, d, d_prime=None, cond=None, mode="strong"):
    """Average effect of ``d`` versus ``d_prime`` on group ``cond``."""
    d_prime, cond = _resolve_treated_args(ds, d, d_prime, cond, mode, "ATT")
    req = EffectRequest("ATT", d=d, d_prime=d_prime, cond=cond, mode=mode)
    a = _conditional_sample(ds, d, cond, mode)
    b = _conditional_sample(ds, d_prime, cond, mode)
    return EffectEstimate(req, mean(a) - mean(b))


def _resolve_pair(ds, d, d_prime, mode, parameter):
    _check_mode(mode)
    ds.levels.check(d)
    d_prime = ds.levels.control if d_prime is None else ds.levels.check(d_prime)
    if mode == "weak":
        raise NotIdentified(
            f"{parameter}(d={d}, d'={d_prime}) is not identified: {WEAK_SCOPE}; "
            "population-level effects need mode='strong' (strong rank stability)"
        )
    return d_prime


def qte(ds, tau, d, d_prime=None, mode="strong"):
    d_prime = _resolve_pair(ds, d, d_prime, mode, "QTE")
    req = EffectRequest("QTE", d=d, d_prime=d_prime, tau=tau, mode=mode)
    if d == d_prime:
        return EffectEstimate(req, 0.0)
    a = counterfactual_strong_unconditional(ds, d)
    b = counterfactual_strong_unconditional(ds, d_prime)
    return EffectEstimate(req, a.quantile(req.tau) - b.quantile(req.tau))


def ate(ds, d, d_prime=None, mode="strong"):
    d_prime = _resolve_pair(ds, d, d_prime, mode, "ATE")
    req = EffectRequest("ATE", d=d, d_prime=d_prime, mode=mode)
    if d == d_prime:
        return EffectEstimate(req, 0.0)
    a = counterfactual_strong_unconditional(ds, d)
    b = counterfactual_strong_unconditional(ds, d_prime)
    return EffectEstimate(req, a.mean() - b.mean())


def lower_level(ds, d_j):
    """The level one step below ``d_j`` in the declared ordering."""
    if not ds.levels.ordered:
        raise OrderingRequired(
            "average causal responses need ordered treatment levels; declare the ordering explicitly"
        )
    j = ds.levels.index(d_j)
    if j == 0:
        raise NoLowerLevel(f"{d_j!r} is the lowest level; it has no predecessor")
    return ds.levels.levels[j - 1]


def acr(ds, d_j, mode="strong"):
    """ATE of ``d_j`` against the next-lower level."""
    lower = lower_level(ds, d_j)
    if mode == "weak":
        _resolve_pair(ds, d_j, lower, mode, "ACR")
    est = ate(ds, d_j, lower, mode=mode)
    return EffectEstimate(replace(est.request, parameter="ACR"), est.value)


def acrt(ds, d_j, cond=None, mode="strong"):
    """ATT of ``d_j`` against the next-lower level, on group ``cond`` (default ``d_j``)."""
    lower = lower_level(ds, d_j)
    est = att(ds, d_j, lower, cond, mode=mode)
    return EffectEstimate(replace(est.request, parameter="ACRT"), est.value)


def did_att(ds, d, mode="strong"):
    """Mean-based difference-in-differences comparator under parallel trends."""
    ds.levels.check(d)
    c = ds.levels.control
    value = (mean(ds.cell(1, d)) - mean(ds.cell(0, d))) - (mean(ds.cell(1, c)) - mean(ds.cell(0, c)))
    return EffectEstimate(EffectRequest("DID_ATT", d=d, d_prime=c, cond=d, mode=mode), value)


def estimate(ds, request):
    """Evaluate an :class:`EffectRequest` on ``ds``."""
    r = request
    p = r.parameter
    if p == "QTT":
        return qtt(ds, r.tau, r.d, r.d_prime, r.cond, r.mode)
    if p == "ATT":
        return att(ds, r.d, r.d_prime, r.cond, r.mode)
    if p == "QTE":
        return qte(ds, r.tau, r.d, r.d_prime, r.mode)
    if p == "ATE":
        return ate(ds, r.d, r.d_prime, r.mode)
    if p == "ACR":
        return acr(ds, r.d, r.mode)
    if p == "ACRT":
        return acrt(ds, r.d, r.cond, r.mode)
    return did_att(ds, r.d, r.mode)


def curve(ds, request, taus):
    """Quantile-type ``request`` evaluated across ``taus``; returns a float array."""
    return np.array([estimate(ds, replace(request, tau=float(t))).value for t in taus])


def out_of_range_counts(ds, mode):
    """Zero-rank hits for every composition the chosen mode uses."""
    out = {}
    lv = ds.levels
    if mode == "weak":
        for d in lv.treated:
            out[f"weak({d})"] = counterfactual_weak(ds, d).out_of_range
    else:
        for d in lv:
            out[f"strong({d})"] = counterfactual_strong_unconditional(ds, d).out_of_range
            for g in lv:
                if g != d:
                    out[f"strong({d}|{g})"] = counterfactual_strong_conditional(ds, d, g).out_of_range
    return out


def is_identified(levels, request):
    """Whether ``request`` lies in the identified set of its mode (no data needed).

    The parallel-trends comparator is always computable and counts as available.
    """
    r = request
    p = r.parameter
    if p == "DID_ATT":
        return True
    if p in ("ACR", "ACRT"):
        if not levels.ordered or levels.index(r.d) == 0:
            return False
    if r.mode == "strong":
        return True
    if p in ("QTE", "ATE", "ACR"):
        return False
    if p == "ACRT":
        lower = levels.levels[levels.index(r.d) - 1]
        return lower == levels.control and (r.cond is None or r.cond == r.d)
    return (r.d_prime is None or r.d_prime == levels.control) and (r.cond is None or r.cond == r.d)
