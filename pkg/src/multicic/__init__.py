"""Changes-in-changes estimation for multi-valued discrete treatments."""
from .dataset import PanelDataset, TreatmentLevels, cell, load_csv, support_check
from .empirical import (
    EmpiricalCDF,
    QuantileFunction,
    SortedSample,
    build_sorted,
    cdf_eval,
    mean,
    quantile_eval,
    rank_map,
)
from .errors import (
    CICError,
    ConfigError,
    EmptyCell,
    InvalidProbability,
    InvalidValue,
    NoLowerLevel,
    NotIdentified,
    OrderingRequired,
    ParseError,
    SchemaError,
    SelfCounterfactual,
    UnknownCell,
    UnknownLevel,
)
from .estimators import (
    EffectEstimate,
    EffectRequest,
    acr,
    acrt,
    ate,
    att,
    counterfactual_strong_conditional,
    counterfactual_strong_unconditional,
    counterfactual_weak,
    did_att,
    estimate,
    qte,
    qtt,
)
from .inference import BootstrapConfig, bootstrap_ci
from .kernels import BACKEND

__version__ = "0.1.0"
