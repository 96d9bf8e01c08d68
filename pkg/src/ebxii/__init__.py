"""Extended Burr XII distributions F(x) = 1 - (1 + g(x))**(-a).

Four generator functions g, distribution functions, quantiles and sampling,
maximum likelihood with exact derivatives, model comparison and seeded
recovery studies.
"""

from .data import Series, dataset, load_series, reflect_transform
from .dist import EBXII, ModeResult
from .errors import (
    ConditionViolatedError,
    DataError,
    DefectiveDistributionError,
    DomainError,
    EBXIIError,
    InvalidProbabilityError,
    MissingStandardErrorsError,
    NonPositiveDataWarning,
    SingularInformationWarning,
    TieMapError,
)
from .gfun import GSpec, Variant, g_condition_holds, g_d1, g_d2, g_eval, g_support_lb, g_tail_index
from .mle import FitResult, TieMap, confidence_intervals, fit, hessian, loglik, score
from .select import ModelFitSummary, aic, bic, compare
from .sim import Scenario, StudyReport, recovery_scenarios, run_study

__version__ = "0.1.0"

__all__ = [
    "EBXII", "ModeResult", "GSpec", "Variant", "g_eval", "g_d1", "g_d2", "g_support_lb",
    "g_condition_holds", "g_tail_index", "FitResult", "TieMap", "fit", "loglik", "score",
    "hessian", "confidence_intervals", "ModelFitSummary", "aic", "bic", "compare",
    "Scenario", "StudyReport", "recovery_scenarios", "run_study", "Series", "load_series",
    "reflect_transform", "dataset", "EBXIIError", "DomainError", "ConditionViolatedError",
    "DefectiveDistributionError", "InvalidProbabilityError", "TieMapError",
    "MissingStandardErrorsError", "DataError", "SingularInformationWarning",
    "NonPositiveDataWarning",
]
