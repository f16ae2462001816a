from .space import ParamSpec, SearchSpace
from .search import Trial, TunerResult, random_search
from .gp import GaussianProcess, GPFitError
from .bayes import bayes_opt, expected_improvement, latin_hypercube, n_initial
from .select import DEFAULT_SPACES, FAMILY_ORDER, SelectionReport, select_model

__all__ = [
    "DEFAULT_SPACES",
    "FAMILY_ORDER",
    "GPFitError",
    "GaussianProcess",
    "ParamSpec",
    "SearchSpace",
    "SelectionReport",
    "Trial",
    "TunerResult",
    "bayes_opt",
    "expected_improvement",
    "latin_hypercube",
    "n_initial",
    "random_search",
    "select_model",
]
