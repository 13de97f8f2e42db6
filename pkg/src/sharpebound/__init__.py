"""Best achievable Sharpe and Sortino ratios of return sequences that lose money."""

from .anomaly import IidSpec, deterministic_family, population_sharpe_iid, simulate_iid
from .errors import (
    DegenerateSeriesError,
    DomainError,
    FrontierDivergence,
    InfeasibleSearchError,
    InputError,
    ReturnDomainError,
    SharpeBoundError,
    UndefinedRatioError,
)
from .frontier import (
    FrontierCurve,
    FrontierPoint,
    TwoLevelMix,
    binding_alpha,
    frontier_curve,
    frontier_value,
    mix_moments,
    ratio_of_mix,
)
from .metrics import RatioReport, ReturnSeries, analyze, losing, wealth_multiple
from .oracle import OracleResult, brute_force_sup, random_feasible_sup, two_level_discrete

__version__ = "0.1.0"
