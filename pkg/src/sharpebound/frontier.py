"""Best achievable Sharpe/Sortino ratio of losing return sequences.

For a lower bound ``-B`` on every per-period return, the frontier functions

* ``F1(B)``: sup of the Sharpe ratio, returns in ``[-B, inf)``
* ``F2(B)``: sup of the Sharpe ratio, returns in ``[-B, B]``
* ``G1(B)``, ``G2(B)``: the same for the Sortino ratio

are taken over all lengths N and all sequences whose wealth multiple
``prod(1 + x_n)`` is strictly below one.

The extremal sequences use two return levels only: ``-B`` and some ``c > 0``,
with a fraction ``alpha`` of periods at ``c``. Letting N grow, the sample
moments become those of the two-point law, and the losing condition, taken
at its boundary, fixes ``alpha`` as a function of ``c``::

    alpha * log(1 + c) + (1 - alpha) * log(1 - B) = 0

What remains is a one-dimensional maximization over ``c``, done in
``t = log(1 + c)`` because the Sortino optimum sits at very large ``c``.
Two-level optimality is not proven here; :mod:`sharpebound.oracle` checks it
against brute-force search.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .errors import DomainError, FrontierDivergence, InputError, UndefinedRatioError
from .metrics import CONVENTIONS

RATIO_KINDS = ("sharpe", "sortino")
BOUND_KINDS = ("one_sided", "two_sided")

# (B_from, B_to, points) of the two panels drawn for each frontier function
FIGURE_PANELS = ((0.001, 0.9, 200), (0.9, 0.999, 200))

T_START = (math.log1p(1e-6), math.log1p(10.0))
T_LIMIT = math.log1p(1e12)
T_RTOL = 1e-12
SCAN_POINTS = 32

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TwoLevelMix:
    """Return ``c`` with frequency ``alpha``, return ``-B`` otherwise."""

    B: float
    c: float
    alpha: float
    two_sided: bool = False

    def __post_init__(self):
        if not 0.0 < self.B <= 1.0:
            raise DomainError(f"B must lie in (0, 1], got {self.B}")
        if not self.c > 0.0:
            raise DomainError(f"c must be positive, got {self.c}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.two_sided and self.c > self.B:
            raise DomainError(f"two-sided mixture needs c <= B, got c={self.c}, B={self.B}")


@dataclass(frozen=True)
class FrontierPoint:
    B: float
    ratio_kind: str
    bound_kind: str
    value: float
    c_star: float
    alpha_star: float

    @property
    def log_wealth_drift(self) -> float:
        return log_wealth_drift(self.B, self.c_star, self.alpha_star)


@dataclass(frozen=True)
class FrontierCurve:
    points: Tuple[FrontierPoint, ...]
    B_from: float
    B_to: float
    count: int
    spacing: str = "linear"

    @property
    def B(self) -> np.ndarray:
        return np.array([p.B for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.points])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _check_kinds(ratio_kind: str, bound_kind: str) -> None:
    if ratio_kind not in RATIO_KINDS:
        raise InputError(f"ratio_kind must be one of {RATIO_KINDS}, got {ratio_kind!r}")
    if bound_kind not in BOUND_KINDS:
        raise InputError(f"bound_kind must be one of {BOUND_KINDS}, got {bound_kind!r}")


def mix_moments(mix: TwoLevelMix) -> Tuple[float, float, float]:
    """Mean, standard deviation and downside deviation of a two-level mixture.

    ``-B`` is the only level below the mean, so the downside deviation is
    ``alpha * sqrt(1 - alpha) * (c + B)``.
    """
    a, b, c = mix.alpha, mix.B, mix.c
    spread = c + b
    mu = a * c - (1.0 - a) * b
    sigma = math.sqrt(a * (1.0 - a)) * spread
    sigma_down = a * math.sqrt(1.0 - a) * spread
    return mu, sigma, sigma_down


def log_wealth_drift(B: float, c: float, alpha: float) -> float:
    """Per-period log growth ``alpha*log(1+c) + (1-alpha)*log(1-B)``."""
    return alpha * math.log1p(c) + (1.0 - alpha) * math.log1p(-B)


def binding_alpha(B: float, c: float) -> float:
    """Fraction of periods at ``c`` that makes the mixture break exactly even."""
    if not 0.0 < B < 1.0:
        raise DomainError(f"B must lie in (0, 1), got {B}")
    if not c > 0.0:
        raise DomainError(f"c must be positive, got {c}")
    loss = -math.log1p(-B)
    return loss / (math.log1p(c) + loss)


def ratio_of_mix(mix: TwoLevelMix, ratio_kind: str = "sharpe") -> float:
    _check_kinds(ratio_kind, "one_sided")
    mu, sigma, sigma_down = mix_moments(mix)
    denom = sigma if ratio_kind == "sharpe" else sigma_down
    if denom <= 0.0:
        raise UndefinedRatioError(f"{ratio_kind} ratio undefined: zero deviation")
    return mu / denom


def _binding_ratio(B: float, ratio_kind: str) -> Callable[[float], float]:
    """Ratio at the break-even mixture as a function of ``t = log(1 + c)``."""
    loss = -math.log1p(-B)
    sortino = ratio_kind == "sortino"

    def g(t: float) -> float:
        c = math.expm1(t)
        a = loss / (t + loss)
        spread = c + B
        mu = a * c - (1.0 - a) * B
        if sortino:
            return mu / (a * math.sqrt(1.0 - a) * spread)
        return mu / (math.sqrt(a * (1.0 - a)) * spread)

    return g


def golden_section_max(
    f: Callable[[float], float], a: float, b: float, rtol: float = T_RTOL, max_iter: int = 400
) -> Tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(argmax, max)``."""
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= rtol * max(abs(a), abs(b), 1e-300):
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def bracket_and_maximize(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    limit: float,
    rtol: float = T_RTOL,
    scan: int = SCAN_POINTS,
) -> Tuple[float, float]:
    """Locate the maximum of ``f`` on ``[lo, inf)`` then refine it.

    ``[lo, hi]`` is scanned on a uniform grid; while the best grid point is
    the upper end, ``hi`` is doubled (capped at ``limit``). The golden-section
    search then runs on the two grid cells around the best point.
    """
    while True:
        grid = np.linspace(lo, hi, scan + 1)
        vals = [f(float(t)) for t in grid]
        i = int(np.argmax(vals))
        if i < scan or hi >= limit:
            break
        hi = min(2.0 * hi, limit)
    if i == scan:
        warnings.warn(
            f"maximum not bracketed below t={limit:.3g}; reporting the bracket edge",
            RuntimeWarning,
            stacklevel=3,
        )
        return float(grid[i]), vals[i]
    a = float(grid[max(i - 1, 0)])
    b = float(grid[i + 1])
    return golden_section_max(f, a, b, rtol)


def frontier_value(
    B: float,
    ratio_kind: str = "sharpe",
    bound_kind: str = "one_sided",
    *,
    convention: str = "n",
    t_limit: float = T_LIMIT,
    rtol: float = T_RTOL,
) -> FrontierPoint:
    """Supremum of the ratio over losing sequences with returns bounded by ``B``.

    ``convention`` is accepted for symmetry with :func:`metrics.analyze`: the
    ``1/(N-1)`` convention rescales a length-N ratio by ``sqrt((N-1)/N)``,
    which tends to one along the maximizing sequences, so the supremum is
    the same under either convention.

    Raises FrontierDivergence for the one-sided bound with ``B >= 1`` (a
    single -100% period allows an arbitrarily large ratio) and DomainError
    for ``B <= 0`` or a two-sided bound with ``B >= 1``.
    """
    _check_kinds(ratio_kind, bound_kind)
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention {convention!r}")
    if not B > 0.0:
        raise DomainError(f"B must be positive, got {B}")
    if B >= 1.0:
        if bound_kind == "one_sided":
            raise FrontierDivergence(f"one-sided {ratio_kind} frontier diverges at B={B} (F1(1) = inf)")
        raise DomainError(f"B must be below 1, got {B}")

    g = _binding_ratio(B, ratio_kind)
    if bound_kind == "two_sided":
        # g increases on (0, B], so the cap c <= B binds
        t_star = math.log1p(B)
        c_star = B
        value = g(t_star)
    else:
        t_star, value = bracket_and_maximize(g, T_START[0], T_START[1], t_limit, rtol)
        c_star = math.expm1(t_star)
    return FrontierPoint(
        B=B,
        ratio_kind=ratio_kind,
        bound_kind=bound_kind,
        value=value,
        c_star=c_star,
        alpha_star=binding_alpha(B, c_star),
    )


def frontier_curve(
    B_from: float,
    B_to: float,
    points: int,
    ratio_kind: str = "sharpe",
    bound_kind: str = "one_sided",
    *,
    convention: str = "n",
) -> FrontierCurve:
    """Frontier values on a linear grid of ``points`` bounds from B_from to B_to.

    A single point is allowed when ``B_from == B_to``.
    """
    if points < 1:
        raise InputError(f"points must be at least 1, got {points}")
    if points == 1:
        if B_from != B_to:
            raise InputError("a single-point curve needs B_from == B_to")
    elif not B_from < B_to:
        raise InputError(f"need B_from < B_to, got {B_from} and {B_to}")
    grid = np.linspace(B_from, B_to, points)
    pts = tuple(
        frontier_value(float(b), ratio_kind, bound_kind, convention=convention) for b in grid
    )
    return FrontierCurve(points=pts, B_from=B_from, B_to=B_to, count=points)
