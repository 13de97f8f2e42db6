"""Finite-N checks of the continuum frontier.

Three independent searches over losing sequences:

* :func:`brute_force_sup` enumerates every multiset of size N from a finite
  grid of return levels (the ratios are symmetric in the returns, so order
  does not matter).
* :func:`random_feasible_sup` samples random losing sequences.
* :func:`two_level_discrete` searches length-N sequences built from the two
  levels ``-B`` and ``c``, which should approach the continuum value as N
  grows.

None of them may exceed the frontier value; the continuum value should be
approached by the last one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import InfeasibleSearchError, InputError
from .frontier import _check_kinds, frontier_value
from .metrics import CONVENTIONS, ReturnSeries, analyze, losing

DEFAULT_LEVELS = 41
MAX_BRUTE_N = 6
TIE_TOL = 1e-15
# wealth multiple targeted when a multiset is rescaled onto the losing boundary
BOUNDARY_WEALTH = 1.0 - 1e-9
LOG_MARGIN = 1e-12


@dataclass(frozen=True)
class OracleResult:
    N: int
    grid_spec: str
    best_value: float
    best_series: ReturnSeries
    continuum_value: float
    ratio_kind: str = "sharpe"
    bound_kind: str = "one_sided"
    B: float = float("nan")

    @property
    def gap(self) -> float:
        return self.continuum_value - self.best_value


def _validate(B: float, ratio_kind: str, bound_kind: str, convention: str) -> None:
    _check_kinds(ratio_kind, bound_kind)
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention {convention!r}")
    if not 0.0 < B < 1.0:
        raise InputError(f"B must lie in (0, 1), got {B}")


def _ratio_of(series: np.ndarray, ratio_kind: str, convention: str) -> float:
    rep = analyze(series, convention=convention)
    value = rep.sharpe if ratio_kind == "sharpe" else rep.sortino
    return float("nan") if value is None else value


def default_levels(
    B: float,
    ratio_kind: str = "sharpe",
    bound_kind: str = "one_sided",
    count: int = DEFAULT_LEVELS,
    c_max: Optional[float] = None,
) -> np.ndarray:
    """Return levels spaced geometrically in ``1 + x`` from ``-B`` to ``c_max``.

    ``c_max`` defaults to ``B`` for the two-sided bound and to twice the
    continuum maximizer ``c_star`` for the one-sided bound.
    """
    if bound_kind == "two_sided":
        top = B if c_max is None else min(c_max, B)
    else:
        top = 2.0 * frontier_value(B, ratio_kind, bound_kind).c_star if c_max is None else c_max
    levels = np.expm1(np.linspace(math.log1p(-B), math.log1p(top), count))
    levels[0], levels[-1] = -B, top
    return levels


def split_levels(B: float, c_max: float, count: int = DEFAULT_LEVELS) -> np.ndarray:
    """Levels dense around zero: half geometric on ``[-B, B]``, the rest on ``(B, c_max]``.

    Useful when ``c_max`` is so large that :func:`default_levels` leaves
    almost nothing between ``-B`` and zero.
    """
    if not c_max > B:
        raise InputError("split_levels needs c_max > B")
    inner = count // 2 + 1
    low = np.expm1(np.linspace(math.log1p(-B), math.log1p(B), inner))
    high = np.expm1(np.linspace(math.log1p(B), math.log1p(c_max), count - inner + 1))[1:]
    levels = np.concatenate([low, high])
    levels[0], levels[inner - 1], levels[-1] = -B, B, c_max
    return levels


@lru_cache(maxsize=16)
def _multiset_indices(m: int, n: int) -> np.ndarray:
    """All non-decreasing index tuples of length n over range(m), in lex order."""
    count = math.comb(m + n - 1, n)
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations_with_replacement(range(m), n)),
        dtype=np.int16,
        count=count * n,
    )
    out = flat.reshape(count, n)
    out.setflags(write=False)
    return out


def _batch_ratios(X: np.ndarray, ratio_kind: str, convention: str) -> np.ndarray:
    n = X.shape[1]
    mu = X.mean(axis=1)
    dev = X - mu[:, None]
    denom = n if convention == "n" else n - 1
    if ratio_kind == "sharpe":
        spread = np.sqrt((dev * dev).sum(axis=1) / denom)
    else:
        short = np.maximum(-dev, 0.0)
        spread = np.sqrt((short * short).sum(axis=1) / denom)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = mu / spread
    out[~(spread > 0)] = np.nan
    return out


def _max_scale(X: np.ndarray, B: float, two_sided: bool) -> np.ndarray:
    """Largest factor by which each row can be stretched and stay in bounds."""
    lo = X.min(axis=1)
    with np.errstate(divide="ignore"):
        lam = np.where(lo < 0, B / np.where(lo < 0, -lo, 1.0), np.inf)
        if two_sided:
            hi = X.max(axis=1)
            lam = np.minimum(lam, np.where(hi > 0, B / np.where(hi > 0, hi, 1.0), np.inf))
    return lam


def _scale_to_boundary(x: np.ndarray, lam_max: float) -> np.ndarray:
    """Stretch ``x`` by a factor in ``[1, lam_max]`` so the wealth multiple
    equals ``BOUNDARY_WEALTH``.

    The log wealth of ``lam * x`` is concave in ``lam`` and vanishes at 0, so
    on ``[1, lam_max]`` it crosses the target at most once.
    """
    target = math.log(BOUNDARY_WEALTH)

    def f(lam: float) -> float:
        return math.fsum(np.log1p(lam * x).tolist()) - target

    lo, hi = 1.0, float(lam_max)
    if f(hi) > 0:
        raise InfeasibleSearchError("rescaled multiset does not reach the boundary")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return hi * x


def _select(
    X: np.ndarray,
    values: np.ndarray,
    scale: np.ndarray,
    ratio_kind: str,
    convention: str,
    bounds: tuple,
):
    """Best row with a lexicographic tie-break; the witness is re-checked exactly."""
    values = values.copy()
    if not np.isfinite(values).any():
        raise InfeasibleSearchError("no feasible losing sequence with a defined ratio")
    while True:
        finite = np.isfinite(values)
        if not finite.any():
            break
        top = values[finite].max()
        # rows are in lexicographic order, so the first tied row is the smallest
        idx = int(np.flatnonzero(finite & (values >= top - TIE_TOL))[0])
        x = X[idx]
        if scale[idx] != 1.0:
            try:
                x = np.clip(_scale_to_boundary(x, scale[idx]), *bounds)
            except InfeasibleSearchError:
                values[idx] = np.nan
                continue
        if losing(x):
            value = _ratio_of(x, ratio_kind, convention)
            if np.isfinite(value):
                return x, value
        values[idx] = np.nan
    raise InfeasibleSearchError("no candidate survived exact re-evaluation")


def brute_force_sup(
    B: float,
    N: int,
    levels: Optional[Sequence[float]] = None,
    ratio_kind: str = "sharpe",
    bound_kind: str = "one_sided",
    *,
    convention: str = "n",
    probe_boundary: bool = True,
) -> OracleResult:
    """Best ratio over all multisets of N returns drawn from ``levels``.

    A multiset is feasible if its wealth multiple is below one. With
    ``probe_boundary`` a multiset that is not losing as given is also
    accepted when stretching it towards the bounds (which leaves both
    ratios unchanged) pushes its wealth multiple to ``1 - 1e-9``; the
    witness is then the stretched sequence.
    """
    _validate(B, ratio_kind, bound_kind, convention)
    if not 2 <= N <= MAX_BRUTE_N:
        raise InputError(f"brute force needs 2 <= N <= {MAX_BRUTE_N}, got {N}")
    two_sided = bound_kind == "two_sided"
    lv = default_levels(B, ratio_kind, bound_kind) if levels is None else np.asarray(levels, float)
    lv = np.unique(lv)
    upper = B if two_sided else math.inf
    if lv.size == 0 or lv[0] < -B - 1e-15 or lv[-1] > upper + 1e-15:
        raise InputError(f"levels must lie in [-B, {'B' if two_sided else 'inf'})")

    X = lv[_multiset_indices(int(lv.size), N)]
    values = _batch_ratios(X, ratio_kind, convention)
    logw = np.log1p(X).sum(axis=1)
    feasible = logw < 0.0
    scale = np.ones(X.shape[0])
    if probe_boundary:
        lam = _max_scale(X, B, two_sided)
        stretched = np.log1p(np.minimum(lam, 1e300)[:, None] * X).sum(axis=1)
        probe = ~feasible & np.isfinite(lam) & (stretched < math.log(BOUNDARY_WEALTH))
        scale[probe] = lam[probe]
        feasible |= probe
    values[~feasible] = np.nan

    x, value = _select(X, values, scale, ratio_kind, convention, (-B, upper))
    cont = frontier_value(B, ratio_kind, bound_kind).value
    spec = f"{lv.size} levels in [{lv[0]:.6g}, {lv[-1]:.6g}]"
    return OracleResult(N, spec, value, ReturnSeries(x), cont, ratio_kind, bound_kind, B)


def random_feasible_sup(
    B: float,
    N: int,
    samples: int = 100_000,
    ratio_kind: str = "sharpe",
    bound_kind: str = "one_sided",
    *,
    seed: int = 0,
    c_max: Optional[float] = None,
    convention: str = "n",
) -> OracleResult:
    """Best ratio over ``samples`` random losing sequences of length N.

    Log wealth factors ``log(1 + x)`` are drawn uniformly between ``log(1-B)``
    and ``log(1 + c_max)``. Sequences that are not losing have their gains
    shrunk by a random factor until the log wealth is negative, which keeps
    every return inside its bounds. Sequences without any loss are dropped.
    """
    _validate(B, ratio_kind, bound_kind, convention)
    if N < 2:
        raise InputError("N must be at least 2")
    two_sided = bound_kind == "two_sided"
    if c_max is None:
        c_max = B if two_sided else 2.0 * frontier_value(B, ratio_kind, bound_kind).c_star
    rng = np.random.default_rng(seed)
    lo, hi = math.log1p(-B), math.log1p(c_max)
    Y = rng.uniform(lo, hi, size=(samples, N))
    neg = np.where(Y < 0, Y, 0.0).sum(axis=1)
    pos = np.where(Y > 0, Y, 0.0).sum(axis=1)
    keep = neg < 0
    shrink = np.ones(samples)
    over = keep & (pos + neg >= 0)
    shrink[over] = (-neg[over] / pos[over]) * rng.uniform(0.0, 1.0, size=int(over.sum()))
    Y = np.where(Y > 0, Y * shrink[:, None], Y)
    X = np.expm1(Y)[keep]
    if X.shape[0] == 0:
        raise InfeasibleSearchError("no random losing sequence generated")
    X = np.clip(X, -B, c_max)
    values = _batch_ratios(X, ratio_kind, convention)
    values[~(np.log1p(X).sum(axis=1) < 0.0)] = np.nan
    x, value = _select(X, values, np.ones(X.shape[0]), ratio_kind, convention, (-B, c_max))
    cont = frontier_value(B, ratio_kind, bound_kind).value
    spec = f"{samples} uniform log-wealth samples in [{-B:.6g}, {c_max:.6g}], seed {seed}"
    return OracleResult(N, spec, value, ReturnSeries(x), cont, ratio_kind, bound_kind, B)


def _two_level_ratios(B: float, N: int, ratio_kind: str, bound_kind: str):
    """Best level ``c`` and the resulting ratio for each count k of gains."""
    k = np.arange(1, N, dtype=np.float64)
    loss = -math.log1p(-B)
    # largest c with (1+c)^k (1-B)^(N-k) < 1, shaved in log space
    t = (N - k) / k * loss - LOG_MARGIN
    if bound_kind == "two_sided":
        t = np.minimum(t, math.log1p(B))
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        c = np.expm1(np.minimum(t, 700.0))
        a = k / N
        spread = c + B
        mu = a * c - (1.0 - a) * B
        if ratio_kind == "sharpe":
            r = mu / (np.sqrt(a * (1.0 - a)) * spread)
        else:
            r = mu / (a * np.sqrt(1.0 - a) * spread)
    r[(t > 700.0) | (t <= 0) | ~np.isfinite(r)] = np.nan
    return k.astype(np.int64), c, r


def two_level_discrete(
    B: float,
    N: int,
    ratio_kind: str = "sharpe",
    bound_kind: str = "one_sided",
    *,
    convention: str = "n",
) -> OracleResult:
    """Best losing sequence of length N using the levels ``-B`` and ``c`` only.

    For a fixed number k of periods at ``c`` both ratios increase with
    ``c``, so the best ``c`` is the largest one keeping the wealth multiple
    below one (and at most ``B`` for the two-sided bound). The remaining
    search is over k.
    """
    _validate(B, ratio_kind, bound_kind, convention)
    if N < 2:
        raise InputError("N must be at least 2")
    k, c, r = _two_level_ratios(B, N, ratio_kind, bound_kind)
    if not np.any(np.isfinite(r)):
        raise InfeasibleSearchError(f"no two-level losing sequence of length {N}")
    i = int(np.nanargmax(r))
    kk, cc = int(k[i]), float(c[i])
    x = np.concatenate([np.full(kk, cc), np.full(N - kk, -B)])
    while not losing(x):
        cc = float(np.nextafter(cc, 0.0))
        x[:kk] = cc
    value = _ratio_of(x, ratio_kind, convention)
    cont = frontier_value(B, ratio_kind, bound_kind, convention=convention).value
    spec = f"two levels {{-B, c}}, k={kk} of {N} at c={cc:.6g}"
    return OracleResult(N, spec, value, ReturnSeries(x), cont, ratio_kind, bound_kind, B)


def jackpot_sequence(B: float, N: int) -> ReturnSeries:
    """A losing sequence whose Sortino ratio exceeds the two-level G1(B).

    The first ``N - 1`` returns follow the best two-level Sharpe mixture
    (levels ``-B`` and ``c``), kept slightly on the losing side; the last
    return is a single enormous gain ``R``. Its log cost ``log(1 + R)``
    grows only logarithmically in N while it lifts the mean by ``R / N``,
    and an above-mean return adds nothing to the downside deviation. With
    the lift set to ``var / mean`` of the body, the Sortino ratio tends to
    ``sqrt(1 + F1(B)**2)`` as N grows, which is above the two-level value
    for every B in (0, 1).
    """
    if not 0.0 < B < 1.0:
        raise InputError(f"B must lie in (0, 1), got {B}")
    pt = frontier_value(B, "sharpe", "one_sided")
    a, c = pt.alpha_star, pt.c_star
    mean = a * c - (1.0 - a) * B
    var = a * (1.0 - a) * (c + B) ** 2
    jackpot = var / mean * N
    loss, gain = -math.log1p(-B), math.log1p(c)
    k = math.floor(((N - 1) * loss - math.log1p(jackpot)) / (gain + loss))
    if k < 1:
        raise InputError(f"N={N} is too short to pay for the jackpot period")
    x = np.concatenate([np.full(k, c), np.full(N - 1 - k, -B), [jackpot]])
    while not losing(x):
        k -= 1
        if k < 1:
            raise InfeasibleSearchError("could not make the jackpot sequence lose money")
        x[k] = -B
    return ReturnSeries(x)


def jackpot_result(B: float, N: int, *, convention: str = "n") -> OracleResult:
    series = jackpot_sequence(B, N)
    value = _ratio_of(series.returns, "sortino", convention)
    cont = frontier_value(B, "sortino", "one_sided").value
    spec = f"two-level body of {N - 1} periods plus one jackpot of {series.returns[-1]:.6g}"
    return OracleResult(N, spec, value, series, cont, "sortino", "one_sided", B)
