"""Sharpe ratio, Sortino ratio and wealth multiple of a finite return sequence.

Returns are simple per-period returns (0.05 means +5%) and the benchmark
return is zero. Deviations use the population convention ``1/N`` by default;
``convention="n-1"`` switches both deviations to ``1/(N-1)``.

All sums go through :func:`math.fsum`, so long sequences (10^5 periods and
more) are evaluated without accumulated rounding error.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DegenerateSeriesError, InputError, ReturnDomainError

CONVENTIONS = ("n", "n-1")
CSV_HEADER = "return"


@dataclass(frozen=True)
class ReturnSeries:
    """An ordered, validated sequence of per-period simple returns."""

    returns: np.ndarray

    def __post_init__(self):
        arr = np.array(self.returns, dtype=np.float64).ravel()
        if arr.size < 1:
            raise DegenerateSeriesError("a return series needs at least one return")
        if not np.all(np.isfinite(arr)):
            raise ReturnDomainError("returns must be finite numbers")
        if np.any(arr < -1.0):
            worst = float(arr.min())
            raise ReturnDomainError(f"return {worst!r} is below -1 (loss larger than 100%)")
        arr.setflags(write=False)
        object.__setattr__(self, "returns", arr)

    def __len__(self) -> int:
        return int(self.returns.size)

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "ReturnSeries":
        return read_returns_csv(path)


@dataclass(frozen=True)
class RatioReport:
    mean: float
    volatility: float
    downside_deviation: float
    sharpe: float | None
    sortino: float | None
    wealth_multiple: float
    n: int
    convention: str = "n"

    @property
    def losing(self) -> bool:
        return self.wealth_multiple < 1.0


SeriesLike = Union[ReturnSeries, Sequence[float], np.ndarray]


def as_series(series: SeriesLike) -> ReturnSeries:
    if isinstance(series, ReturnSeries):
        return series
    return ReturnSeries(np.asarray(series, dtype=np.float64))


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def log_wealth(series: SeriesLike) -> float:
    """Sum of ``log(1 + x_n)``; ``-inf`` when some return is exactly -1."""
    x = as_series(series).returns
    if np.any(x == -1.0):
        return -math.inf
    return math.fsum(np.log1p(x).tolist())


def wealth_multiple(series: SeriesLike) -> float:
    """Final capital from an initial investment of 1, i.e. ``prod(1 + x_n)``.

    Computed as ``exp`` of the compensated log-sum so that long sequences
    with large single-period gains do not overflow part way through.
    """
    lw = log_wealth(series)
    return 0.0 if lw == -math.inf else math.exp(lw)


def losing(series: SeriesLike) -> bool:
    """True iff the sequence ends with strictly less money than it started."""
    return log_wealth(series) < 0.0


def analyze(series: SeriesLike, convention: str = "n") -> RatioReport:
    """Mean, volatility, downside deviation, Sharpe, Sortino and wealth multiple.

    ``sharpe`` is ``None`` when the volatility is zero and ``sortino`` is
    ``None`` when the downside deviation is zero. The downside deviation is
    the root mean square of the shortfalls below the sample mean.

    Raises DegenerateSeriesError for fewer than two returns and
    ReturnDomainError for any return below -1.
    """
    _check_convention(convention)
    s = as_series(series)
    x = s.returns
    n = x.size
    if n < 2:
        raise DegenerateSeriesError(f"ratios need at least 2 returns, got {n}")

    mu = math.fsum(x.tolist()) / n
    # one correction pass removes the rounding of the division
    mu += math.fsum((x - mu).tolist()) / n
    denom = n if convention == "n" else n - 1
    if x.min() == x.max():
        mu = float(x[0])
        var = down_var = 0.0
    else:
        dev = x - mu
        var = math.fsum((dev * dev).tolist()) / denom
        shortfall = np.maximum(-dev, 0.0)
        down_var = math.fsum((shortfall * shortfall).tolist()) / denom

    sigma = math.sqrt(var)
    sigma_down = math.sqrt(down_var)
    return RatioReport(
        mean=mu,
        volatility=sigma,
        downside_deviation=sigma_down,
        sharpe=mu / sigma if sigma > 0 else None,
        sortino=mu / sigma_down if sigma_down > 0 else None,
        wealth_multiple=wealth_multiple(s),
        n=n,
        convention=convention,
    )


def parse_returns_csv(text: str) -> ReturnSeries:
    """Parse a single-column CSV with header ``return``.

    Blank lines are ignored; LF and CRLF line endings are both accepted.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(f.strip() for f in r)]
    if not rows:
        raise InputError("empty CSV: expected a 'return' header")
    header = [f.strip().lower() for f in rows[0]]
    if header != [CSV_HEADER]:
        raise InputError(f"expected a single column with header {CSV_HEADER!r}, got {rows[0]!r}")
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 1:
            raise InputError(f"row {lineno}: expected one value, got {len(row)}")
        try:
            values.append(float(row[0]))
        except ValueError:
            raise InputError(f"row {lineno}: not a number: {row[0]!r}") from None
    if not values:
        raise DegenerateSeriesError("CSV contains no returns")
    return ReturnSeries(np.array(values))


def read_returns_csv(path: Union[str, Path]) -> ReturnSeries:
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_returns_csv(text)


def write_returns_csv(path: Union[str, Path], returns: Iterable[float]) -> None:
    """Write returns one per row; ``repr`` formatting round-trips exactly."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in returns:
            fh.write(repr(float(r)) + "\n")
