"""High Sharpe ratios computed after losing all the money.

Two constructions:

* deterministic: ``k - 1`` periods of +5% followed by one period of -100%.
  The wealth multiple is 0 while the Sharpe ratio grows without bound in k.
* i.i.d.: each period returns ``gain`` with probability ``(k-1)/k`` and -100%
  with probability ``1/k``. The running Sharpe ratio converges almost surely
  to the Sharpe ratio of that two-point law, and the money is lost as soon
  as the first -100% period occurs.

Random draws come from numpy's PCG64 generator seeded through SeedSequence.
Only raw 64-bit outputs are used and the uniform variate is formed here as
``(raw >> 11) * 2**-53``, so a trajectory depends on nothing but PCG64's
published state transition and seeding rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import InputError
from .metrics import RatioReport, analyze

DEFAULT_GAIN = 0.05
CHECKPOINTS_PER_DECADE = 8


@dataclass(frozen=True)
class IidSpec:
    k: int
    N: int
    gain: float = DEFAULT_GAIN
    seed: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise InputError(f"k must be an integer >= 2, got {self.k}")
        if int(self.N) != self.N or self.N < 2:
            raise InputError(f"N must be an integer >= 2, got {self.N}")
        if not self.gain > 0:
            raise InputError(f"gain must be positive, got {self.gain}")
        if self.seed < 0:
            raise InputError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class TrajectoryPoint:
    n: int
    sharpe: float | None
    sortino: float | None
    wealth: float


def deterministic_returns(k: int, gain: float = DEFAULT_GAIN) -> np.ndarray:
    if int(k) != k or k < 2:
        raise InputError(f"k must be an integer >= 2, got {k}")
    x = np.full(int(k), gain)
    x[-1] = -1.0
    return x


def deterministic_family(k: int, gain: float = DEFAULT_GAIN, convention: str = "n") -> RatioReport:
    """Ratios of ``k - 1`` gains of ``gain`` followed by a total loss."""
    return analyze(deterministic_returns(k, gain), convention=convention)


def population_sharpe_iid(spec: IidSpec) -> float:
    """Sharpe ratio of the two-point law, the almost-sure limit of the running Sharpe ratio."""
    p = 1.0 / spec.k
    mean = spec.gain - (1.0 + spec.gain) * p
    sd = (1.0 + spec.gain) * math.sqrt(p * (1.0 - p))
    return mean / sd


def iid_returns(spec: IidSpec) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    raw = rng.bit_generator.random_raw(spec.N)
    u = (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53
    return np.where(u < 1.0 / spec.k, -1.0, spec.gain)


def checkpoints(N: int, per_decade: int = CHECKPOINTS_PER_DECADE) -> List[int]:
    """``ceil(10**(j/per_decade))`` for j = 0, 1, ... capped at N, deduplicated.

    Starts at 2 (ratios need two returns) and always ends with N.
    """
    out = []
    j = 0
    while True:
        n = min(math.ceil(10 ** (j / per_decade)), N)
        if n >= 2 and (not out or n != out[-1]):
            out.append(n)
        if n >= N:
            break
        j += 1
    return out


def simulate_iid(spec: IidSpec, convention: str = "n") -> List[TrajectoryPoint]:
    """Running Sharpe, Sortino and wealth multiple at log-spaced checkpoints."""
    x = iid_returns(spec)
    traj = []
    for n in checkpoints(spec.N):
        rep = analyze(x[:n], convention=convention)
        traj.append(TrajectoryPoint(n, rep.sharpe, rep.sortino, rep.wealth_multiple))
    return traj


def simulate_iid_with_returns(
    spec: IidSpec, convention: str = "n"
) -> Tuple[List[TrajectoryPoint], np.ndarray]:
    return simulate_iid(spec, convention), iid_returns(spec)


def first_k_exceeding(threshold: float, gain: float = DEFAULT_GAIN, k_max: int = 10**7) -> int:
    """Smallest k whose deterministic sequence has a Sharpe ratio above ``threshold``.

    Uses bisection; the Sharpe ratio increases in k once ``(k - 1) * gain > 1``.
    """
    lo = math.floor(1.0 / gain) + 2
    if (deterministic_family(lo, gain).sharpe or 0.0) > threshold:
        return lo
    hi = lo
    while (deterministic_family(hi, gain).sharpe or 0.0) <= threshold:
        if hi >= k_max:
            raise InputError(f"Sharpe ratio stays below {threshold} up to k={k_max}")
        lo, hi = hi, min(2 * hi, k_max)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if (deterministic_family(mid, gain).sharpe or 0.0) > threshold:
            hi = mid
        else:
            lo = mid
    return hi
