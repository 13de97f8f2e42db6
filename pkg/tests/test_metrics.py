import math
import statistics
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sharpebound.errors import DegenerateSeriesError, InputError, ReturnDomainError
from sharpebound.metrics import (
    ReturnSeries,
    analyze,
    losing,
    parse_returns_csv,
    read_returns_csv,
    wealth_multiple,
    write_returns_csv,
)

returns = st.floats(min_value=-1.0, max_value=5.0, allow_nan=False, allow_infinity=False)
series_st = st.lists(returns, min_size=2, max_size=40)


def exact_stats(xs):
    """Independent rational-arithmetic evaluation of mean, sd and downside sd."""
    q = [Fraction(x) for x in xs]
    n = len(q)
    m = sum(q) / n
    var = sum((x - m) ** 2 for x in q) / n
    down = sum(max(m - x, 0) ** 2 for x in q) / n
    return float(m), math.sqrt(var), math.sqrt(down)


def test_symmetric_pair():
    rep = analyze([0.1, -0.1])
    assert rep.mean == pytest.approx(0.0, abs=1e-18)
    assert rep.volatility == pytest.approx(0.1, rel=1e-15)
    assert rep.downside_deviation == pytest.approx(math.sqrt(0.005), rel=1e-15)
    assert rep.sharpe == pytest.approx(0.0, abs=1e-15)
    assert rep.sortino == pytest.approx(0.0, abs=1e-15)
    assert rep.wealth_multiple == pytest.approx(0.99, rel=1e-15)


def test_constant_series_has_no_ratios():
    rep = analyze([0.05, 0.05, 0.05])
    assert rep.volatility == 0.0
    assert rep.downside_deviation == 0.0
    assert rep.sharpe is None and rep.sortino is None
    assert rep.wealth_multiple == pytest.approx(1.05**3, rel=1e-15)


def test_deterministic_family_k100():
    # 0.0395, 0.104474, 0.37808 from exact rational evaluation
    rep = analyze([0.05] * 99 + [-1.0])
    assert rep.mean == pytest.approx(0.0395, rel=1e-14)
    assert rep.volatility == pytest.approx(0.1044736808961951, rel=1e-13)
    assert rep.sharpe == pytest.approx(0.3780856543117988, rel=1e-13)
    assert rep.wealth_multiple == 0.0


@pytest.mark.parametrize(
    "xs, expected",
    [
        ((0.05, -0.05), True),
        ((0.0,), False),
        ((0.05,) * 9999 + (-1.0,), True),
        ((0.1, -1 / 11), False),
    ],
)
def test_losing(xs, expected):
    assert losing(xs) is expected


def test_single_return_rejected():
    with pytest.raises(DegenerateSeriesError):
        analyze([0.1])


def test_below_minus_one_rejected():
    with pytest.raises(ReturnDomainError):
        ReturnSeries([0.1, -1.01])
    with pytest.raises(ReturnDomainError):
        analyze([0.1, float("nan")])


def test_unknown_convention():
    with pytest.raises(InputError):
        analyze([0.1, 0.2], convention="bessel")


def test_total_loss_gives_zero_wealth():
    assert wealth_multiple([0.5, -1.0, 3.0]) == 0.0


def test_long_series_against_statistics_module():
    rng = np.random.default_rng(3)
    x = rng.uniform(-0.5, 0.5, size=100_000)
    rep = analyze(x)
    assert rep.mean == pytest.approx(statistics.fmean(x.tolist()), rel=1e-12, abs=1e-16)
    assert rep.volatility == pytest.approx(statistics.pstdev(x.tolist()), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(series_st)
def test_matches_exact_arithmetic(xs):
    if len(set(xs)) == 1:
        return
    m, sd, down = exact_stats(xs)
    rep = analyze(xs)
    assert rep.mean == pytest.approx(m, rel=1e-12, abs=1e-15)
    assert rep.volatility == pytest.approx(sd, rel=1e-10, abs=1e-15)
    assert rep.downside_deviation == pytest.approx(down, rel=1e-10, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(series_st)
def test_downside_below_volatility(xs):
    rep = analyze(xs)
    assert rep.volatility >= 0 and rep.downside_deviation >= 0
    assert rep.downside_deviation <= rep.volatility * (1 + 1e-12)
    if rep.mean > 0 and rep.sharpe is not None and rep.sortino is not None:
        assert rep.sortino >= rep.sharpe * (1 - 1e-12)
    assert (rep.sharpe is None) == (rep.volatility == 0)
    assert (rep.sortino is None) == (rep.downside_deviation == 0)
    assert (rep.wealth_multiple == 0) == (-1.0 in xs)


@settings(max_examples=100, deadline=None)
@given(series_st, st.floats(min_value=-0.5, max_value=0.5))
def test_shift(xs, shift):
    a = analyze(xs)
    b = analyze([x + shift + 1.0 for x in xs])  # +1 keeps every return >= -1
    assert b.mean == pytest.approx(a.mean + shift + 1.0, abs=1e-12)
    assert b.volatility == pytest.approx(a.volatility, rel=1e-9, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(series_st, st.floats(min_value=0.01, max_value=1.0))
def test_scale(xs, lam):
    a = analyze(xs)
    b = analyze([lam * x for x in xs])
    assert b.mean == pytest.approx(lam * a.mean, rel=1e-9, abs=1e-14)
    assert b.volatility == pytest.approx(lam * a.volatility, rel=1e-9, abs=1e-14)
    assert b.downside_deviation == pytest.approx(lam * a.downside_deviation, rel=1e-9, abs=1e-14)
    if a.sharpe is not None and b.sharpe is not None and a.volatility > 1e-6:
        assert b.sharpe == pytest.approx(a.sharpe, rel=1e-9, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(series_st)
def test_sample_convention_factor(xs):
    a = analyze(xs)
    b = analyze(xs, convention="n-1")
    n = len(xs)
    f = math.sqrt(n / (n - 1))
    assert b.volatility == pytest.approx(a.volatility * f, rel=1e-12, abs=1e-300)
    assert b.downside_deviation == pytest.approx(a.downside_deviation * f, rel=1e-12, abs=1e-300)
    if a.sharpe is not None:
        assert b.sharpe == pytest.approx(a.sharpe / f, rel=1e-12, abs=1e-15)


def test_pure_function():
    rng = np.random.default_rng(0)
    x = rng.uniform(-0.9, 2.0, 1000)
    assert analyze(x) == analyze(x.copy())


def test_series_is_read_only():
    s = ReturnSeries([0.1, 0.2])
    with pytest.raises(ValueError):
        s.returns[0] = 5.0


def test_csv_crlf_and_bom(tmp_path):
    p = tmp_path / "r.csv"
    p.write_bytes("﻿return\r\n0.1\r\n-0.1\r\n".encode("utf-8"))
    assert list(read_returns_csv(p).returns) == [0.1, -0.1]


@pytest.mark.parametrize(
    "text",
    ["", "value\n0.1\n", "return\nabc\n", "return\n0.1,0.2\n"],
)
def test_csv_malformed(text):
    with pytest.raises(InputError):
        parse_returns_csv(text)


def test_csv_round_trip(tmp_path):
    x = np.random.default_rng(1).uniform(-1, 3, 500)
    p = tmp_path / "r.csv"
    write_returns_csv(p, x)
    assert np.array_equal(read_returns_csv(p).returns, x)
