"""Exit criteria for the package; each test prints one PASS/FAIL line in the summary."""

import time

import numpy as np
import pytest

from sharpebound.anomaly import IidSpec, deterministic_family, simulate_iid
from sharpebound.errors import FrontierDivergence, InfeasibleSearchError
from sharpebound.frontier import FIGURE_PANELS, frontier_curve, frontier_value
from sharpebound.oracle import (
    brute_force_sup,
    default_levels,
    random_feasible_sup,
    split_levels,
    two_level_discrete,
)
from sharpebound.tables import ALPHA_TOL, VALUE_TOL, c_tolerance, reproduce

ORACLE_B = (0.1, 0.3, 0.5, 0.7, 0.9)
KINDS = [
    ("sharpe", "one_sided"),
    ("sharpe", "two_sided"),
    ("sortino", "one_sided"),
    ("sortino", "two_sided"),
]
SOUNDNESS_SLACK = 1e-9
_oracle_seconds = []


def _check_rows(rows, expect_rows):
    assert len(rows) == expect_rows
    for r in rows:
        assert abs(r.value_delta) <= VALUE_TOL, f"{r.function}({r.B}) value off by {r.value_delta:+.4f}"
        assert abs(r.alpha_delta) <= ALPHA_TOL, f"{r.function}({r.B}) alpha off by {r.alpha_delta:+.4f}"
        if r.c_delta is not None:
            assert abs(r.c_delta) <= c_tolerance(r.B), f"F1({r.B}) c off by {r.c_delta:+.3f}"


def _timed_table(which, convention):
    t0 = time.perf_counter()
    rows = reproduce(which, convention)
    return rows, time.perf_counter() - t0


@pytest.mark.parametrize("convention", ["n", "n-1"])
def test_c1_table_F1(criterion, convention):
    with criterion(f"1  F1 table, 14 rows (convention {convention})"):
        rows, dt = _timed_table("F1", convention)
        _check_rows(rows, 14)
        assert dt < 1.0


@pytest.mark.parametrize("convention", ["n", "n-1"])
def test_c2_table_F2(criterion, convention):
    with criterion(f"2  F2 table, 6 rows, c = B (convention {convention})"):
        rows, dt = _timed_table("F2", convention)
        _check_rows(rows, 6)
        assert all(r.c_star == r.B for r in rows)
        assert dt < 1.0


@pytest.mark.parametrize("convention", ["n", "n-1"])
def test_c3_table_G(criterion, convention):
    with criterion(f"3  G1/G2 table, 6+6 rows (convention {convention})"):
        rows, dt = _timed_table("G", convention)
        _check_rows(rows, 12)
        assert all(r.c_star == r.B for r in rows if r.function == "G2")
        assert dt < 1.0


def test_c4_limits(criterion):
    with criterion("4  limits F1(1e-3) < 0.05, G1(1e-3) in (1, 1.005), F1(1) diverges"):
        assert frontier_value(1e-3, "sharpe", "one_sided").value < 0.05
        assert 1.0 < frontier_value(1e-3, "sortino", "one_sided").value < 1.005
        with pytest.raises(FrontierDivergence):
            frontier_value(1.0, "sharpe", "one_sided")


def test_c5_ordering(criterion):
    with criterion("5  F1>=F2, G1>=G2, G1>=F1, G2>=F2, all nondecreasing on 50 points"):
        grid = np.linspace(0.01, 0.99, 52)[1:-1]
        v = {k: np.array([frontier_value(B, *k).value for B in grid]) for k in KINDS}
        F1, F2 = v["sharpe", "one_sided"], v["sharpe", "two_sided"]
        G1, G2 = v["sortino", "one_sided"], v["sortino", "two_sided"]
        for hi, lo in [(F1, F2), (G1, G2), (G1, F1), (G2, F2)]:
            assert np.all(hi - lo >= -1e-9)
        for arr in v.values():
            assert np.all(np.diff(arr) >= -1e-9)


@pytest.mark.parametrize("ratio, bound", KINDS)
def test_c6_oracle_soundness(criterion, ratio, bound):
    label = f"6  oracle soundness, {ratio} {bound}: N<=5 exhaustive + 1e5 random per (B, N)"
    with criterion(label):
        t0 = time.perf_counter()
        violations = []
        for B in ORACLE_B:
            cont = frontier_value(B, ratio, bound).value
            grids = [default_levels(B, ratio, bound)]
            if bound == "one_sided":
                grids.append(split_levels(B, 2.0 * frontier_value(B, ratio, bound).c_star))
            feasible = 0
            for levels in grids:
                for N in (2, 3, 4, 5):
                    try:
                        res = brute_force_sup(B, N, levels, ratio, bound)
                    except InfeasibleSearchError:
                        continue
                    feasible += 1
                    if res.best_value > cont + SOUNDNESS_SLACK:
                        violations.append((B, N, "grid", res.best_value, cont, res.best_series.returns))
            for N in (2, 3, 4, 5):
                res = random_feasible_sup(B, N, 100_000, ratio, bound, seed=1000 * N + int(B * 10))
                feasible += 1
                if res.best_value > cont + SOUNDNESS_SLACK:
                    violations.append((B, N, "random", res.best_value, cont, res.best_series.returns))
            assert feasible > 0
        _oracle_seconds.append(time.perf_counter() - t0)
        if violations:
            B, N, how, best, cont, x = violations[0]
            pytest.fail(
                f"{len(violations)} finite sequences beat the two-level value; first: B={B} N={N} ({how}) "
                f"ratio {best:.6f} > {cont:.6f} with returns {np.round(x, 6).tolist()}"
            )


def test_c6_runtime(criterion):
    with criterion("6  oracle soundness runtime < 60 s"):
        assert len(_oracle_seconds) >= 1
        assert sum(_oracle_seconds) < 60.0


@pytest.mark.parametrize("ratio, bound", KINDS)
def test_c7_oracle_convergence(criterion, ratio, bound):
    with criterion(f"7  two-level discrete convergence, {ratio} {bound}"):
        for B in np.round(np.arange(0.1, 1.0, 0.1), 1):
            cont = frontier_value(B, ratio, bound).value
            gaps = [two_level_discrete(B, N, ratio, bound).gap for N in (100, 1000, 10_000)]
            assert gaps[0] >= gaps[1] >= gaps[2]
            assert gaps[2] < 0.01 * cont


def test_c8_deterministic_anomaly(criterion):
    with criterion("8  deterministic k=1e4: Sharpe > 4.7, wealth 0"):
        rep = deterministic_family(10_000)
        assert rep.sharpe > 4.7
        assert rep.wealth_multiple == 0.0


def test_c8_iid_anomaly(criterion):
    with criterion("8  i.i.d. k=1000, N=1e5, 30 seeds: mean Sharpe within 0.05 of 1.4749, wealth 0"):
        finals = [simulate_iid(IidSpec(k=1000, N=100_000, seed=s))[-1] for s in range(30)]
        mean = float(np.mean([p.sharpe for p in finals]))
        assert abs(mean - 1.4749) < 0.05, f"mean final Sharpe {mean:.4f}"
        assert all(p.wealth == 0.0 for p in finals)


@pytest.mark.parametrize("ratio, bound", KINDS)
def test_figures(criterion, ratio, bound, tmp_path):
    from sharpebound import plotting

    with criterion(f"   figure data {ratio} {bound}: two panels, monotone, SVG written"):
        panels = [frontier_curve(lo, hi, n, ratio, bound) for lo, hi, n in FIGURE_PANELS]
        for curve in panels:
            assert len(curve) == 200
            assert np.all(np.diff(curve.values) >= -1e-9)
        assert panels[0].values[-1] == pytest.approx(panels[1].values[0], abs=1e-12)
        svg = plotting.plot_curves(panels, tmp_path / f"{ratio}_{bound}.svg")
        assert "<svg" in svg.read_text()
