"""Recompute the published frontier tables and compare row by row."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional

from .errors import InputError
from .frontier import frontier_value

VALUE_TOL = 0.002
ALPHA_TOL = 0.005

# function name -> (ratio_kind, bound_kind)
FUNCTIONS = {
    "F1": ("sharpe", "one_sided"),
    "F2": ("sharpe", "two_sided"),
    "G1": ("sortino", "one_sided"),
    "G2": ("sortino", "two_sided"),
}
TABLES = {"F1": ("F1",), "F2": ("F2",), "G": ("G1", "G2")}


def c_tolerance(B: float) -> float:
    # the optimum is flat in c, and flatter still for B close to 1
    return 0.1 if B <= 0.9 else 0.05


@dataclass(frozen=True)
class PublishedRow:
    function: str
    B: float
    value: float
    c: Optional[float]
    alpha: float


@dataclass(frozen=True)
class TableRow:
    published: PublishedRow
    value: float
    c_star: float
    alpha_star: float

    @property
    def function(self) -> str:
        return self.published.function

    @property
    def B(self) -> float:
        return self.published.B

    @property
    def value_delta(self) -> float:
        return self.value - self.published.value

    @property
    def alpha_delta(self) -> float:
        return self.alpha_star - self.published.alpha

    @property
    def c_delta(self) -> Optional[float]:
        if self.published.c is None:
            return None
        return self.c_star - self.published.c

    @property
    def ok(self) -> bool:
        good = abs(self.value_delta) <= VALUE_TOL and abs(self.alpha_delta) <= ALPHA_TOL
        if self.c_delta is not None:
            good = good and abs(self.c_delta) <= c_tolerance(self.B)
        if FUNCTIONS[self.function][1] == "two_sided":
            good = good and self.c_star == self.B
        return good


def load_published() -> List[PublishedRow]:
    text = resources.files("sharpebound").joinpath("data/published_tables.csv").read_text("utf-8")
    lines = [ln for ln in io.StringIO(text) if not ln.startswith("#")]
    rows = []
    for rec in csv.DictReader(lines):
        rows.append(
            PublishedRow(
                function=rec["function"],
                B=float(rec["B"]),
                value=float(rec["value"]),
                c=float(rec["c"]) if rec["c"] else None,
                alpha=float(rec["alpha"]),
            )
        )
    return rows


def published_rows(function: str) -> List[PublishedRow]:
    return [r for r in load_published() if r.function == function]


def reproduce(which: str, convention: str = "n") -> List[TableRow]:
    """Recompute every row of table ``which`` (``F1``, ``F2`` or ``G``)."""
    if which not in TABLES:
        raise InputError(f"unknown table {which!r}; expected one of {sorted(TABLES)}")
    out = []
    for fn in TABLES[which]:
        ratio_kind, bound_kind = FUNCTIONS[fn]
        for row in published_rows(fn):
            pt = frontier_value(row.B, ratio_kind, bound_kind, convention=convention)
            out.append(TableRow(row, pt.value, pt.c_star, pt.alpha_star))
    return out


def format_table(rows: List[TableRow]) -> str:
    head = (
        f"{'fn':<3} {'B':>9} {'value':>9} {'published':>9} {'delta':>9} "
        f"{'c_star':>12} {'pub_c':>7} {'alpha':>9} {'pub_a':>6} {'delta':>9}  ok"
    )
    lines = [head, "-" * len(head)]
    for r in rows:
        pub_c = f"{r.published.c:7.2f}" if r.published.c is not None else f"{'-':>7}"
        lines.append(
            f"{r.function:<3} {r.B:>9g} {r.value:9.6f} {r.published.value:9.3f} {r.value_delta:+9.6f} "
            f"{r.c_star:12.6f} {pub_c} {r.alpha_star:9.6f} {r.published.alpha:6.3f} "
            f"{r.alpha_delta:+9.6f}  {'yes' if r.ok else 'NO'}"
        )
    return "\n".join(lines)


def rows_as_dicts(rows: List[TableRow]) -> List[Dict[str, object]]:
    return [
        {
            "function": r.function,
            "B": r.B,
            "value": r.value,
            "published_value": r.published.value,
            "c_star": r.c_star,
            "published_c": "" if r.published.c is None else r.published.c,
            "alpha_star": r.alpha_star,
            "published_alpha": r.published.alpha,
            "ok": int(r.ok),
        }
        for r in rows
    ]
