"""Effectivity and bigness thresholds of the coarse pointed hyperelliptic loci.

For n points the residual is E(eps) = K - (1 - eps) W - eps psi, read in the
symmetric orbit basis after restricting the Weierstrass-type W, with lambda
eliminated. The locus is effective once E(0) >= 0 and of general type once
E(eps) >= 0 for some eps > 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from sympy import Eq, Interval, Rational, Symbol, solve, solveset

from ..core.config import DEFAULT_CONFIG, AppConfig
from ..core.errors import InvalidContextError
from ..core.picard_basis import BasisSymbol, DivisorClass, fraction_to_str, orbit_basis, psi_class
from ..core.state import Level, SpaceContext, Verdict
from ..core.workflow import map_cells
from ..tools.catalog import canonical_class, weierstrass_orbit
from ..tools.maps import hyperelliptic_restrict
from .reference import hyperelliptic_reference
from .report import CellResult, TableReport

logger = logging.getLogger(__name__)

EPS = Symbol("epsilon")
HYPERELLIPTIC_GENERA = tuple(range(2, 21))


@dataclass
class ResidualLine:
    """c0 + c1 eps on one orbit coordinate."""

    symbol: BasisSymbol
    constant: Fraction
    slope: Fraction

    def expression(self) -> Any:
        return Rational(self.constant.numerator, self.constant.denominator) + Rational(
            self.slope.numerator, self.slope.denominator
        ) * EPS

    def vanishing(self) -> str:
        expr = self.expression()
        if not expr.free_symbols:
            return "always" if expr == 0 else "never"
        return ", ".join(str(root) for root in solve(Eq(expr, 0), EPS))


@dataclass
class ThresholdResult:
    g: int
    effective_at: int
    big_from: int
    sup_epsilon: Fraction
    residuals: Dict[int, List[ResidualLine]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "effective_at": self.effective_at,
            "big_from": self.big_from,
            "sup_epsilon": fraction_to_str(self.sup_epsilon),
            "residuals": {
                str(n): [
                    {
                        "symbol": line.symbol.name,
                        "residual": str(line.expression()),
                        "vanishes_at": line.vanishing(),
                    }
                    for line in lines
                ]
                for n, lines in sorted(self.residuals.items())
            },
        }


def residual_lines(g: int, n: int) -> List[ResidualLine]:
    """Every orbit coordinate of K - (1 - eps) W - eps psi on n > g points."""
    if g < 2 or n <= g:
        raise InvalidContextError(f"the threshold residual needs g >= 2 and n > g, got {g}, {n}")
    ctx = SpaceContext.hyperelliptic(g, n, level=Level.coarse, symmetric=True)
    K = canonical_class(ctx)
    W = hyperelliptic_restrict(weierstrass_orbit(g, n), Level.coarse)
    psi = psi_class(ctx)
    base = K - W
    direction: DivisorClass = W - psi
    base_c = base.as_dict()
    dir_c = direction.as_dict()
    zero = Fraction(0)
    return [
        ResidualLine(sym, base_c.get(sym, zero), dir_c.get(sym, zero)) for sym in orbit_basis(ctx)
    ]


def feasible_interval(lines: Iterable[ResidualLine]) -> Optional[Tuple[Fraction, Fraction]]:
    """[lo, hi] inside [0, 1] where every line is nonnegative, or None."""
    lo, hi = Fraction(0), Fraction(1)
    for line in lines:
        if line.slope > 0:
            lo = max(lo, -line.constant / line.slope)
        elif line.slope < 0:
            hi = min(hi, -line.constant / line.slope)
        elif line.constant < 0:
            return None
    return (lo, hi) if lo <= hi else None


def feasible_set(lines: Iterable[ResidualLine]) -> Any:
    """The same interval computed symbolically, as a sympy set."""
    region: Any = Interval(0, 1)
    for line in lines:
        region = region.intersect(solveset(line.expression() >= 0, EPS, Interval(0, 1)))
    return region


def hyperelliptic_threshold(g: int, limit: Optional[int] = None) -> ThresholdResult:
    """Search n = g+1, g+2, ... for the first effective and the first big locus."""
    if g < 2:
        raise InvalidContextError(f"need g >= 2, got {g}")
    stop = limit if limit is not None else 4 * g + 20
    effective_at: Optional[int] = None
    residuals: Dict[int, List[ResidualLine]] = {}
    for n in range(g + 1, stop + 1):
        lines = residual_lines(g, n)
        window = feasible_interval(lines)
        if window is None:
            continue
        lo, hi = window
        if effective_at is None and lo == 0:
            effective_at = n
            residuals[n] = lines
        if hi > 0:
            residuals[n] = lines
            logger.info("g=%d: effective at n=%s, big from n=%d", g, effective_at, n)
            return ThresholdResult(g, effective_at or n, n, hi, residuals)
    raise InvalidContextError(f"no general type threshold for g={g} up to n={stop}")


def threshold_cell(g: int) -> ThresholdResult:
    return hyperelliptic_threshold(g)


def threshold_table(
    g_range: Iterable[int] = HYPERELLIPTIC_GENERA, config: AppConfig = DEFAULT_CONFIG
) -> TableReport:
    genera = sorted(set(g_range))
    reference = hyperelliptic_reference(genera)
    results = map_cells(threshold_cell, genera, config.jobs)
    report = TableReport(reference.table_id)
    for res in results:
        report.cells[(res.g, res.effective_at)] = CellResult(
            res.g, res.effective_at, Verdict.effective, ("W", "psi"), Fraction(0), False, "eps=0"
        )
        report.cells[(res.g, res.big_from)] = CellResult(
            res.g, res.big_from, Verdict.general_type, ("W", "psi"), res.sup_epsilon, False, "sup"
        )
        report.bounds[res.g] = (res.big_from, None)
        report.extras[str(res.g)] = res.to_dict()
        if res.effective_at != 4 * res.g + 6:
            report.notes.append(f"g={res.g}: effective from n={res.effective_at}, expected 4g+6")
    report.expected = reference.expected()
    report.compare()
    return report
