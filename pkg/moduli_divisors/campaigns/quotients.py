"""Quotients of M_{g,n} by products of symmetric groups S_{n_1} x ... x S_{n_m}.

Here K_G is bounded below by a fixed combination of the minimal-slope
divisor, the sum of block divisors pulled back from each M_{g,n_k}, the
Weierstrass-type W on all n points and a multiple of psi. The
combination is admissible exactly when a single number f stays at most 13,
so no inequality system has to be solved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from ..core.config import DEFAULT_CONFIG, AppConfig
from ..core.errors import GeneratorDomainError, InvalidContextError
from ..core.picard_basis import delta_irr, delta_orbit, fraction_to_str, lam
from ..core.state import Verdict
from ..core.workflow import map_cells
from ..tools.catalog import (
    a_coefficient,
    antiram_T,
    b_coefficient,
    fgm_F,
    fgm_Ftilde,
    slope_min,
)
from .reference import DIFVAR
from .report import CellResult, TableReport

logger = logging.getLogger(__name__)

THIRTEEN = Fraction(13)
DIFVAR_GENERA = tuple(range(10, 24))
DIFVAR_SPECIAL_GENERA = (10, 12, 16, 21)
BLOCK_CHOICES = ("W", "T", "F", "Ftilde")


@dataclass(frozen=True)
class BlockDatum:
    """a lambda + psi - b_irr delta_irr - b delta_{0,2} + ... on one block."""

    n: int
    choice: str
    a: Fraction
    b_irr: Fraction
    b: Optional[Fraction]


@dataclass(frozen=True)
class FmResult:
    g: int
    partition: Tuple[int, ...]
    epsilon: Optional[Fraction]
    f_value: Optional[Fraction]
    verdict: Verdict
    method: str
    choices: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "partition": list(self.partition),
            "epsilon": None if self.epsilon is None else fraction_to_str(self.epsilon),
            "f": None if self.f_value is None else fraction_to_str(self.f_value),
            "verdict": self.verdict.value,
            "method": self.method,
            "choices": list(self.choices),
        }


def block_datum(g: int, n: int, choice: str = "W") -> BlockDatum:
    if choice == "W":
        return BlockDatum(
            n, choice, -a_coefficient(g, n), Fraction(0), b_coefficient(g, n) if n >= 2 else None
        )
    if choice == "T":
        if n != g - 1:
            raise GeneratorDomainError(f"T_g lives on g-1 = {g - 1} points, not {n}")
        gen = antiram_T(g)
    elif choice == "F":
        if (g - n) % 2:
            raise GeneratorDomainError(f"F_(g,m) needs g-n even, got g={g}, n={n}")
        gen = fgm_F(g, (g - n) // 2)
    elif choice == "Ftilde":
        if (g - n) % 2 == 0:
            raise GeneratorDomainError(f"F~_(g,m) needs g-n odd, got g={g}, n={n}")
        gen = fgm_Ftilde(g, (g - n + 1) // 2)
    else:
        raise GeneratorDomainError(f"unknown block divisor {choice!r}")
    cls = gen.cls
    return BlockDatum(
        n, choice, cls.coeff(lam()), -cls.coeff(delta_irr()), -cls.coeff(delta_orbit(0, 2))
    )


def fm_bound(
    g: int,
    partition: Sequence[int],
    choices: Optional[Sequence[str]] = None,
    special_genera: Optional[Iterable[int]] = None,
) -> FmResult:
    """Decide the quotient by S_{n_1} x ... x S_{n_m} through the f <= 13 test.

    ``choices`` picks the divisor on each block (W by default). With all
    blocks at most g-1 and g >= 24 the quotient is of general type by
    additivity, without any divisor. Otherwise eps = min(b_k - 3) over the
    blocks with n_k >= 2 and

        f = (2 - sum b_irr,k / (1+eps))_+ s + sum a_k / (1+eps)
            - 2 eps a(g,n) / (b(g,n) (1+eps)),

    which is GeneralType when eps > 0 and f <= 13 and Effective when eps = 0,
    max n_k <= g and f <= 13.
    """
    parts = tuple(int(p) for p in partition)
    if not parts or any(p < 1 for p in parts):
        raise InvalidContextError(f"invalid partition {parts}")
    if g < 3:
        raise InvalidContextError(f"need g >= 3, got {g}")
    picked = tuple(choices) if choices is not None else ("W",) * len(parts)
    if len(picked) != len(parts):
        raise InvalidContextError(f"{len(picked)} block choices for {len(parts)} blocks")
    if g >= 24 and max(parts) <= g - 1:
        return FmResult(g, parts, None, None, Verdict.general_type, "additivity", picked)
    if max(parts) < 2:
        raise InvalidContextError(f"partition {parts} has no block with at least two points")

    blocks = [block_datum(g, n, choice) for n, choice in zip(parts, picked)]
    eps = min(blk.b - 3 for blk in blocks if blk.n >= 2 and blk.b is not None)
    total = sum(parts)
    s = slope_min(g, special_genera).slope
    one_eps = 1 + eps
    lead = max(2 - sum(blk.b_irr for blk in blocks) / one_eps, Fraction(0))
    f_value = (
        lead * s
        + sum(blk.a for blk in blocks) / one_eps
        - 2 * eps * a_coefficient(g, total) / (b_coefficient(g, total) * one_eps)
    )
    if eps > 0 and f_value <= THIRTEEN:
        verdict = Verdict.general_type
    elif eps == 0 and max(parts) <= g and f_value <= THIRTEEN:
        verdict = Verdict.effective
    else:
        verdict = Verdict.infeasible
    logger.debug("fm g=%d %s %s: eps=%s f=%s -> %s", g, parts, picked, eps, f_value, verdict.value)
    return FmResult(g, parts, eps, f_value, verdict, "divisor", picked)


def block_candidates(g: int, n: int) -> Tuple[str, ...]:
    """Block divisors tried for a block of n points."""
    out = []
    if n <= g - 2:
        out.append("W")
    if n == g - 1:
        out.append("T")
    if g % 2 == 0 and (g - n) % 2 == 0 and n >= 3:
        out.append("F")
    if g % 2 == 0 and (g - n) % 2 == 1 and n >= 4:
        out.append("Ftilde")
    return tuple(out)


def difvar_cell(task: Tuple[int, int]) -> CellResult:
    """Best verdict for S_n x S_n over the block candidates."""
    g, n = task
    best: Optional[FmResult] = None
    for choice in block_candidates(g, n):
        try:
            result = fm_bound(g, (n, n), (choice, choice), DIFVAR_SPECIAL_GENERA)
        except GeneratorDomainError as exc:
            logger.debug("g=%d n=%d %s unavailable: %s", g, n, choice, exc)
            continue
        if result.verdict is Verdict.general_type:
            best = result
            break
        if best is None:
            best = result
    if best is None:
        return CellResult(g, n, Verdict.infeasible, branch="no block divisor")
    return CellResult(
        g,
        n,
        best.verdict,
        best.choices,
        best.epsilon or Fraction(0),
        True,
        f"f={fraction_to_str(best.f_value) if best.f_value is not None else '-'}",
    )


def difvar_campaign(
    g_range: Iterable[int] = DIFVAR_GENERA, config: AppConfig = DEFAULT_CONFIG
) -> TableReport:
    """n_min(g) for M_{g,2n} / (S_n x S_n), scanning n = 2..g-2."""
    genera = sorted(set(g_range))
    bad = [g for g in genera if not 10 <= g <= 23]
    if bad:
        raise InvalidContextError(f"the S_n x S_n campaign covers 10 <= g <= 23, got {bad}")
    tasks = [(g, n) for g in genera for n in range(2, g - 1)]
    report = TableReport(DIFVAR.table_id)
    report.add_cells(map_cells(difvar_cell, tasks, config.jobs))
    report.derive_bounds(genera)
    report.bounds = {g: (lo, None) for g, (lo, _) in report.bounds.items()}
    report.expected = {g: e for g, e in DIFVAR.expected().items() if g in genera}
    report.compare(DIFVAR.exceptions)
    return report
