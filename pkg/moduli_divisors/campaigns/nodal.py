"""Nodal quotients N_{g,n}: branch rules, the grid scan and the special-case overlay.

Each cell is certified on the reduced coordinates lambda, psi, delta_irr,
delta_{0;1,0} and delta_{0;0,2} with one of two generator families:

* ``W``:  B|E, D|F and the Weierstrass-type W on 2n points;
* ``UV``: B|E, D|F and the MRC divisor, U for odd g and V for even g.

E replaces B when g+1 is prime and F replaces D when g+n+1 is prime.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, Optional, Sequence, Tuple

from sympy import isprime

from ..core.config import DEFAULT_CONFIG, AppConfig
from ..core.errors import GeneratorDomainError, InvalidContextError
from ..core.state import SpaceContext, Verdict
from ..core.workflow import map_cells
from ..tools.catalog import canonical_class, resolve_generator
from ..tools.certify import Certificate, build_system, reduced_coordinates, solve
from .reference import NODAL_FINAL, NODAL_STANDARD, NODAL_W, ReferenceTable
from .report import CellResult, TableReport

logger = logging.getLogger(__name__)

NODAL_GENERA = tuple(range(5, 24))
FAMILIES = ("W", "UV")

SPECIAL_CELLS: Dict[Tuple[int, int], Tuple[str, ...]] = {
    (10, 6): ("Z_10", "F", "W"),
    (10, 7): ("Z_10", "D", "W"),
    (12, 6): ("D_12", "F", "W"),
    (14, 5): ("B", "Nfold_14_10"),
    (16, 5): ("Z_16", "W"),
    (18, 5): ("Lin_18_10", "D", "W"),
    (21, 2): ("Z_21", "W"),
    (22, 2): ("L_22_4", "E", "W"),
    (22, 3): ("L_22_6", "W"),
}

_RANK = {Verdict.infeasible: 0, Verdict.effective: 1, Verdict.general_type: 2}


def regime(g: int, n: int) -> str:
    if 2 * n <= g - 2:
        return "2n<=g-2"
    if 2 * n == g - 1:
        return "2n=g-1"
    return "2n>=g"


def family_names(g: int, n: int, family: str) -> Tuple[str, ...]:
    """Generator names of one family at (g, n) after the primality swaps."""
    first = "E" if isprime(g + 1) else "B"
    glue = "F" if isprime(g + n + 1) else "D"
    if family == "W":
        return (first, glue, "W")
    if family == "UV":
        return (first, glue, "U" if g % 2 else "V")
    raise InvalidContextError(f"unknown generator family {family!r}")


def certify_names(
    g: int, n: int, names: Sequence[str], config: AppConfig = DEFAULT_CONFIG
) -> Certificate:
    """Certify (g, n) with the named generators on the reduced coordinates.

    Every class is computed on those coordinates only.
    """
    ctx = SpaceContext.nodal(g, n)
    coords = reduced_coordinates(ctx)
    window = frozenset(coords)
    gens = [resolve_generator(name, ctx, window) for name in names]
    system = build_system(canonical_class(ctx, window), gens, coords, config=config)
    return solve(system)


def _result(g: int, n: int, names: Sequence[str], cert: Certificate, branch: str) -> CellResult:
    return CellResult(
        g,
        n,
        cert.verdict,
        tuple(names),
        cert.epsilon,
        cert.conditional,
        branch,
        cert,
    )


def standard_cell(task: Tuple[int, int, Tuple[str, ...], AppConfig]) -> CellResult:
    """Best verdict over the requested families; earlier families win ties."""
    g, n, families, config = task
    best: Optional[CellResult] = None
    for family in families:
        names = family_names(g, n, family)
        try:
            cert = certify_names(g, n, names, config)
        except GeneratorDomainError as exc:
            logger.debug("(%d, %d) family %s unavailable: %s", g, n, family, exc)
            continue
        result = _result(g, n, names, cert, f"{family} {regime(g, n)}")
        if best is None or _RANK[result.verdict] > _RANK[best.verdict]:
            best = result
        if best.verdict is Verdict.general_type:
            break
    if best is None:
        return CellResult(g, n, Verdict.infeasible, branch=regime(g, n))
    return best


def special_cell(task: Tuple[int, int, AppConfig]) -> CellResult:
    g, n, config = task
    names = SPECIAL_CELLS[(g, n)]
    cert = certify_names(g, n, names, config)
    return _result(g, n, names, cert, "special")


def _least_general_type(results: Dict[Tuple[int, int], CellResult], g: int) -> Optional[int]:
    big = [n for (h, n), r in results.items() if h == g and r.verdict is Verdict.general_type]
    return min(big, default=None)


def _reference_for(families: Sequence[str], overlay: bool) -> ReferenceTable:
    if overlay:
        return NODAL_FINAL
    if tuple(families) == ("W",):
        return NODAL_W
    return NODAL_STANDARD


def nodal_campaign(
    g_range: Iterable[int] = NODAL_GENERA,
    n_range: Optional[Iterable[int]] = None,
    families: Sequence[str] = FAMILIES,
    overlay: bool = True,
    config: AppConfig = DEFAULT_CONFIG,
) -> TableReport:
    """Scan (g, n) for n = 1..4g unless ``n_range`` is given, then compare bounds.

    Bounds are only compared with the published table on a full scan.
    """
    genera = sorted(set(g_range))
    bad = [g for g in genera if not 5 <= g <= 23]
    if bad:
        raise InvalidContextError(f"the nodal campaign covers 5 <= g <= 23, got {bad}")
    reference = _reference_for(families, overlay)
    ns = None if n_range is None else sorted(set(n_range))
    cells = [(g, n) for g in genera for n in (ns if ns is not None else range(1, 4 * g + 1))]
    logger.info("nodal campaign %s: %d cells", reference.table_id, len(cells))

    tasks = [(g, n, tuple(families), config) for g, n in cells]
    results: Dict[Tuple[int, int], CellResult] = {
        r.cell: r for r in map_cells(standard_cell, tasks, config.jobs)
    }
    report = TableReport(reference.table_id)
    if overlay:
        report.extras["standard_n_min"] = {
            str(g): _least_general_type(results, g) for g in genera
        }
        wanted = [(g, n, config) for (g, n) in sorted(SPECIAL_CELLS) if (g, n) in results]
        for special in map_cells(special_cell, wanted, config.jobs):
            current = results[special.cell]
            if _RANK[special.verdict] > _RANK[current.verdict]:
                logger.info(
                    "special divisors lift (%d, %d) from %s to %s",
                    special.g,
                    special.n,
                    current.verdict.value,
                    special.verdict.value,
                )
                results[special.cell] = special
            elif special.verdict is not Verdict.general_type:
                report.notes.append(
                    f"special divisors at ({special.g}, {special.n}) "
                    f"give {special.verdict.value} only"
                )

    report.add_cells(results.values())
    report.derive_bounds(genera)
    if ns is None:
        report.expected = {g: e for g, e in reference.expected().items() if g in genera}
        report.compare(reference.exceptions)
    else:
        report.notes.append("partial n range: bounds were not compared")
    for g, missing in report.gaps().items():
        logger.warning("g=%d: no certificate inside [n_min, n_max] at n = %s", g, missing)
        report.notes.append(f"g={g}: gap inside [n_min, n_max] at n = {missing}")
    return report

