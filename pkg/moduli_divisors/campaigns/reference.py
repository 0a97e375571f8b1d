"""Published bounds kept as data, each value tagged with where it comes from."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from ..core.state import Provenance, TableName
from .report import ExpectedBound, TableReport


@dataclass(frozen=True)
class ReferenceTable:
    table_id: str
    source: str
    n_min: Dict[int, int]
    n_max: Dict[int, int] = field(default_factory=dict)
    provenance: Provenance = Provenance.published
    exceptions: Dict[int, str] = field(default_factory=dict)

    def expected(self) -> Dict[int, ExpectedBound]:
        return {
            g: ExpectedBound(g, lo, self.n_max.get(g), self.provenance, self.source)
            for g, lo in sorted(self.n_min.items())
        }


def _by_genus(first: int, values: Sequence[int]) -> Dict[int, int]:
    return {first + k: v for k, v in enumerate(values)}


POINTED = ReferenceTable(
    "pointed",
    "pointed moduli spaces of general type for n >= n_min (Logan; Farkas)",
    _by_genus(4, [16, 15, 16, 15, 14, 13, 11, 12, 11, 11, 10, 10, 9, 9, 9, 7, 6, 4, 4, 1]),
)

SYMMETRIC = ReferenceTable(
    "symmetric",
    "symmetric quotients of pointed moduli of general type (Farkas-Verra)",
    _by_genus(12, [10, 11, 10, 10, 9, 9, 10, 7, 6, 4, 7, 1]),
)

_NODAL_N_MAX = _by_genus(
    5, [10, 14, 18, 21, 25, 28, 32, 35, 38, 42, 46, 49, 52, 56, 60, 63, 66, 70, 74]
)

NODAL_W = ReferenceTable(
    TableName.prop1.value,
    "nodal quotients certified by B|E, D|F and W",
    _by_genus(7, [9, 8, 8, 8, 6, 7, 6, 6, 6, 6, 5, 6, 4, 4, 3, 4, 1]),
    {g: 2 * g - 4 for g in range(7, 24)},
)

NODAL_STANDARD = ReferenceTable(
    TableName.prop2.value,
    "nodal quotients certified by B|E, D|F and W or U|V",
    _by_genus(5, [9, 9, 8, 8, 8, 8, 6, 7, 6, 6, 6, 6, 5, 6, 4, 4, 3, 4, 1]),
    _NODAL_N_MAX,
)

NODAL_FINAL = ReferenceTable(
    TableName.nodal.value,
    "nodal quotients of general type, including the special divisors",
    _by_genus(5, [9, 9, 8, 8, 8, 6, 6, 6, 6, 5, 6, 5, 5, 5, 4, 4, 2, 2, 1]),
    _NODAL_N_MAX,
    exceptions={
        22: "the special divisors at (22, 2) only certify effectivity, so n_min stays at 3",
    },
)

DIFVAR = ReferenceTable(
    TableName.difvar.value,
    "quotients by S_n x S_n of general type",
    _by_genus(10, [7, 8, 8, 7, 7, 7, 6, 6, 7, 5, 4, 3, 5, 2]),
    exceptions={
        12: (
            "the genus 12 divisor of slope 6+563/642 certifies (12, 7): "
            "W on both blocks, eps = 10/51, f = 3122817/241499 <= 13, so n_min is 7"
        ),
    },
)


def hyperelliptic_reference(genera: Sequence[int]) -> ReferenceTable:
    """Effective from 4g+6 points on, of general type from 4g+7."""
    return ReferenceTable(
        TableName.hyperelliptic.value,
        "pointed hyperelliptic loci: effective at 4g+6, general type from 4g+7",
        {g: 4 * g + 7 for g in genera},
        provenance=Provenance.formula,
    )


REFERENCE_TABLES: Dict[str, ReferenceTable] = {
    table.table_id: table
    for table in (POINTED, SYMMETRIC, NODAL_W, NODAL_STANDARD, NODAL_FINAL, DIFVAR)
}


def pointed_reference_table(table: Optional[ReferenceTable] = None) -> TableReport:
    """Emit a cataloged table as a report whose bounds are the data itself."""
    table = table or POINTED
    report = TableReport(table.table_id)
    report.expected = table.expected()
    report.bounds = {g: (exp.n_min, exp.n_max) for g, exp in report.expected.items()}
    report.notes.append(f"cataloged reference data: {table.source}")
    return report


def reference_report() -> TableReport:
    """The pointed table with the symmetric-quotient bounds attached as an extra."""
    report = pointed_reference_table(POINTED)
    report.extras["symmetric"] = {str(g): v for g, v in sorted(SYMMETRIC.n_min.items())}
    return report
