from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import pandas as pd

from ..core.picard_basis import fraction_to_str
from ..core.state import Provenance, Verdict
from ..tools.certify import Certificate

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass
class CellResult:
    g: int
    n: int
    verdict: Verdict
    generators: Tuple[str, ...] = ()
    epsilon: Fraction = Fraction(0)
    conditional: bool = False
    branch: str = ""
    certificate: Optional[Certificate] = None

    @property
    def cell(self) -> Cell:
        return (self.g, self.n)

    def to_dict(self, with_certificate: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "g": self.g,
            "n": self.n,
            "verdict": self.verdict.value,
            "generators": list(self.generators),
            "epsilon": fraction_to_str(self.epsilon),
            "conditional": self.conditional,
            "branch": self.branch,
        }
        if with_certificate and self.certificate is not None:
            data["certificate"] = self.certificate.to_dict(include_inputs=False)
        return data


@dataclass(frozen=True)
class ExpectedBound:
    g: int
    n_min: Optional[int]
    n_max: Optional[int]
    provenance: Provenance
    source: str


@dataclass(frozen=True)
class Mismatch:
    g: int
    column: str
    expected: Optional[int]
    actual: Optional[int]
    documented: bool = False
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "column": self.column,
            "expected": self.expected,
            "actual": self.actual,
            "documented": self.documented,
            "note": self.note,
        }


@dataclass
class TableReport:
    """Per-cell verdicts, derived bounds and the comparison with expected values."""

    table_id: str
    cells: Dict[Cell, CellResult] = field(default_factory=dict)
    bounds: Dict[int, Tuple[Optional[int], Optional[int]]] = field(default_factory=dict)
    expected: Dict[int, ExpectedBound] = field(default_factory=dict)
    mismatches: List[Mismatch] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    extras: Dict[str, Any] = field(default_factory=dict)

    def add_cells(self, results: Iterable[CellResult]) -> None:
        for result in sorted(results, key=lambda r: r.cell):
            self.cells[result.cell] = result

    def derive_bounds(self, genera: Iterable[int]) -> None:
        """n_min and n_max over the GeneralType cells of each genus."""
        for g in genera:
            big = sorted(
                n
                for (h, n), r in self.cells.items()
                if h == g and r.verdict is Verdict.general_type
            )
            self.bounds[g] = (big[0], big[-1]) if big else (None, None)

    def compare(self, documented: Optional[Mapping[int, str]] = None) -> None:
        """Fill ``mismatches``; genera listed in ``documented`` are flagged, not failed."""
        documented = documented or {}
        self.mismatches = []
        for g, exp in sorted(self.expected.items()):
            actual = self.bounds.get(g, (None, None))
            for column, want, got in (
                ("n_min", exp.n_min, actual[0]),
                ("n_max", exp.n_max, actual[1]),
            ):
                if want is None or want == got:
                    continue
                note = documented.get(g, "")
                self.mismatches.append(Mismatch(g, column, want, got, bool(note), note))
                if note:
                    logger.warning("%s g=%d %s: documented exception (%s)", self.table_id, g, column, note)
                else:
                    logger.warning(
                        "%s g=%d %s: expected %s, got %s", self.table_id, g, column, want, got
                    )

    @property
    def ok(self) -> bool:
        return not any(not m.documented for m in self.mismatches)

    def gaps(self) -> Dict[int, List[int]]:
        """n values inside [n_min, n_max] that were not certified."""
        out: Dict[int, List[int]] = {}
        for g, (lo, hi) in sorted(self.bounds.items()):
            if lo is None or hi is None:
                continue
            missing = [
                n
                for n in range(lo, hi + 1)
                if (g, n) in self.cells and self.cells[(g, n)].verdict is not Verdict.general_type
            ]
            if missing:
                out[g] = missing
        return out

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "g": r.g,
                "n": r.n,
                "verdict": r.verdict.value,
                "generators": "+".join(r.generators),
                "epsilon": fraction_to_str(r.epsilon),
                "conditional": r.conditional,
            }
            for r in self.cells.values()
        ]
        return pd.DataFrame(rows, columns=["g", "n", "verdict", "generators", "epsilon", "conditional"])

    def bounds_frame(self) -> pd.DataFrame:
        rows = []
        for g in sorted(set(self.bounds) | set(self.expected)):
            lo, hi = self.bounds.get(g, (None, None))
            exp = self.expected.get(g)
            exp_lo = exp.n_min if exp else None
            exp_hi = exp.n_max if exp else None
            match = exp is None or (
                (exp_lo is None or exp_lo == lo) and (exp_hi is None or exp_hi == hi)
            )
            rows.append(
                {
                    "g": g,
                    "n_min": lo,
                    "n_max": hi,
                    "expected_n_min": exp_lo,
                    "expected_n_max": exp_hi,
                    "match": match,
                }
            )
        columns = ["g", "n_min", "n_max", "expected_n_min", "expected_n_max", "match"]
        return pd.DataFrame(rows, columns=columns).astype(
            {"n_min": "Int64", "n_max": "Int64", "expected_n_min": "Int64", "expected_n_max": "Int64"}
        )

    def to_dict(self, with_certificates: bool = False) -> Dict[str, Any]:
        return {
            "table": self.table_id,
            "ok": self.ok,
            "bounds": [
                {
                    "g": g,
                    "n_min": lo,
                    "n_max": hi,
                    "expected": None
                    if g not in self.expected
                    else {
                        "n_min": self.expected[g].n_min,
                        "n_max": self.expected[g].n_max,
                        "provenance": self.expected[g].provenance.value,
                        "source": self.expected[g].source,
                    },
                }
                for g, (lo, hi) in sorted(self.bounds.items())
            ],
            "cells": [r.to_dict(with_certificates) for r in self.cells.values()],
            "mismatches": [m.to_dict() for m in self.mismatches],
            "gaps": {str(g): ns for g, ns in self.gaps().items()},
            "notes": list(self.notes),
            "extras": self.extras,
        }

    def to_json(self, with_certificates: bool = False) -> str:
        return json.dumps(self.to_dict(with_certificates), indent=2)

    def write(self, out_dir: Path) -> List[Path]:
        """Write <table>.json, <table>_cells.csv and <table>_bounds.csv."""
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = [
            out_dir / f"{self.table_id}.json",
            out_dir / f"{self.table_id}_cells.csv",
            out_dir / f"{self.table_id}_bounds.csv",
        ]
        paths[0].write_text(self.to_json(with_certificates=True))
        self.to_frame().to_csv(paths[1], index=False)
        self.bounds_frame().to_csv(paths[2], index=False)
        logger.info("wrote %s", ", ".join(str(p) for p in paths))
        return paths
