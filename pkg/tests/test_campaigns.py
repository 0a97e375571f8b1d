"""Test cases for the nodal, quotient and hyperelliptic campaigns and the reports."""

import json
import time
from fractions import Fraction

import pytest
from sympy import Interval, Rational

from moduli_divisors.campaigns.hyperelliptic import (
    HYPERELLIPTIC_GENERA,
    ResidualLine,
    feasible_interval,
    feasible_set,
    hyperelliptic_threshold,
    residual_lines,
    threshold_table,
)
from moduli_divisors.campaigns.nodal import (
    family_names,
    nodal_campaign,
    regime,
    special_cell,
    standard_cell,
)
from moduli_divisors.campaigns.quotients import (
    block_candidates,
    DIFVAR_SPECIAL_GENERA,
    block_datum,
    difvar_campaign,
    difvar_cell,
    fm_bound,
)
from moduli_divisors.campaigns.reference import DIFVAR, POINTED, reference_report
from moduli_divisors.campaigns.report import CellResult, ExpectedBound, TableReport
from moduli_divisors.core.config import AppConfig
from moduli_divisors.core.errors import GeneratorDomainError, InvalidContextError
from moduli_divisors.core.picard_basis import delta_orbit, eta0, psi_total
from moduli_divisors.core.state import Provenance, TableName, Verdict
from moduli_divisors.core.workflow import build_workflow, map_cells


def test_regimes():
    """Three regimes split by the sign of 2n - g."""
    assert regime(10, 4) == "2n<=g-2"
    assert regime(9, 4) == "2n=g-1"
    assert regime(10, 5) == "2n>=g"


def test_family_names_follow_primality():
    """E replaces B when g+1 is prime and F replaces D when g+n+1 is prime."""
    assert family_names(23, 1, "W") == ("B", "D", "W")
    assert family_names(10, 1, "UV") == ("E", "D", "V")
    assert family_names(11, 1, "UV") == ("B", "F", "U")
    with pytest.raises(InvalidContextError):
        family_names(10, 1, "XY")


def test_standard_cell(serial_config):
    """N_{23,1} is of general type from the W family."""
    result = standard_cell((23, 1, ("W",), serial_config))
    assert result.verdict is Verdict.general_type
    assert result.generators == ("B", "D", "W")
    assert result.conditional
    assert result.branch == "W 2n<=g-2"


def test_partial_nodal_scan(serial_config):
    """A partial n range is reported without a bound comparison."""
    report = nodal_campaign([23], n_range=[1], config=serial_config)
    assert report.cells[(23, 1)].verdict is Verdict.general_type
    assert report.bounds[23] == (1, 1)
    assert report.mismatches == []
    assert any("partial" in note for note in report.notes)


def test_nodal_campaign_rejects_genus():
    """The scan is defined for 5 <= g <= 23."""
    with pytest.raises(InvalidContextError):
        nodal_campaign([4])


def test_nodal_table_runs_within_a_minute():
    """The whole 5 <= g <= 23 scan finishes in under a minute and matches the table."""
    start = time.perf_counter()
    report = nodal_campaign(config=AppConfig(jobs=4))
    elapsed = time.perf_counter() - start
    assert report.ok
    assert sorted(report.bounds) == list(range(5, 24))
    assert elapsed < 60, f"nodal table took {elapsed:.1f} s"


def test_fm_bound_divisor_method():
    """S_2 x S_2 in genus 23: eps = b(23, 2) - 3 = 5/6."""
    result = fm_bound(23, (2, 2))
    assert result.method == "divisor"
    assert result.epsilon == Fraction(5, 6)
    assert result.f_value < 13
    assert result.verdict is Verdict.general_type
    assert result.to_dict()["epsilon"] == "5/6"


def test_fm_bound_additivity():
    """From genus 24 on, blocks of at most g-1 points need no divisor."""
    result = fm_bound(25, (3, 3))
    assert result.method == "additivity"
    assert result.verdict is Verdict.general_type
    assert result.epsilon is None


def test_fm_bound_rejects_bad_input():
    """Singleton partitions and short choice lists are rejected."""
    with pytest.raises(InvalidContextError):
        fm_bound(23, (1, 1))
    with pytest.raises(InvalidContextError):
        fm_bound(23, (2, 2), ("W",))
    with pytest.raises(InvalidContextError):
        fm_bound(2, (2,))


def test_block_divisors():
    """Block data and candidate lists per block size."""
    with pytest.raises(GeneratorDomainError):
        block_datum(12, 5, "T")
    assert block_datum(12, 11, "T").choice == "T"
    assert block_candidates(12, 11) == ("T", "Ftilde")
    assert block_candidates(12, 6) == ("W", "F")
    assert block_candidates(13, 6) == ("W",)


def test_difvar_campaign_matches_table(serial_config):
    """Every genus 10..23 reproduces the published n_min except the documented genus 12."""
    report = difvar_campaign(config=serial_config)
    assert report.ok
    assert [(m.g, m.column, m.expected, m.actual) for m in report.mismatches] == [
        (12, "n_min", 8, 7)
    ]
    assert report.mismatches[0].documented
    assert report.bounds[12] == (7, None)
    found = {g: lo for g, (lo, _) in report.bounds.items() if g != 12}
    assert found == {g: lo for g, lo in DIFVAR.n_min.items() if g != 12}
    assert all(n <= g - 2 for g, n in report.cells)
    assert {n for g, n in report.cells if g == 15} == set(range(2, 14))


def test_genus_twelve_special_divisor_certifies_seven():
    """The genus 12 minimal-slope divisor makes S_7 x S_7 of general type."""
    assert 12 in DIFVAR_SPECIAL_GENERA
    result = difvar_cell((12, 7))
    assert result.verdict is Verdict.general_type
    assert result.generators == ("W", "W")
    assert result.epsilon == Fraction(10, 51)
    assert result.branch == "f=3122817/241499"
    assert difvar_cell((12, 6)).verdict is not Verdict.general_type


def test_difvar_campaign_rejects_genus():
    """Genus 9 is outside the table."""
    with pytest.raises(InvalidContextError):
        difvar_campaign([9])


@pytest.mark.parametrize("g", range(2, 21))
def test_hyperelliptic_threshold(g):
    """Effective at 4g+6 points, of general type from 4g+7."""
    result = hyperelliptic_threshold(g)
    assert result.effective_at == 4 * g + 6
    assert result.big_from == 4 * g + 7
    assert result.sup_epsilon > 0


def test_hyperelliptic_genera():
    """The default table covers every genus from 2 to 20."""
    assert HYPERELLIPTIC_GENERA == tuple(range(2, 21))


@pytest.mark.parametrize("g", range(2, 21))
def test_eta_zero_vanishes_at_threshold(g):
    """At n = 4g+6 the eta_0 coefficient of E(0) is exactly zero."""
    line = {line.symbol: line for line in residual_lines(g, 4 * g + 6)}[eta0()]
    assert line.constant == 0
    assert line.slope < 0


def test_genus_two_residual_at_threshold():
    """The genus 2 residual at 14 points."""
    lines = {line.symbol: line for line in residual_lines(2, 14)}
    assert lines[psi_total()].constant == 0
    assert lines[psi_total()].slope == 0
    assert lines[delta_orbit(0, 14)].constant > 0


def test_feasible_interval():
    """The window is cut by the lines of nonzero slope."""
    s = eta0()
    up = ResidualLine(s, Fraction(-1, 4), Fraction(1))
    down = ResidualLine(s, Fraction(1, 2), Fraction(-1))
    assert feasible_interval([up, down]) == (Fraction(1, 4), Fraction(1, 2))
    assert feasible_interval([ResidualLine(s, Fraction(-1), Fraction(0))]) is None
    assert feasible_interval([ResidualLine(s, Fraction(-1), Fraction(-1))]) is None
    assert down.vanishing() == "1/2"
    assert ResidualLine(s, Fraction(0), Fraction(0)).vanishing() == "always"


def test_feasible_set_agrees_with_interval():
    """The symbolic window equals the exact one."""
    lines = residual_lines(2, 15)
    lo, hi = feasible_interval(lines)
    assert lo == 0
    assert feasible_set(lines) == Interval(0, Rational(hi.numerator, hi.denominator))


def test_residual_lines_need_more_points_than_genus():
    """n must exceed g."""
    with pytest.raises(InvalidContextError):
        residual_lines(3, 3)


def test_threshold_table(serial_config):
    """The hyperelliptic table matches 4g+7 with a formula provenance."""
    report = threshold_table([2, 3], config=serial_config)
    assert report.ok
    assert report.bounds == {2: (15, None), 3: (19, None)}
    assert report.expected[2].provenance is Provenance.formula
    assert report.cells[(2, 14)].verdict is Verdict.effective
    assert report.extras["2"]["effective_at"] == 14


def test_reference_report():
    """The cataloged pointed table reproduces itself."""
    report = reference_report()
    assert report.ok
    assert report.bounds[10] == (11, None)
    assert report.bounds[4] == (16, None)
    assert report.bounds[23] == (1, None)
    assert report.extras["symmetric"]["12"] == 10
    assert len(report.bounds) == len(POINTED.n_min)


def test_report_comparison_and_output(temp_dir):
    """Mismatches are recorded and the report is written as JSON and CSV."""
    report = TableReport("demo")
    report.add_cells(
        [
            CellResult(7, 3, Verdict.effective),
            CellResult(7, 4, Verdict.general_type, ("B", "D", "W"), Fraction(1, 3)),
            CellResult(7, 6, Verdict.general_type),
            CellResult(7, 5, Verdict.infeasible),
        ]
    )
    report.derive_bounds([7])
    assert report.bounds[7] == (4, 6)
    assert report.gaps() == {7: [5]}
    report.expected = {7: ExpectedBound(7, 4, 10, Provenance.published, "demo")}
    report.compare()
    assert not report.ok
    assert [m.column for m in report.mismatches] == ["n_max"]
    report.compare({7: "known gap"})
    assert report.ok
    assert report.mismatches[0].documented

    paths = report.write(temp_dir)
    assert [p.name for p in paths] == ["demo.json", "demo_cells.csv", "demo_bounds.csv"]
    data = json.loads(paths[0].read_text())
    assert data["table"] == "demo"
    assert data["gaps"] == {"7": [5]}
    frame = report.bounds_frame()
    assert list(frame["match"]) == [False]


def test_map_cells_keeps_order():
    """map_cells returns results in input order, serially or in a pool."""
    assert map_cells(abs, [-3, 1, -2]) == [3, 1, 2]
    assert map_cells(abs, [-3, 1, -2], jobs=2) == [3, 1, 2]


def test_build_workflow_reference(serial_config):
    """The workflow maps table names to campaigns."""
    app = build_workflow(serial_config)
    report = app(TableName.reference)
    assert report.table_id == "pointed"
    assert report.ok


def test_special_cell(serial_config):
    """Special divisors certify (10, 6)."""
    result = special_cell((10, 6, serial_config))
    assert result.generators == ("Z_10", "F", "W")
    assert result.branch == "special"
    assert result.verdict is Verdict.general_type
