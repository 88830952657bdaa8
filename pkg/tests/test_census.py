import json
from itertools import combinations

import pytest

from ffdigits.census import (
    REPORT_COLUMNS,
    BudgetError,
    census_report,
    count_restricted,
    report_json_line,
    scan,
    write_csv,
    write_json,
)
from ffdigits.charsum import RestrictedSet
from ffdigits.field import get_field
from ffdigits.polys import enumerate_monic, is_irreducible, prime_count

F2 = get_field(2)
F3 = get_field(3)
F4 = get_field(2, 2)
F5 = get_field(5)


def brute_count(R, n):
    allowed = set(R.complement)
    return sum(
        1 for f in enumerate_monic(R.spec, n, allowed=allowed) if is_irreducible(f)
    )


# ---------------------------------------------------------------------------
# exact counts

def test_count_examples():
    assert count_restricted(RestrictedSet.of(F2, 0), 2) == 1
    # only candidate with every lower coefficient 1 is t^3+t^2+t+1 = (t+1)(t^2+1)
    assert count_restricted(RestrictedSet.of(F2, 0), 3) == 0
    assert count_restricted(RestrictedSet.of(F3, 0), 2) == 2
    # no restriction recovers the full irreducible count
    for q, field in [(2, F2), (3, F3), (5, F5)]:
        empty = RestrictedSet(field, frozenset())
        for n in (1, 2, 3, 4):
            assert count_restricted(empty, n) == prime_count(q, n)


def test_count_degree_edge_cases():
    R = RestrictedSet.of(F3, 0)
    assert count_restricted(R, 0) == 0
    # degree 1: t + c is irreducible for every allowed c
    assert count_restricted(R, 1) == 2
    assert count_restricted(RestrictedSet(F3, frozenset()), 1) == 3


@pytest.mark.parametrize("field", [F2, F3, F4, F5])
def test_count_matches_brute_force(field):
    q = field.q
    subsets = [frozenset()]
    subsets += [frozenset(c) for c in combinations(range(q), 1)]
    if q > 3:
        subsets += [frozenset({0, 1}), frozenset({1, q - 1})]
    for forbidden in subsets:
        R = RestrictedSet(field, forbidden)
        for n in range(1, 6):
            if (q - R.s) ** n > 4000:
                continue
            assert count_restricted(R, n) == brute_count(R, n)


def test_parallel_determinism():
    R = RestrictedSet.of(F5, 0)
    reference = count_restricted(R, 5, workers=1)
    assert count_restricted(R, 5, workers=2) == reference
    assert count_restricted(R, 5, workers=4) == reference


def test_budget_error_names_the_budget():
    R = RestrictedSet.of(F5, 0)
    with pytest.raises(BudgetError, match="100"):
        count_restricted(R, 4, budget=100)


# ---------------------------------------------------------------------------
# reports

def test_report_fields():
    R = RestrictedSet.of(F3, 0)
    rep = census_report(R, 4)
    assert rep.q == 3 and rep.s == 1 and rep.n == 4
    assert rep.exact == count_restricted(R, 4)
    assert rep.forbidden == (0,)
    assert rep.error is None
    expected_ratio = rep.exact * 4 * 2 / (3 * 2**4)
    assert abs(rep.ratio - expected_ratio) < 1e-12
    assert rep.elapsed >= 0


def test_report_budget_exceeded_row():
    R = RestrictedSet.of(F5, 0)
    rep = census_report(R, 4, budget=10)
    assert rep.exact is None
    assert rep.ratio is None
    assert rep.error is not None
    assert rep.predictor > 0  # prediction survives the failed enumeration


def test_report_consecutive_column():
    cons = census_report(RestrictedSet.of(F5, 1, 2), 3)
    assert cons.consecutive and cons.consecutive_bound is not None
    gap = census_report(RestrictedSet.of(F5, 0, 2), 3)
    assert not gap.consecutive and gap.consecutive_bound is None


def test_scan_sorted_and_error_isolated():
    R = RestrictedSet.of(F5, 0)
    reports = scan(R, [6, 2, 4], budget=1000)
    assert [rep.n for rep in reports] == [2, 4, 6]
    assert reports[0].error is None and reports[1].error is None
    assert reports[2].error is not None  # 4^6 > 1000, row kept


def test_csv_columns(tmp_path):
    R = RestrictedSet.of(F3, 0)
    path = tmp_path / "out.csv"
    write_csv(scan(R, [2, 3]), path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert len(lines) == 3
    first = dict(zip(REPORT_COLUMNS, lines[1].split(",")))
    assert first["q"] == "3" and first["n"] == "2" and first["exact"] == "2"


def test_json_round_trip(tmp_path):
    R = RestrictedSet.of(F3, 0)
    reports = scan(R, [2, 3])
    path = tmp_path / "out.jsonl"
    write_json(reports, path)
    lines = path.read_text().strip().splitlines()
    assert lines == [report_json_line(rep) for rep in reports]
    rec = json.loads(lines[0])
    assert set(rec) == set(REPORT_COLUMNS)
    assert rec["exact"] == 2


def test_json_line_deterministic():
    R = RestrictedSet.of(F2, 0)
    rep = census_report(R, 3)
    assert report_json_line(rep) == report_json_line(rep)
    rec = json.loads(report_json_line(rep))
    assert rec["forbidden"] == "0"
