import math

import pytest

from ffdigits.charsum import RestrictedSet, lemma6_bound, s_r_at
from ffdigits.checks import (
    CHECKS,
    PINNED_Q17_NO_ZERO,
    check_corollary1,
    check_corollary2,
    check_identity,
    check_lemma1,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    check_partition,
    check_pnt,
    check_theorem_trend,
    run_check,
)
from ffdigits.field import get_field
from ffdigits.laurent import RationalPoint, frac_digits
from ffdigits.polys import Poly

F5 = get_field(5)


def test_registry_ids():
    expected = {
        "pnt",
        "identity",
        "lemma1",
        "lemma2",
        "corollary1",
        "lemma3",
        "lemma4",
        "lemma5",
        "lemma6",
        "corollary2",
        "partition",
        "theorem_trend",
    }
    assert set(CHECKS) == expected


def test_run_check_unknown_id():
    with pytest.raises(ValueError, match="unknown check"):
        run_check("lemma99")


def test_result_shape():
    result = check_partition(cases=((2, 2),))
    assert result.passed
    assert result.cases == 1
    assert result.witnesses == []
    d = result.to_dict()
    assert d["check"] == "partition"
    assert d["pass"] is True
    assert d["cases"] == 1


def test_pnt_small_grid():
    result = check_pnt(enum_qs=(2, 3), enum_n_max=5, ident_qs=(2, 5), ident_n_max=8)
    assert result.passed
    assert result.cases == 2 * 5 + 2 * 8


def test_identity_check():
    assert check_identity().passed


def test_lemma1_check():
    result = check_lemma1(q=3, ns=(4,))
    assert result.passed
    assert result.cases > 0


def test_corollary_checks():
    assert check_corollary1(qs=(2, 3, 5), n_max=2).passed
    assert check_corollary2(ps=(3, 5), n_max=3).passed


def test_lemma3_check_narrow():
    assert check_lemma3(qs=(3,), n_max=4).passed


def test_lemma4_check_narrow():
    assert check_lemma4(qs=(3,), ds=(1, 2), ns=(4,)).passed


def test_lemma5_check():
    result = check_lemma5(qs=(2, 3), d_max=4)
    assert result.passed


def test_lemma6_check_narrow():
    result = check_lemma6(ps=(5,), n_max=4)
    assert result.passed
    assert result.params["s_max"] == "p-2"


def test_lemma6_counterexample_at_s_equals_p_minus_one():
    # With a single allowed coefficient every digit weight has modulus one, so
    # |S_R(a/g)| = 1 identically, while the consecutive pointwise bound
    # (p-s)^n exp(-[n/d]/p^3) dips below 1.  The verification grid therefore
    # stops at s = p - 2; this pins the excluded case.
    R = RestrictedSet.of(F5, 0, 1, 2, 3)
    assert R.is_consecutive and R.s == 4
    x = RationalPoint(Poly.one(F5), Poly(F5, (1, 1)))
    n = 3
    value = abs(s_r_at(R, n, frac_digits(x, n + 1)))
    bound = lemma6_bound(5, 4, n, x.g.degree)
    assert abs(value - 1) < 1e-12
    assert bound == pytest.approx(math.exp(-3 / 125))
    assert value > bound


def test_theorem_trend_pinned():
    result = check_theorem_trend()
    assert result.passed
    assert set(PINNED_Q17_NO_ZERO) == {2, 3, 4, 5}
    deviations = result.params["deviations"]
    assert float(deviations["5"]) < 0.01
