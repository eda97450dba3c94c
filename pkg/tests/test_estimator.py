import warnings

import mpmath
import pytest

from seczeta._numeric import decimal_digits
from seczeta.estimator import (
    C_PLAIN,
    estimate_bpt,
    estimate_plain,
    matched_digits,
    plain_envelope,
    signs_differ,
)
from seczeta.laurent import reference_value
from seczeta.zero_source import ZeroTable, default_cutoff, midpoint_cutoff

FIRST = ["14.134725141734693790", "21.022039638771554993", "25.010857580145688763"]


def test_plain_at_one_is_zero():
    t = ZeroTable.from_strings(FIRST)
    e = estimate_plain(0, t, 1)
    assert e.value == 0 and e.error_bound == 0 and e.zeros_used == 0
    assert e.heuristic


def test_bpt_needs_t_above_e():
    t = ZeroTable.from_strings(FIRST)
    with pytest.raises(ValueError):
        estimate_bpt(0, t, 2)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_bpt_is_plain_minus_boundary_term(zeros_1k, n):
    T = default_cutoff(zeros_1k)
    p = estimate_plain(n, zeros_1k, T)
    b = estimate_bpt(n, zeros_1k, T)
    sign = -1 if n % 2 else 1
    with mpmath.workprec(192):
        assert abs(b.value - (p.value - sign * b.correction)) < mpmath.ldexp(1, -170)
    assert b.partial_sum == p.partial_sum and b.smooth_term == p.smooth_term
    assert not b.heuristic and p.heuristic


@pytest.mark.parametrize("n", [0, 1, 2])
def test_bpt_error_within_proven_bound(zeros_extended, n):
    table = zeros_extended[0]
    for k in (1000, 4000):
        T = midpoint_cutoff(table, k)
        b = estimate_bpt(n, table.head(k), T)
        assert b.zeros_used == k
        assert abs(b.value - reference_value(n)) < b.error_bound


@pytest.mark.parametrize("n", [0, 1, 2])
def test_plain_error_within_envelope(zeros_1k, n):
    mpmath.mp.prec = 192
    T = default_cutoff(zeros_1k)
    p = estimate_plain(n, zeros_1k, T)
    assert abs(p.value - reference_value(n)) < p.error_bound
    assert abs(p.error_bound - plain_envelope(n, T)) < mpmath.mpf(10) ** -50


def test_signs_follow_reference_table(zeros_1k):
    T = default_cutoff(zeros_1k)
    for n in range(4):
        assert not signs_differ(estimate_bpt(n, zeros_1k, T).value, reference_value(n))


def test_c_plain():
    assert C_PLAIN == 2 * (mpmath.mpf("2.067") + mpmath.mpf("0.059"))


def test_matched_digits():
    mpmath.mp.prec = 192
    c0 = reference_value(0)
    assert matched_digits(c0, c0) == decimal_digits(192)
    assert matched_digits(mpmath.mpf("0.25163729326778528275"), c0) == 5
    assert matched_digits(mpmath.mpf("0.2516367513125338681"), c0) == 12
    assert matched_digits(mpmath.mpf(5), c0) == 0
    with pytest.raises(ValueError):
        matched_digits(1, 0)


def test_matched_digits_flags_sign_disagreement():
    mpmath.mp.prec = 192
    c1 = reference_value(1)
    printed = mpmath.mpf("0.13004448590966041896")
    with pytest.warns(UserWarning, match="sign"):
        k = matched_digits(printed, c1)
    # |diff| = 2.2e-12 < 0.5e-11; agreement by truncated digits would say 10
    assert k == 11
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        matched_digits(printed, c1, warn=False)
