import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seczeta.sums import power_log_sum, power_sum
from seczeta.zero_source import count_below, from_values, midpoint_cutoff


@pytest.fixture(scope="module")
def synthetic():
    # spread over three 4096-term chunks; values need not be actual zeros
    with mpmath.workdps(40):
        vals = [mpmath.mpf(14.5) + mpmath.mpf("0.3718") * k + mpmath.sqrt(k) / 7 for k in range(10000)]
    return from_values(vals, 15)


def naive_log_sum(table, n, terms, dps=90):
    with mpmath.workdps(dps):
        return mpmath.fsum(mpmath.log(g) ** n / g for g in table.gammas[:terms])


@pytest.mark.parametrize("n", [0, 1, 2, 7])
def test_power_log_sum_against_naive(synthetic, n):
    T = midpoint_cutoff(synthetic, 9000)
    r = power_log_sum(synthetic, n, T, prec=192)
    assert r.terms == 9000
    ref = naive_log_sum(synthetic, n, 9000)
    rounding = 9000 * (n + 4) * mpmath.ldexp(abs(ref), -192)
    with mpmath.workprec(192):
        assert abs(r.value - ref) <= rounding
        assert r.accumulation_error_bound >= rounding


@pytest.mark.parametrize("s", ["1.5", "2", "3.25"])
def test_power_sum_against_naive(synthetic, s):
    T = midpoint_cutoff(synthetic, 5000)
    r = power_sum(synthetic, s, T, prec=192)
    with mpmath.workdps(90):
        ref = mpmath.fsum(g ** (-mpmath.mpf(s)) for g in synthetic.gammas[:5000])
        assert abs(r.value - ref) <= 5000 * 8 * mpmath.ldexp(abs(ref), -192)


def test_power_sum_needs_s_above_one(synthetic):
    with pytest.raises(ValueError):
        power_sum(synthetic, 1, 100)


def test_empty_sum(synthetic):
    r = power_log_sum(synthetic, 3, 10)
    assert r.terms == 0 and r.value == 0


@pytest.mark.parametrize("fn,arg", [(power_log_sum, 0), (power_log_sum, 3), (power_sum, "2")])
def test_bit_identical_across_workers(synthetic, fn, arg):
    T = midpoint_cutoff(synthetic, 9999)
    raws = {w: fn(synthetic, arg, T, prec=192, workers=w).value._mpf_ for w in (1, 2, 8)}
    assert raws[1] == raws[2] == raws[8]


def test_precision_is_respected(synthetic):
    T = midpoint_cutoff(synthetic, 100)
    lo = power_log_sum(synthetic, 1, T, prec=64).value
    hi = power_log_sum(synthetic, 1, T, prec=256).value
    with mpmath.workprec(256):
        assert 0 < abs(lo - hi) < mpmath.ldexp(abs(hi), -55)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=500), st.integers(min_value=0, max_value=4))
def test_terms_follow_cutoff(k, n):
    table = from_values([14.5 + 0.5 * j for j in range(501)], 6)
    T = midpoint_cutoff(table, k)
    r = power_log_sum(table, n, T, prec=128)
    assert r.terms == k == count_below(table, T)
