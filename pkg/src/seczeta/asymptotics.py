"""Closed-form smooth terms of the zero-counting function and their relatives.

L(T) is the Riemann-von Mangoldt main term, A(n, T) the integral of
log^n(t) dL(t)/t from 1 to T, Q(T) = N(T) - L(T) the empirical remainder
from a zero table, and E2 the explicit BPT error bound.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from ._numeric import precision, to_mpf
from .exceptions import ConvergenceError
from .zero_source import ZeroTable, count_below

MAX_LOG_POWER = 200


@dataclass(frozen=True)
class BptConstants:
    """Constants A0, A1, A2 of the Brent-Platt-Trudgian bound (decimal strings, exact)."""

    a0: str = "2.067"
    a1: str = "0.059"
    a2: str = "0.007"

    def __post_init__(self):
        for name in ("a0", "a1", "a2"):
            if not mpmath.mpf(getattr(self, name)) > 0:
                raise ValueError(f"{name} must be positive")

    def values(self):
        return mp.mpf(self.a0), mp.mpf(self.a1), mp.mpf(self.a2)


def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"log power must be a nonnegative integer, got {n!r}")
    if n > MAX_LOG_POWER:
        raise ValueError(f"log power {n} exceeds the cap {MAX_LOG_POWER}")
    return int(n)


def l_main(T, *, prec=None):
    """7/8 + (T/2pi) log(T/2pi) - T/2pi."""
    with precision(prec):
        t = to_mpf(T)
        if t <= 0:
            raise ValueError("T must be positive")
        x = t / (2 * mp.pi)
        return mpmath.mpf(7) / 8 + x * mpmath.log(x) - x


def l_prime(T, *, prec=None):
    with precision(prec):
        return mpmath.log(to_mpf(T) / (2 * mp.pi)) / (2 * mp.pi)


def a_main(n: int, T, *, prec=None):
    """(1/2pi) * integral_1^T log^n(t) log(t/2pi) / t dt, in closed form."""
    n = _check_n(n)
    with precision(prec):
        t = to_mpf(T)
        if t < 1:
            raise ValueError("a_main needs T >= 1")
        lt = mpmath.log(t)
        tail = (n + 1) * lt - (n + 2) * mpmath.log(2 * mp.pi)
        return lt ** (n + 1) * tail / (2 * mp.pi * (n + 1) * (n + 2))


def b_constant(m: int, *, prec=None):
    """Lower-limit constant of the integration by parts: L(1) for m = 0, else 0.

    Comes from -phi(1) Q(1) with phi(t) = log^m(t)/t, [log 1]^0 = 1 and
    N(1) = 0.
    """
    m = _check_n(m)
    with precision(prec):
        return l_main(1, prec=mp.prec) if m == 0 else mp.zero


def q_emp(table: ZeroTable, T, *, prec=None):
    """N(T) - L(T) from the table."""
    with precision(prec):
        t = to_mpf(T)
        return count_below(table, t) - l_main(t, prec=mp.prec)


def e2_bound(n: int, T, c: BptConstants = BptConstants(), *, prec=None):
    """Explicit bound on the error left after the BPT boundary correction.

    2 (A0 + A1 log T) |n log^{n-1}T - log^n T| / T^2 + (A1 + A2) log^n T / T^2,
    with the n log^{n-1} T term read as 0 when n = 0.
    """
    n = _check_n(n)
    with precision(prec):
        t = to_mpf(T)
        if not t > mp.e:
            raise ValueError("e2_bound needs T > e")
        a0, a1, a2 = c.values()
        lt = mpmath.log(t)
        ln = lt**n
        lower = n * lt ** (n - 1) if n > 0 else mp.zero
        t2 = t * t
        return 2 * (a0 + a1 * lt) * abs(lower - ln) / t2 + (a1 + a2) * ln / t2


def inverse_l(N, *, prec=None):
    """The T >= 2 pi with L(T) = N (L is increasing there, L(2 pi) = -1/8).

    Bracketing bisection until Newton is safe, then safeguarded Newton.
    """
    with precision(prec) as bits:
        target = to_mpf(N)
        lo = 2 * mp.pi
        if not target > l_main(lo, prec=bits):
            raise ValueError("inverse_l needs N > L(2 pi) = -1/8")
        hi = 4 * mp.pi
        while l_main(hi, prec=bits) < target:
            lo, hi = hi, 2 * hi
            if hi > mpmath.mpf(10) ** 300:
                raise ConvergenceError("could not bracket L(T) = N")
        tol = abs(target) * mpmath.mpf(2) ** (3 - bits) + mpmath.mpf(2) ** (-bits)
        t = (lo + hi) / 2
        for _ in range(4 * bits):
            f = l_main(t, prec=bits) - target
            if abs(f) <= tol:
                return t
            if f > 0:
                hi = t
            else:
                lo = t
            d = l_prime(t, prec=bits)
            step = f / d if d > 0 else None
            if step is None or not lo < t - step < hi:
                t = (lo + hi) / 2
            else:
                t = t - step
            if hi - lo <= hi * mpmath.mpf(2) ** (2 - bits):
                return t
        raise ConvergenceError("inverse_l did not converge")
