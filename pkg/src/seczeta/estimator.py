"""Limit-formula estimates of the Laurent coefficients C_n.

``estimate_plain`` truncates the limit

    C_n = lim (-1)^n [ sum_{gamma<T} log^n(gamma)/gamma - A(n, T) ]

at a finite cutoff; ``estimate_bpt`` additionally removes the boundary term
(log^n T / T) Q(T), which lowers the error from O(log^{n+1} T / T) to the
explicit O(log^{n+1} T / T^2) bound of :func:`~seczeta.asymptotics.e2_bound`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Literal

import mpmath
from mpmath import mp

from ._numeric import decimal_digits, precision, to_mpf
from .asymptotics import BptConstants, a_main, e2_bound, l_main
from .sums import power_log_sum
from .zero_source import ZeroTable, count_below

_BPT = BptConstants()
#: envelope constant for the heuristic O(log^{n+1} T / T) bounds
C_PLAIN = 2 * (mpmath.mpf(_BPT.a0) + mpmath.mpf(_BPT.a1))


@dataclass(frozen=True)
class Estimate:
    n: int
    value: mpmath.mpf
    cutoff: mpmath.mpf
    method: Literal["plain", "bpt", "integral"]
    error_bound: mpmath.mpf
    zeros_used: int
    partial_sum: mpmath.mpf | None = None
    smooth_term: mpmath.mpf | None = None
    correction: mpmath.mpf = field(default_factory=lambda: mp.zero)

    @property
    def heuristic(self) -> bool:
        """True when ``error_bound`` is an order-of-magnitude envelope, not a proof."""
        return self.method != "bpt"


def plain_envelope(n: int, T):
    """C_PLAIN * log^{n+1}(T) / T."""
    return C_PLAIN * mpmath.log(T) ** (n + 1) / T


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def estimate_plain(n: int, table: ZeroTable, T, *, prec=None, workers=None) -> Estimate:
    with precision(prec) as bits:
        t = to_mpf(T)
        s = power_log_sum(table, n, t, prec=bits, workers=workers)
        a = a_main(n, t, prec=bits)
        return Estimate(n, _sign(n) * (s.value - a), t, "plain", plain_envelope(n, t), s.terms, s.value, a)


def estimate_bpt(n: int, table: ZeroTable, T, *, prec=None, workers=None) -> Estimate:
    with precision(prec) as bits:
        t = to_mpf(T)
        bound = e2_bound(n, t, prec=bits)
        s = power_log_sum(table, n, t, prec=bits, workers=workers)
        a = a_main(n, t, prec=bits)
        q = count_below(table, t) - l_main(t, prec=bits)
        corr = mpmath.log(t) ** n / t * q
        return Estimate(n, _sign(n) * (s.value - a - corr), t, "bpt", bound, s.terms, s.value, a, corr)


def signs_differ(estimate, reference) -> bool:
    return (estimate < 0) != (reference < 0) and estimate != 0


def matched_digits(estimate, reference, *, prec=None, warn: bool = True) -> int:
    """Largest k with |estimate - reference| < 0.5 * 10^-k, capped at the working digits.

    When the signs differ the magnitudes are compared and a warning is issued.
    """
    with precision(prec) as bits:
        e, r = to_mpf(estimate), to_mpf(reference)
        if r == 0:
            raise ValueError("reference must be nonzero")
        if signs_differ(e, r):
            if warn:
                warnings.warn("estimate and reference differ in sign; comparing magnitudes", stacklevel=2)
            e, r = abs(e), abs(r)
        cap = decimal_digits(bits)
        diff = abs(e - r)
        if diff == 0:
            return cap
        k = int(mpmath.floor(-mpmath.log10(2 * diff)))
        # guard the floor against rounding right at a power of ten
        while k >= 0 and not diff < mpmath.mpf(10) ** (-k) / 2:
            k -= 1
        while k + 1 <= cap and diff < mpmath.mpf(10) ** (-(k + 1)) / 2:
            k += 1
        return max(0, min(k, cap))
