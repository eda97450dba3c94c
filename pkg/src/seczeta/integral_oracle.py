"""Independent route to C_m through the exact Stieltjes integral of Q(t).

With phi(t) = log^m(t)/t, integration by parts against dN = dL + dQ gives,
for any cutoff T that is not an ordinate,

    sum_{gamma<T} phi(gamma) = A(m, T) + phi(T) Q(T) + B_m
                               + int_1^T (log^m t - m log^{m-1} t)/t^2 Q(t) dt.

The integral is evaluated exactly: N(t) is a step function, so its part is
a sum of kernel antiderivative differences between consecutive ordinates,
and the L(t) part is an elementary polynomial in log T.  No quadrature.
"""
from __future__ import annotations

import functools
import math
from functools import partial

import mpmath
from mpmath import mp
from mpmath.libmp import (
    fzero,
    from_int,
    mpf_add,
    mpf_div,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_sub,
    round_nearest,
)

from ._numeric import CHUNK_SIZE, ordered_map, ordered_sum, precision, to_mpf
from .asymptotics import _check_n, a_main, b_constant, l_main
from .estimator import Estimate, plain_envelope
from .sums import power_log_sum
from .zero_source import ZeroTable, count_below

_RN = round_nearest


class KernelAntiderivative:
    """Closed form of the integral of log^k(t)/t^2:

        -(1/t) * sum_{j=0..k} (k!/j!) log^j(t)
    """

    def __init__(self, k: int, *, validate: bool = True):
        self.k = _check_n(k)
        self.coefficients = tuple(math.factorial(k) // math.factorial(j) for j in range(k + 1))
        if validate:
            self._validate()

    def __repr__(self):
        return f"KernelAntiderivative(k={self.k})"

    def integrand(self, t):
        t = to_mpf(t)
        return mpmath.log(t) ** self.k / (t * t)

    def __call__(self, t):
        t = to_mpf(t)
        u = mpmath.log(t)
        acc = mp.zero
        for c in reversed(self.coefficients):
            acc = acc * u + c
        return -acc / t

    def raw(self, t_raw, prec: int, u_raw=None):
        """Same value on raw libmp tuples (thread safe, explicit precision)."""
        u = mpf_log(t_raw, prec, _RN) if u_raw is None else u_raw
        acc = fzero
        for c in reversed(self.coefficients):
            acc = mpf_add(mpf_mul(acc, u, prec, _RN), from_int(c), prec, _RN)
        return mpf_neg(mpf_div(acc, t_raw, prec, _RN))

    def _validate(self):
        with mp.workdps(30):
            for t0 in (mpmath.mpf(2), mpmath.mpf(37)):
                d = mpmath.diff(self, t0)
                ref = self.integrand(t0)
                if abs(d - ref) > mpmath.mpf(10) ** -15 * max(abs(ref), 1):
                    raise AssertionError(f"antiderivative for k={self.k} fails its derivative check")


@functools.lru_cache(maxsize=None)
def kernel_antiderivative(k: int) -> KernelAntiderivative:
    return KernelAntiderivative(k)


def _g_raw(m: int, t_raw, prec: int):
    """Antiderivative of (log^m t - m log^{m-1} t)/t^2 on raw tuples."""
    u = mpf_log(t_raw, prec, _RN)
    top = kernel_antiderivative(m).raw(t_raw, prec, u)
    if m == 0:
        return top
    low = kernel_antiderivative(m - 1).raw(t_raw, prec, u)
    return mpf_sub(top, mpf_mul(from_int(m), low, prec, _RN), prec, _RN)


def _step_chunk(item, m: int, prec: int):
    """sum_j j * (G(x_{j+1}) - G(x_j)) over one chunk of consecutive points."""
    first_j, points = item
    acc = fzero
    g_prev = _g_raw(m, points[0], prec)
    for offset, x in enumerate(points[1:]):
        g_next = _g_raw(m, x, prec)
        diff = mpf_sub(g_next, g_prev, prec, _RN)
        acc = mpf_add(acc, mpf_mul(from_int(first_j + offset), diff, prec, _RN), prec, _RN)
        g_prev = g_next
    return acc


def _l_part(m: int, t):
    """int_1^T (log^m t - m log^{m-1} t)/t^2 * L(t) dt in closed form."""
    u = mpmath.log(t)
    c = mpmath.log(2 * mp.pi) + 1
    kernel_part = kernel_antiderivative(m)(t)
    if m:
        kernel_part -= m * kernel_antiderivative(m - 1)(t)
    g_one = -1 if m == 0 else 0
    smooth = u ** (m + 2) / (m + 2) - (c + m) * u ** (m + 1) / (m + 1)
    if m:
        smooth += c * u**m
    return mpmath.mpf(7) / 8 * (kernel_part - g_one) + smooth / (2 * mp.pi)


def integral_q_kernel(table: ZeroTable, m: int, T, *, prec=None, workers=None):
    """int_1^T (log^m t - m log^{m-1} t)/t^2 * Q(t) dt with Q = N - L."""
    m = _check_n(m)
    with precision(prec) as bits:
        t = to_mpf(T)
        if t < 1:
            raise ValueError("integral_q_kernel needs T >= 1")
        terms = count_below(table, t)
        points = [g._mpf_ for g in table.gammas[:terms]] + [t._mpf_]
        items = [(i + 1, points[i : i + CHUNK_SIZE + 1]) for i in range(0, terms, CHUNK_SIZE)]
        parts = ordered_map(partial(_step_chunk, m=m, prec=bits), items, workers)
        step_part = mp.make_mpf(ordered_sum(parts, bits))
        return step_part - _l_part(m, t)


def stieltjes_identity_residual(table: ZeroTable, m: int, T, *, prec=None, workers=None):
    """Left side minus right side of the finite-T integration-by-parts identity."""
    with precision(prec) as bits:
        t = to_mpf(T)
        lhs = power_log_sum(table, m, t, prec=bits, workers=workers).value
        q = count_below(table, t) - l_main(t, prec=bits)
        boundary = mpmath.log(t) ** m / t * q
        rhs = (
            a_main(m, t, prec=bits)
            + boundary
            + b_constant(m, prec=bits)
            + integral_q_kernel(table, m, t, prec=bits, workers=workers)
        )
        return lhs - rhs


def c_from_integral(table: ZeroTable, m: int, T, *, prec=None, workers=None) -> Estimate:
    """(-1)^m [B_m + int_1^T kernel * Q dt]: the integral representation truncated at T."""
    with precision(prec) as bits:
        t = to_mpf(T)
        integral = integral_q_kernel(table, m, t, prec=bits, workers=workers)
        value = b_constant(m, prec=bits) + integral
        if m % 2:
            value = -value
        bound = plain_envelope(m, t) if t > 1 else mp.zero
        return Estimate(m, value, t, "integral", bound, count_below(table, t), None, None)
