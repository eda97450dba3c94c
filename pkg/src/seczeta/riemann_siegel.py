"""Vectorised Riemann-Siegel evaluation of Hardy's Z(t) in extended precision.

Everything here runs on ``numpy.longdouble`` arrays (64-bit mantissa on
x86).  It is the scanning and first-pass root-refinement engine for
:mod:`seczeta.zero_source`; zeros at heights where the truncated expansion
is not accurate enough get polished with mpmath afterwards.

The correction series follows Arias de Reyna's formulation of the
Riemann-Siegel expansion:

    Z(t) = 2 Re( e^{i theta} [ sum_{n<=N} n^{-s} + S3 * sum_k a^{-k} P_k(p) ] )

with a = sqrt(t/2pi), N = floor(a), p = 1 - 2(a - N) and the polynomials
P_k built from derivatives of

    F(z) = (exp(pi i (z^2/2 + 3/8)) - i sqrt(2) cos(pi z / 2)) / (2 cos(pi z)).
"""
from __future__ import annotations

import functools
import math

import mpmath
import numpy as np
from scipy.special import lambertw

LD = np.longdouble
CLD = np.clongdouble


def _ld(x) -> np.longdouble:
    return LD(mpmath.nstr(x, 25, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))


with mpmath.workdps(30):
    PI = _ld(mpmath.pi)
    LOG_TWO_PI = _ld(mpmath.log(2 * mpmath.pi))
TWO_PI = 2 * PI

#: number of correction terms carried beyond the main sum
DEFAULT_TERMS = 8
_TAYLOR_HALF = 70  # F is even; c_{2n} for n < 70


@functools.lru_cache(maxsize=1)
def _f_taylor() -> list:
    """Taylor coefficients c_j of F about 0 (odd ones vanish)."""
    with mpmath.workdps(80):
        pi = mpmath.pi
        nt = _TAYLOR_HALF
        v = [(-1) ** n * mpmath.eulernum(2 * n) / mpmath.factorial(2 * n) * pi ** (2 * n) for n in range(nt + 1)]
        w = [pi**n / (mpmath.factorial(n) * mpmath.mpf(2) ** n) for n in range(2 * nt + 1)]
        mu = mpmath.sqrt(2) / 2
        nu = mpmath.expjpi(mpmath.mpf(3) / 8) / 2
        c = [mpmath.mpc(0)] * (2 * nt)
        for n in range(nt):
            p1 = (-1) ** (n + 1) * 1j * mpmath.fsum((-1) ** k * v[k] * w[2 * n - 2 * k] for k in range(n + 1))
            p2 = mpmath.fsum(mpmath.mpc(0, 1) ** (n - k) * v[k] * w[n - k] for k in range(n + 1))
            c[2 * n] = mu * p1 + nu * p2
        return c


def _rs_d_coefficients(terms: int) -> dict:
    """The d[n, k] table of the expansion on the critical line (sigma = 1/2)."""
    d = {(0, 0): mpmath.mpf(1)}

    def get(n, k):
        return d.get((n, k), mpmath.mpf(0))

    for n in range(1, terms):
        for k in range(0, 3 * n // 2 + 1):
            m = 3 * n - 2 * k
            if m != 0:
                d[n, k] = -(m + 1) * get(n - 1, k - 2) + get(n - 1, k) / (4 * m)
            else:
                acc = mpmath.mpf(0)
                for r in range(k):
                    acc += (-1) ** (k - r) * get(n, r) * mpmath.factorial(2 * k - 2 * r) / mpmath.factorial(k - r)
                d[n, k] = -acc
    return d


@functools.lru_cache(maxsize=4)
def correction_polynomials(terms: int = DEFAULT_TERMS) -> tuple[np.ndarray, ...]:
    """Complex coefficient arrays (ascending powers of p) of P_0..P_{terms-1}."""
    with mpmath.workdps(80):
        c = _f_taylor()
        deg = len(c)
        d = _rs_d_coefficients(terms)
        pi = mpmath.pi
        polys = []
        for n in range(terms):
            acc = [mpmath.mpc(0)] * deg
            for k in range(0, 3 * n // 2 + 1):
                dk = d.get((n, k), 0)
                if dk == 0:
                    continue
                m = 3 * n - 2 * k
                scale = dk / (pi ** (2 * n - k) * (2j) ** k)
                for j in range(m, deg):
                    acc[j - m] += scale * c[j] * mpmath.factorial(j) / mpmath.factorial(j - m)
            re_part = np.array([_ld(z.real) for z in acc], dtype=LD)
            im_part = np.array([_ld(z.imag) for z in acc], dtype=LD)
            poly = np.empty(deg, dtype=CLD)
            poly.real = re_part
            poly.imag = im_part
            polys.append(poly)
    return tuple(polys)


def _horner(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    acc = np.zeros(x.shape, dtype=coeffs.dtype)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def theta(t) -> np.ndarray:
    """Riemann-Siegel theta function by its asymptotic series (t >~ 5)."""
    t = np.asarray(t, dtype=LD)
    return t / 2 * (np.log(t) - LOG_TWO_PI) - t / 2 - PI / 8 + _theta_tail(t)


def _theta_tail(t: np.ndarray) -> np.ndarray:
    u = 1 / t
    u2 = u * u
    return u * (LD(1) / 48 + u2 * (LD(7) / 5760 + u2 * (LD(31) / 80640 + u2 * (LD(127) / 430080 + u2 * LD(511) / 1216512))))


def theta_prime(t) -> np.ndarray:
    t = np.asarray(t, dtype=LD)
    return (np.log(t) - LOG_TWO_PI) / 2 - 1 / (48 * t * t)


def hardy_z(t, terms: int = DEFAULT_TERMS) -> np.ndarray:
    """Z(t) at each entry of ``t`` (long double; meaningful for t >~ 10)."""
    t = np.atleast_1d(np.asarray(t, dtype=LD))
    a = np.sqrt(t / TWO_PI)
    big_n = np.floor(a).astype(np.int64)
    th = theta(t)
    main = np.zeros_like(t)
    for n in range(1, int(big_n.max(initial=0)) + 1):
        active = big_n >= n
        term = np.cos(th - t * np.log(LD(n))) / np.sqrt(LD(n))
        main += np.where(active, term, LD(0))
    p = 1 - 2 * (a - big_n)
    inv_a = 1 / a
    rssum = np.zeros(t.shape, dtype=CLD)
    for poly in correction_polynomials(terms)[::-1]:
        rssum = rssum * inv_a + _horner(poly, p)
    sign = np.where(big_n % 2 == 1, LD(1), LD(-1))
    tail = _theta_tail(t)
    rot = np.cos(tail) * rssum.real - np.sin(tail) * rssum.imag
    return 2 * main + 2 * sign * rot / np.sqrt(a)


def gram_point(k) -> np.ndarray:
    """Gram points g_k with theta(g_k) = k*pi, for k >= -1."""
    k = np.atleast_1d(np.asarray(k))
    guess = 2 * math.pi * np.exp(1 + lambertw((8 * k.astype(float) + 1) / (8 * math.e)).real)
    g = guess.astype(LD)
    target = k.astype(LD) * PI
    for _ in range(6):
        g = g - (theta(g) - target) / theta_prime(g)
    return g
