"""Partial sums over zero ordinates, reproducible to the last bit.

Terms are accumulated in ascending-gamma order inside fixed 4096-term
chunks and the chunk totals are combined in index order, so the result is
identical for any worker count.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import mpmath
import numpy as np
from mpmath import mp
from mpmath.libmp import fone, fzero, mpf_add, mpf_div, mpf_log, mpf_neg, mpf_pow, mpf_pow_int, round_nearest

from ._numeric import chunked, ordered_map, ordered_sum, precision, to_mpf
from .asymptotics import _check_n
from .zero_source import ZeroTable, count_below


@dataclass(frozen=True)
class SumResult:
    value: mpmath.mpf
    n_or_s: object
    terms: int
    cutoff: mpmath.mpf
    accumulation_error_bound: mpmath.mpf


def _power_log_chunk(raw_gammas, n: int, prec: int):
    acc = fzero
    for g in raw_gammas:
        if n == 0:
            term = mpf_div(fone, g, prec, round_nearest)
        else:
            lg = mpf_pow_int(mpf_log(g, prec, round_nearest), n, prec, round_nearest)
            term = mpf_div(lg, g, prec, round_nearest)
        acc = mpf_add(acc, term, prec, round_nearest)
    return acc


def _power_chunk(raw_gammas, neg_s, prec: int):
    acc = fzero
    for g in raw_gammas:
        acc = mpf_add(acc, mpf_pow(g, neg_s, prec, round_nearest), prec, round_nearest)
    return acc


def _reduce(table: ZeroTable, terms: int, kernel, workers) -> tuple:
    raw = [g._mpf_ for g in table.gammas[:terms]]
    return ordered_sum(ordered_map(kernel, chunked(raw), workers), kernel.keywords["prec"])


def _input_error(table: ZeroTable, terms: int, deriv) -> mpmath.mpf:
    if terms == 0:
        return mp.zero
    g = table.floats[:terms]
    worst = float(np.max(np.abs(deriv(g))))
    return terms * mpmath.mpf(10) ** (-table.source_digits) * mpmath.mpf(worst)


def power_log_sum(table: ZeroTable, n: int, T, *, prec=None, workers=None) -> SumResult:
    """sum_{gamma < T} log^n(gamma) / gamma."""
    n = _check_n(n)
    with precision(prec) as bits:
        t = to_mpf(T)
        terms = count_below(table, t)
        value = mp.make_mpf(_reduce(table, terms, partial(_power_log_chunk, n=n, prec=bits), workers))

        def deriv(x):
            lx = np.log(x)
            return lx ** max(n - 1, 0) * (n - lx if n else -1.0) / x**2

        rounding = terms * (n + 4) * mpmath.ldexp(abs(value), -bits)
        bound = rounding + _input_error(table, terms, deriv)
        return SumResult(value, n, terms, t, bound)


def power_sum(table: ZeroTable, s, T, *, prec=None, workers=None) -> SumResult:
    """sum_{gamma < T} gamma^(-s) for real s > 1."""
    with precision(prec) as bits:
        s = to_mpf(s)
        if not s > 1:
            raise ValueError("power_sum needs s > 1")
        t = to_mpf(T)
        terms = count_below(table, t)
        kernel = partial(_power_chunk, neg_s=mpf_neg(s._mpf_), prec=bits)
        value = mp.make_mpf(_reduce(table, terms, kernel, workers))
        sf = float(s)
        rounding = terms * 8 * mpmath.ldexp(abs(value), -bits)
        bound = rounding + _input_error(table, terms, lambda x: sf * x ** (-sf - 1))
        return SumResult(value, s, terms, t, bound)
