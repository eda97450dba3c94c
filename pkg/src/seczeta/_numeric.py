"""Precision plumbing and the deterministic chunked reduction used by the sums.

mpmath's ``mp`` context is process-global.  Public functions switch it with
:func:`precision` for their own duration; worker threads never touch it and
do their arithmetic on raw ``libmp`` tuples with an explicit precision.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterator, Sequence, TypeVar

import mpmath
from mpmath import mp
from mpmath.libmp import fzero, mpf_add, round_nearest

DEFAULT_PREC = 192
CHUNK_SIZE = 4096

T = TypeVar("T")
R = TypeVar("R")


@contextmanager
def precision(prec: int | None) -> Iterator[int]:
    prec = DEFAULT_PREC if prec is None else int(prec)
    if prec < 53:
        raise ValueError(f"precision must be at least 53 bits, got {prec}")
    with mp.workprec(prec):
        yield prec


def to_mpf(x) -> mpmath.mpf:
    """Convert at the current precision; strings keep all their digits."""
    if isinstance(x, mpmath.mpf):
        return +x
    return mp.mpf(x)


def decimal_digits(prec: int) -> int:
    return math.ceil(prec * 0.30103)


def fmt(x, prec: int = DEFAULT_PREC) -> str:
    """Decimal string of ``x`` at the report precision for ``prec`` bits."""
    if x is None:
        return ""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    with mp.workprec(prec + 8):
        return mpmath.nstr(mp.mpf(x), decimal_digits(prec), strip_zeros=False)


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        return max(1, min(8, os.cpu_count() or 1))
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return int(workers)


def chunked(seq: Sequence[T], size: int = CHUNK_SIZE) -> list[Sequence[T]]:
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def ordered_map(fn: Callable[[T], R], items: Sequence[T], workers: int | None = None) -> list[R]:
    """``list(map(fn, items))`` with optional threads; output order is input order."""
    n = resolve_workers(workers)
    if n == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def ordered_sum(raw_parts: Sequence[tuple], prec: int) -> tuple:
    """Left-to-right sum of raw mpf tuples at ``prec`` bits."""
    acc = fzero
    for part in raw_parts:
        acc = mpf_add(acc, part, prec, round_nearest)
    return acc
