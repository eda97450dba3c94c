"""Desk-scale computation of zeta zero ordinates on the critical line.

Pipeline: Gram points seed a scan of Hardy's Z(t); every Gram block is
checked against Rosser's rule and densified until it shows the expected
number of sign changes; each bracket is refined in long double by
bisection followed by Illinois steps; zeros whose predicted error is too
large for the requested digits are polished by a secant iteration on
mpmath's ``siegelz`` and certified by a sign change at +-10^-(digits+2).
"""
from __future__ import annotations

import logging
import math

import mpmath
import numpy as np
from mpmath import mp

from .exceptions import GenerationError
from .riemann_siegel import LD, gram_point, hardy_z
from .zero_source import ZeroTable, format_ordinate

log = logging.getLogger(__name__)

MAX_COUNT = 100_000
MAX_DIGITS = 50
RS_TERMS = 10
MAX_REFINE_LEVELS = 10
_EPS = float(np.finfo(LD).eps)


def z_error_model(t) -> np.ndarray:
    """Conservative |error| of :func:`hardy_z` with ``RS_TERMS`` corrections."""
    t = np.asarray(t, dtype=np.float64)
    a = np.sqrt(t / (2 * math.pi))
    return 1e-6 * a**-11 + 1e-18 * t


def counting_slack(T) -> float:
    """Allowed |N(T) - L(T)| for a table to pass the sanity check."""
    return 3 + 0.5 * math.log(float(T))


def _z(t: np.ndarray) -> np.ndarray:
    """Z(t), switching to mpmath wherever the sign is in doubt."""
    z = hardy_z(t, RS_TERMS)
    doubt = np.abs(z.astype(np.float64)) < 10 * z_error_model(t)
    if doubt.any():
        with mp.workdps(30):
            for i in np.flatnonzero(doubt):
                z[i] = LD(mpmath.nstr(mpmath.siegelz(mp.mpf(repr(float(t[i])))), 25))
    return z


def _sign_changes(grid: np.ndarray, zs: np.ndarray) -> np.ndarray:
    return np.flatnonzero(np.signbit(zs[:-1]) != np.signbit(zs[1:]))


def _scan(count: int, grid_density: int) -> list[tuple]:
    """Brackets (lo, hi, z_lo, z_hi) around the first ``count`` zeros (at least)."""
    k_max = count + 10
    while True:
        ks = np.arange(-1, k_max + 1)
        g = gram_point(ks)
        zg = _z(g)
        good = (np.where(ks % 2 == 0, 1, -1) * zg.astype(np.float64)) > 0
        if not good[0]:
            raise GenerationError("first Gram point fails Gram's law; scan seed is broken")
        good_idx = np.flatnonzero(good)
        brackets: list[tuple] = []
        for a, b in zip(good_idx[:-1], good_idx[1:]):
            expected = int(b - a)
            level = grid_density
            found = None
            for _ in range(MAX_REFINE_LEVELS):
                if level == 1:
                    grid, zs = g[a : b + 1], zg[a : b + 1]
                else:
                    pieces = [np.linspace(g[i], g[i + 1], level + 1, dtype=LD)[:-1] for i in range(a, b)]
                    grid = np.concatenate(pieces + [g[b : b + 1]])
                    zs = _z(grid)
                    zs[0], zs[-1] = zg[a], zg[b]
                idx = _sign_changes(grid, zs)
                if len(idx) == expected:
                    found = [(grid[i], grid[i + 1], zs[i], zs[i + 1]) for i in idx]
                    break
                if len(idx) > expected:
                    raise GenerationError(
                        f"Gram block {a}..{b} shows {len(idx)} sign changes, expected {expected}"
                    )
                level *= 2
            if found is None:
                raise GenerationError(
                    f"missed zero: Gram block g_{a - 1}..g_{b - 1} still short of {expected} sign changes"
                )
            brackets.extend(found)
        if len(brackets) > count:
            return brackets
        k_max += max(20, k_max // 10)


def _refine(brackets: list[tuple]) -> np.ndarray:
    lo = np.array([b[0] for b in brackets], dtype=LD)
    hi = np.array([b[1] for b in brackets], dtype=LD)
    flo = np.array([b[2] for b in brackets], dtype=LD)
    fhi = np.array([b[3] for b in brackets], dtype=LD)
    for _ in range(4):
        mid = (lo + hi) / 2
        fm = hardy_z(mid, RS_TERMS)
        left = np.signbit(fm) == np.signbit(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
        fhi = np.where(left, fhi, fm)
    x = (lo + hi) / 2
    side = np.zeros(len(lo), dtype=np.int8)
    active = np.ones(len(lo), dtype=bool)
    for _ in range(60):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        l, h, fl, fh = lo[idx], hi[idx], flo[idx], fhi[idx]
        xn = (l * fh - h * fl) / (fh - fl)
        bad = ~((xn > l) & (xn < h))
        xn = np.where(bad, (l + h) / 2, xn)
        fx = hardy_z(xn, RS_TERMS)
        tol = 8 * LD(_EPS) * xn
        done = (np.abs(xn - x[idx]) <= tol) | (fx == 0) | ((h - l) <= tol)
        x[idx] = xn
        left = np.signbit(fx) == np.signbit(fl)
        s = side[idx]
        # Illinois: halve the retained endpoint's value when it is kept twice
        new_fh = np.where(left & (s == 1), fh / 2, fh)
        new_fl = np.where(~left & (s == -1), fl / 2, fl)
        lo[idx] = np.where(left, xn, l)
        flo[idx] = np.where(left, fx, new_fl)
        hi[idx] = np.where(left, h, xn)
        fhi[idx] = np.where(left, new_fh, fx)
        side[idx] = np.where(left, 1, -1)
        active[idx[done]] = False
    if active.any():
        raise GenerationError(f"{int(active.sum())} brackets failed to converge in long double")
    return x


def _polish(x0: float | str, digits: int, guard: int) -> mpmath.mpf:
    """Secant polish on mpmath's siegelz with a certifying sign change."""
    mag = int(math.log10(float(x0))) + 1
    for attempt in range(3):
        dps = digits + guard * (attempt + 1) + mag
        with mp.workdps(dps):
            x_prev = mp.mpf(x0)
            x = x_prev + mp.mpf(10) ** (-(digits // 2 + 4))
            f_prev, f = mpmath.siegelz(x_prev), mpmath.siegelz(x)
            target = mp.mpf(10) ** (-(digits + guard // 2))
            for _ in range(40):
                if f == f_prev:
                    break
                last = x - x_prev
                step = f * last / (f - f_prev)
                x_prev, f_prev = x, f
                x = x - step
                # secant error shrinks like the product of the last two steps;
                # stopping early is safe because the sign check below decides
                if abs(step) * min(1, abs(last)) < target:
                    break
                f = mpmath.siegelz(x)
            delta = mp.mpf(10) ** (-(digits + 2))
            if mpmath.sign(mpmath.siegelz(x - delta)) != mpmath.sign(mpmath.siegelz(x + delta)):
                return x
        log.debug("escalating precision for zero near %s", x0)
    raise GenerationError(f"could not certify the zero near {x0} to {digits} digits")


def generate_zeros(
    count: int,
    target_digits: int,
    *,
    max_count: int = MAX_COUNT,
    grid_density: int = 1,
    guard_digits: int = 10,
) -> ZeroTable:
    """The first ``count`` zero ordinates, each within 10^-target_digits.

    ``grid_density`` subdivides every Gram interval before scanning and
    ``guard_digits`` sets the extra mpmath precision used for polishing;
    raising both reproduces the same table through a more expensive route.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if count > max_count:
        raise ValueError(f"count {count} exceeds the desk-scale cap {max_count}")
    if not 1 <= target_digits <= MAX_DIGITS:
        raise ValueError(f"target_digits must be in 1..{MAX_DIGITS}")
    if grid_density < 1:
        raise ValueError("grid_density must be >= 1")

    brackets = _scan(count, grid_density)
    roots = _refine(brackets)
    h = LD(1e-6)
    slope = (hardy_z(roots + h, RS_TERMS) - hardy_z(roots - h, RS_TERMS)) / (2 * h)
    predicted = z_error_model(roots) / np.abs(slope.astype(np.float64)) + 8 * _EPS * roots.astype(np.float64)
    need = predicted > 0.05 * 10.0 ** (-target_digits)
    log.info("refined %d brackets; %d need mpmath polish", len(roots), int(need[:count].sum()))

    texts = []
    for i in range(count):
        x_ld = np.format_float_positional(roots[i], precision=20, unique=False)
        if need[i]:
            with mp.workdps(target_digits + guard_digits + 10):
                x = _polish(x_ld, target_digits, guard_digits)
                texts.append(format_ordinate(x, target_digits))
        else:
            texts.append(format_ordinate(mp.mpf(x_ld), target_digits))
    table = ZeroTable.from_strings(texts, origin="generated")
    check_counting(table, extra=roots[count] if len(roots) > count else None)
    return table


def check_counting(table: ZeroTable, extra=None) -> float:
    """Verify |N(T) - L(T)| <= 3 + log(T)/2 around every zero; return max |Q|.

    Probes just below and just above each ordinate (at the neighbouring
    midpoints), which is where N - L takes its extreme values.
    """
    g = table.floats
    if extra is not None:
        g = np.append(g, float(extra))
    if len(g) < 2:
        return 0.0
    mids = (g[:-1] + g[1:]) / 2
    n = np.arange(1, len(mids) + 1, dtype=np.float64)
    x = mids / (2 * math.pi)
    q = n - (7 / 8 + x * np.log(x) - x)
    slack = 3 + 0.5 * np.log(mids)
    bad = np.flatnonzero(np.abs(q) > slack)
    if bad.size:
        i = int(bad[0])
        raise GenerationError(f"counting check failed near T={mids[i]:.6f}: |N-L|={abs(q[i]):.3f}")
    return float(np.abs(q).max())
