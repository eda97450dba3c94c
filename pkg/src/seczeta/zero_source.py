"""Zero-ordinate tables: validated loading, writing, counting and cutoffs.

The on-disk format is plain text, one decimal ordinate per line in
ascending order.  Lines starting with ``#`` are comments; blank lines are
ignored.  Exponent notation (``1.413472514e1``) is accepted.
"""
from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import mpmath
import numpy as np
from mpmath import mp

from . import __version__
from .exceptions import CutoffError, ZeroTableError

#: binary precision at which ordinates are held (about 77 decimal digits)
STORAGE_PREC = 256
GAMMA_1_FLOOR = 14

_NUMBER = re.compile(r"^[+]?(\d+)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$")


def _fraction_digits(text: str) -> int | None:
    m = _NUMBER.match(text)
    if m is None:
        return None
    frac = m.group(2) or ""
    exp = int(m.group(3) or 0)
    return max(0, len(frac) - exp)


@dataclass(frozen=True)
class ZeroTable:
    """Ascending positive ordinates of nontrivial zeros, immutable once built.

    ``source_digits`` is the number of fractional digits every entry is
    trusted to; ``write_digits`` is how many the writer emits.
    """

    gammas: tuple
    source_digits: int
    origin: Literal["file", "generated"] = "file"
    write_digits: int | None = None
    _floats: np.ndarray = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.source_digits < 1:
            raise ZeroTableError("source_digits must be positive")
        if self.origin not in ("file", "generated"):
            raise ZeroTableError(f"unknown origin {self.origin!r}")
        gs = self.gammas
        if gs and not gs[0] > GAMMA_1_FLOOR:
            raise ZeroTableError(f"first ordinate {gs[0]} is not above {GAMMA_1_FLOOR}", indices=(0,))
        for i in range(1, len(gs)):
            if not gs[i - 1] < gs[i]:
                raise ZeroTableError(f"ordinates not strictly increasing at index {i}", indices=(i - 1, i))
        if self.write_digits is None:
            object.__setattr__(self, "write_digits", self.source_digits)
        object.__setattr__(self, "_floats", np.array([float(g) for g in gs], dtype=np.float64))

    @property
    def count(self) -> int:
        return len(self.gammas)

    def __len__(self) -> int:
        return len(self.gammas)

    @property
    def floats(self) -> np.ndarray:
        """float64 view of the ordinates, for diagnostics and bounds only."""
        return self._floats

    def head(self, k: int) -> "ZeroTable":
        if not 0 < k <= self.count:
            raise ValueError(f"head size must be in 1..{self.count}")
        return ZeroTable(self.gammas[:k], self.source_digits, self.origin, self.write_digits)

    @classmethod
    def from_strings(cls, texts: Sequence[str], *, origin="file") -> "ZeroTable":
        digits = [_fraction_digits(t) for t in texts]
        if any(d is None for d in digits):
            bad = digits.index(None)
            raise ZeroTableError(f"malformed ordinate {texts[bad]!r}", indices=(bad,))
        if texts and min(digits) == 0:
            bad = digits.index(0)
            raise ZeroTableError(f"ordinate {texts[bad]!r} has no fractional digits", indices=(bad,))
        with mp.workprec(STORAGE_PREC):
            gammas = tuple(mp.mpf(t) for t in texts)
        return cls(gammas, min(digits, default=1), origin, max(digits, default=1))


def load_zeros(path, min_digits: int = 1) -> ZeroTable:
    """Read and validate a zero table.

    Raises :class:`ZeroTableError` on an empty file, a malformed line (the
    1-based line number is in ``err.line``), an ordering violation (entry
    indices in ``err.indices``) or when the observed precision is below
    ``min_digits`` fractional digits.
    """
    if min_digits < 1:
        raise ValueError("min_digits must be positive")
    texts: list[str] = []
    lines: list[int] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            if _NUMBER.match(s) is None:
                raise ZeroTableError(f"{path}:{lineno}: cannot parse {s!r}", line=lineno)
            texts.append(s)
            lines.append(lineno)
    if not texts:
        raise ZeroTableError(f"{path}: empty zero table")
    try:
        table = ZeroTable.from_strings(texts, origin="file")
    except ZeroTableError as err:
        if err.indices:
            at = err.indices[-1]
            raise ZeroTableError(
                f"{path}:{lines[at]}: {err} (entries {', '.join(map(str, err.indices))})",
                line=lines[at],
                indices=err.indices,
            ) from None
        raise
    if table.source_digits < min_digits:
        raise ZeroTableError(
            f"{path}: entries carry {table.source_digits} fractional digits, {min_digits} required"
        )
    return table


def format_ordinate(g, digits: int) -> str:
    with mp.workprec(STORAGE_PREC):
        ip = int(mpmath.floor(g))
        scaled = mpmath.nint((g - ip) * mpmath.mpf(10) ** digits)
        frac = int(scaled)
        if frac == 10**digits:
            ip, frac = ip + 1, 0
    return f"{ip}.{frac:0{digits}d}"


def save_zeros(table: ZeroTable, path, *, generator: str | None = None) -> None:
    header = [
        "# seczeta zero table",
        f"# count: {table.count}",
        f"# digits: {table.source_digits}",
        f"# origin: {table.origin}",
        f"# generator: {generator or 'seczeta ' + __version__}",
    ]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(header) + "\n")
        for g in table.gammas:
            fh.write(format_ordinate(g, table.write_digits) + "\n")


def mean_gap(height) -> float:
    """Average zero spacing 2 pi / log(T / 2 pi) near height T."""
    h = float(height)
    return 2 * math.pi / math.log(h / (2 * math.pi))


def coverage_limit(table: ZeroTable):
    """Largest T for which counting against this table is honest."""
    if table.count == 0:
        raise CutoffError("empty table")
    last = table.gammas[-1]
    return last + mean_gap(last)


def count_below(table: ZeroTable, T) -> int:
    """N(T) = #{gamma in table : gamma < T}.

    Refuses T within 10^-source_digits of a tabulated ordinate and T past
    one mean gap beyond the last entry.
    """
    with mp.workprec(STORAGE_PREC):
        t = mp.mpf(T)
        if t <= 0:
            raise CutoffError("T must be positive")
        if table.count == 0:
            return 0
        if t > coverage_limit(table):
            raise CutoffError(f"T={mpmath.nstr(t, 15)} lies beyond the table's coverage")
        k = bisect.bisect_left(table.gammas, t)
        tol = mpmath.mpf(10) ** (-table.source_digits)
        for j in (k - 1, k):
            if 0 <= j < table.count and abs(table.gammas[j] - t) <= tol:
                raise CutoffError(
                    f"T={mpmath.nstr(t, 20)} coincides with gamma_{j + 1} to the table's precision"
                )
        return k


def default_cutoff(table: ZeroTable):
    """Last ordinate plus half the local mean gap."""
    if table.count == 0:
        raise CutoffError("empty table has no default cutoff")
    with mp.workprec(STORAGE_PREC):
        last = table.gammas[-1]
        return last + mp.pi / mpmath.log(last / (2 * mp.pi))


def midpoint_cutoff(table: ZeroTable, k: int):
    """Midpoint between gamma_k and gamma_{k+1} (1-based k), so N(T) = k exactly."""
    if not 1 <= k < table.count:
        raise CutoffError(f"need 1 <= k < {table.count} for a midpoint cutoff")
    with mp.workprec(STORAGE_PREC):
        return (table.gammas[k - 1] + table.gammas[k]) / 2


def inter_zero_midpoints(table: ZeroTable) -> list:
    with mp.workprec(STORAGE_PREC):
        g = table.gammas
        return [(g[i] + g[i + 1]) / 2 for i in range(len(g) - 1)]


def from_values(values: Iterable, digits: int, origin: Literal["file", "generated"] = "generated") -> ZeroTable:
    """Build a table from numbers rounded to ``digits`` fractional digits."""
    return ZeroTable.from_strings([format_ordinate(mp.mpf(v), digits) for v in values], origin=origin)
