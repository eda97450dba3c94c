"""Laurent expansion of the secondary zeta function Z(s) = sum gamma^-s about s = 1.

    Z(s) = 1/(2 pi (s-1)^2) - log(2 pi)/(2 pi (s-1)) + sum_n C_n (s-1)^n / n!

The series converges for |s - 1| < 2.  Reference values of C_n are embedded
(50 digits; C_0 also to 111 places) and can be replaced by a coefficient
file with lines ``n<TAB>value``.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import mpmath
from mpmath import mp

from ._numeric import precision, to_mpf
from .asymptotics import BptConstants, l_main
from .exceptions import LaurentDomainError
from .sums import power_sum
from .zero_source import ZeroTable, count_below

_TABLE_1 = {
    0: "0.2516367513127059665334663293426453755147595873836",
    1: "-0.1300444859118885707285274533988846777460553964263",
    2: "0.0824214912550528039526632284933172430791521350021",
    3: "-0.0321581827282544905964296099391141952179545405019",
    4: "-0.0531801364893419772868761573698112582469915802523",
    5: "0.2110321083617385257637243839874627961215847994456",
    6: "-0.4933371057135871285817870279321636575675112589435",
    7: "0.9731261196976619662852108486791876458635644729040",
    8: "-1.8021253179931622367536330625155209079039086674443",
    9: "3.7133510644596133576858937986178468541115390150895",
    10: "-11.583138616714443418004214394156033470878899508634",
    20: "-7.6931751083769270011123002218244304577221846239268e9",
    30: "-8.1910409909869137068367900925700302382658971132757e20",
    40: "-2.4605043425772457379890548734866774381567481629777e33",
    50: "-8.9568228254793711194813512752380738598982095960590e46",
}

#: C_0 to 111 decimal places as published alongside the 50-digit table.  The
#: accompanying remark about an offset of log^2(2 pi)/(4 pi) leaves open
#: whether these digits are before or after that correction; the 50-digit
#: value above is used for all computations.
C0_111_DIGITS = (
    "0.25163675131270596653346632934264537551475958738"
    "3654550533059356530585960570182311791574050852516"
    "937760994148142"
)


@dataclass(frozen=True)
class CoefficientTable:
    entries: Mapping[int, str]
    provenance: str = "embedded reference table (ADR algorithm, 50 digits)"

    def __post_init__(self):
        for n, v in self.entries.items():
            if int(n) != n or n < 0:
                raise ValueError(f"bad coefficient index {n!r}")
            mpmath.mpf(v)

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    def value(self, n: int):
        """C_n as an mpf at the current precision."""
        return mp.mpf(self.entries[n])

    def contiguous_max(self) -> int:
        n = -1
        while n + 1 in self.entries:
            n += 1
        return n

    def to_text(self) -> str:
        lines = [f"# {self.provenance}"]
        lines += [f"{n}\t{self.entries[n]}" for n in sorted(self.entries)]
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.to_text(), encoding="ascii")

    @classmethod
    def load(cls, path) -> "CoefficientTable":
        entries = {}
        for lineno, raw in enumerate(Path(path).read_text(encoding="ascii").splitlines(), start=1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'n<TAB>value'")
            n, v = int(parts[0]), parts[1].strip()
            if n in entries:
                raise ValueError(f"{path}:{lineno}: duplicate index {n}")
            mpmath.mpf(v)
            entries[n] = v
        return cls(entries, provenance=f"file {path}")


REFERENCE = CoefficientTable(dict(_TABLE_1))


def reference_value(n: int, *, prec=None):
    """Embedded C_n, or None when the table has no entry for n."""
    if n not in REFERENCE:
        return None
    with precision(prec):
        return REFERENCE.value(n)


@dataclass(frozen=True)
class LaurentPoint:
    s: mpmath.mpc
    terms_used: int
    value: mpmath.mpc
    last_term: mpmath.mpf
    truncation_envelope: mpmath.mpf


def principal_part(w):
    return 1 / (2 * mp.pi * w * w) - mpmath.log(2 * mp.pi) / (2 * mp.pi * w)


def laurent_eval(s, coeffs: CoefficientTable | None = None, max_n: int | None = None, *, prec=None) -> LaurentPoint:
    """Principal part plus sum_{n <= max_n} C_n (s-1)^n / n!."""
    coeffs = REFERENCE if coeffs is None else coeffs
    top = coeffs.contiguous_max()
    if max_n is None:
        max_n = top
    if max_n < 0 or max_n > top:
        raise LaurentDomainError(f"max_n={max_n} needs coefficients 0..{max_n}; data is contiguous to {top}")
    with precision(prec):
        s = mp.mpc(s)
        w = s - 1
        if w == 0:
            raise LaurentDomainError("s = 1 is the double pole")
        if not abs(w) < 2:
            raise LaurentDomainError("|s - 1| must be < 2 (radius of convergence)")
        total = mp.mpc(0)
        term = mp.mpc(0)
        wn = mp.mpc(1)
        for n in range(max_n + 1):
            term = coeffs.value(n) * wn / mpmath.factorial(n)
            total += term
            wn *= w
        # the remainder behaves like a geometric series of ratio |s-1|/2,
        # set by the nearest singularity at s = -1
        ratio = abs(w) / 2
        envelope = abs(term) * ratio / (1 - ratio)
        return LaurentPoint(s, max_n + 1, principal_part(w) + total, abs(term), envelope)


def smooth_tail(s, T):
    """int_T^inf t^-s dL(t) = (1/2pi)[T^{1-s} log(T/2pi)/(s-1) + T^{1-s}/(s-1)^2]."""
    p = T ** (1 - s)
    return (p * mpmath.log(T / (2 * mp.pi)) / (s - 1) + p / (s - 1) ** 2) / (2 * mp.pi)


def direct_z_envelope(s, T, c: BptConstants = BptConstants(), *, prec=None):
    """BPT-style size of s int_T^inf Q(t) t^{-s-1} dt, taking phi(t) = t^-s."""
    with precision(prec):
        s, t = to_mpf(s), to_mpf(T)
        a0, a1, a2 = c.values()
        return (2 * (a0 + a1 * mpmath.log(t)) + a1 + a2) * s * t ** (-s - 1)


def direct_z_tail(s, table: ZeroTable, T, *, prec=None, workers=None):
    """Z(s) for real s > 1 from the zeros below T, the smooth tail and -Q(T)/T^s."""
    with precision(prec) as bits:
        s, t = to_mpf(s), to_mpf(T)
        if not s > 1:
            raise ValueError("direct_z_tail needs real s > 1")
        head = power_sum(table, s, t, prec=bits, workers=workers).value
        q = count_below(table, t) - l_main(t, prec=bits)
        return head + smooth_tail(s, t) - q / t**s

