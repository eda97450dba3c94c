import mpmath
import pytest
from mpmath.libmp import from_int

from seczeta._numeric import chunked, decimal_digits, fmt, ordered_map, ordered_sum, precision, resolve_workers


def test_precision_context():
    before = mpmath.mp.prec
    with precision(300) as bits:
        assert bits == mpmath.mp.prec == 300
    assert mpmath.mp.prec == before
    with precision(None) as bits:
        assert bits == 192
    with pytest.raises(ValueError):
        with precision(40):
            pass


def test_decimal_digits_and_fmt():
    assert decimal_digits(192) == 58
    assert decimal_digits(53) == 16
    s = fmt(mpmath.mpf(1) / 3, 192)
    assert s.startswith("0.333") and len(s) == 60
    assert fmt(None) == "" and fmt(7) == "7"


def test_chunked_and_ordered_map():
    assert chunked(list(range(10)), 4) == [[0, 1, 2, 3], [4, 5, 6, 7], [8, 9]]
    assert ordered_map(lambda x: x * x, list(range(50)), workers=8) == [x * x for x in range(50)]
    with pytest.raises(ValueError):
        resolve_workers(0)


def test_ordered_sum_is_left_to_right():
    parts = [from_int(k) for k in range(1, 101)]
    assert mpmath.mp.make_mpf(ordered_sum(parts, 64)) == 5050
