import math

import numpy as np
import pytest

from kuramoto_landscape.intervals import Interval, IntervalDomainError


def test_point_and_containment():
    x = Interval.point(1.5)
    assert x.contains(1.5)
    assert x.width == 0.0


def test_invalid_interval():
    with pytest.raises(IntervalDomainError):
        Interval(2.0, 1.0)
    with pytest.raises(IntervalDomainError):
        Interval(0.0, math.inf)


def test_arithmetic_soundness_random():
    rng = np.random.default_rng(0)
    for _ in range(500):
        a_lo, a_hi = sorted(rng.uniform(-5, 5, 2))
        b_lo, b_hi = sorted(rng.uniform(-5, 5, 2))
        a, b = Interval(a_lo, a_hi), Interval(b_lo, b_hi)
        xa = rng.uniform(a_lo, a_hi)
        xb = rng.uniform(b_lo, b_hi)
        assert (a + b).contains(xa + xb)
        assert (a - b).contains(xa - xb)
        assert (a * b).contains(xa * xb)
        if b_lo > 0 or b_hi < 0:
            assert (a / b).contains(xa / xb)
        assert a.square().contains(xa * xa)
        if a_lo >= 0:
            assert a.sqrt().contains(math.sqrt(xa))


def test_mixed_scalar_ops():
    a = Interval(1.0, 2.0)
    assert (1.0 - a).contains(-0.5)
    assert (3.0 * a).contains(4.5)
    assert (1.0 / a).contains(0.75)
    assert (a + 1.0).contains(2.5)


def test_division_through_zero_raises():
    with pytest.raises(IntervalDomainError):
        Interval(1.0, 2.0) / Interval(-1.0, 1.0)


def test_sqrt_of_negative_raises():
    with pytest.raises(IntervalDomainError):
        Interval(-1.0, 1.0).sqrt()


def test_outward_rounding():
    third = Interval.point(1.0) / Interval.point(3.0)
    assert third.lo < 1 / 3 < third.hi or (third.lo <= 1 / 3 <= third.hi and third.width > 0)
    root = Interval.point(2.0).sqrt()
    assert root.lo < math.sqrt(2) < root.hi or root.width > 0


def test_split_covers():
    a = Interval(0.0, 1.0)
    lo, hi = a.split()
    assert lo.lo == 0.0 and hi.hi == 1.0
    assert lo.hi == hi.lo
