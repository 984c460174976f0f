import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcomb.networks import x_from_y
from qcomb.tradeoff import curve, curve_residual, info_disturbance


def test_endpoints_exact():
    pts = curve(1001)
    assert (pts[0].info, pts[0].disturbance) == (0.0, 0.0)
    assert (pts[-1].info, pts[-1].disturbance) == (1.0, 1.0)
    assert pts[0].y == 1.0 and pts[-1].y == 0.0


def test_identity_over_dense_curve():
    pts = curve(1001)
    assert len(pts) == 1001
    assert max(abs(p.residual) for p in pts) <= 1e-10
    assert max(abs(p.disturbance - p.x**2) for p in pts) <= 1e-12


def test_quadratic_root_cross_check():
    # solving (D-I)^2 = D(1-I) for the smaller root in D gives the curve independently
    for p in curve(201):
        i = p.info
        d = ((1 + i) - math.sqrt((1 + i) ** 2 - 4 * i * i)) / 2
        assert abs(d - p.disturbance) <= 1e-9


def test_monotone():
    pts = curve(101)
    assert all(a.info <= b.info + 1e-15 for a, b in zip(pts, pts[1:]))
    assert all(a.disturbance <= b.disturbance + 1e-15 for a, b in zip(pts, pts[1:]))


def test_off_curve_residual_nonzero():
    assert curve_residual(0.5, 0.5) != 0.0


def test_too_few_samples():
    with pytest.raises(ValueError):
        curve(1)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1.0))
def test_point_lies_on_curve(y):
    p = info_disturbance(x_from_y(y))
    assert 0.0 <= p.info <= 1.0 + 1e-12
    assert 0.0 <= p.disturbance <= 1.0 + 1e-12
    assert abs(p.residual) <= 1e-10
    assert p.disturbance <= p.info + 1e-12
