"""J1 against an independent quadrature oracle."""

import math

import numpy as np
import pytest

from qcbounds import bessel_j1
from qcbounds.errors import DomainError


def j1_quadrature(x: float, pts: int = 16384) -> float:
    """J1(x) = (1/pi) int_0^pi cos(theta - x sin theta) dtheta.

    Trapezoid on this integrand converges geometrically (the aliasing
    terms are Bessel functions of order ~2*pts, negligible for x << pts).
    """
    th = np.linspace(0.0, math.pi, pts + 1)
    return float(np.trapezoid(np.cos(th - x * np.sin(th)), th) / math.pi)


def test_spec_values():
    assert bessel_j1(0.0) == 0.0
    assert bessel_j1(1.0) == pytest.approx(0.4400505857449335, abs=1e-12)
    # first positive zero near 3.8317
    assert abs(bessel_j1(3.8317)) < 1e-4
    lo, hi = 3.8, 3.9
    assert bessel_j1(lo) > 0 > bessel_j1(hi)
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if bessel_j1(mid) > 0:
            lo = mid
        else:
            hi = mid
    assert 0.5 * (lo + hi) == pytest.approx(3.8317059702, abs=1e-6)


def test_absolute_error_on_0_1000():
    rng = np.random.default_rng(3)
    xs = np.concatenate(
        [np.linspace(0.0, 30.0, 240), rng.uniform(0.0, 1000.0, 160),
         [11.9, 11.999, 12.0, 12.001, 12.5, 999.9]]
    )
    for x in xs:
        assert bessel_j1(float(x)) == pytest.approx(j1_quadrature(float(x)), abs=1e-9)


def test_array_and_scalar_agree():
    xs = np.linspace(0.0, 40.0, 101)
    arr = bessel_j1(xs)
    for i, x in enumerate(xs):
        assert arr[i] == bessel_j1(float(x))


def test_half_x_inequality():
    rng = np.random.default_rng(4)
    xs = rng.uniform(0.0, 1000.0, 100_000)
    assert np.all(np.abs(bessel_j1(xs)) <= xs / 2.0 + 1e-15)


def test_negative_rejected():
    with pytest.raises(DomainError):
        bessel_j1(-0.5)
    with pytest.raises(DomainError):
        bessel_j1(np.array([1.0, -2.0]))
