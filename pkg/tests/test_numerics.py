"""Numerical kernel tests against frozen high-precision references.

The J0 references below were computed independently with 40-digit
arithmetic from the ascending series / large-argument expansion and are
frozen here; the integral oracle provides a second, code-independent route.
"""

import math

import numpy as np
import pytest

from mzfringe.errors import QuadratureNoConvergence
from mzfringe.numerics import (bessel_j0, bessel_j0_oracle, integrate,
                               maximize_abs)

# |x| -> J0(x), 40-digit values rounded to double precision
J0_REFERENCE = {
    0.0: 1.0,
    0.5: 0.93846980724081290423,
    1.0: 0.76519768655796655145,
    2.404826: -2.2962111144365324634e-07,
    3.0: -0.26005195490193343762,
    5.0: -0.17759677131433830435,
    11.9: 0.02504944169958964508,
    12.0: 0.047689310796833536624,
    12.1: 0.069666773606807311849,
    20.0: 0.16702466434058315473,
    50.0: 0.055812327669251815005,
}

J0_FIRST_ZERO = 2.4048255576957727686


# -- integrate ----------------------------------------------------------------


def test_integrate_linear_exact():
    res = integrate(lambda x: x, 0.0, 1.0, tol=1e-12)
    assert abs(res.value - 0.5) <= 1e-12
    assert res.abs_error <= 1e-12
    assert res.evaluations > 0


def test_integrate_cosine_symmetry():
    res = integrate(np.cos, 0.0, math.pi, tol=1e-12)
    assert abs(res.value) <= 1e-12


def test_integrate_bessel_integrand():
    res = integrate(lambda t: np.cos(3.0 * np.sin(t)) / math.pi,
                    -0.5 * math.pi, 0.5 * math.pi, tol=1e-10)
    assert abs(res.value - J0_REFERENCE[3.0]) <= 1e-10


def test_integrate_oscillatory():
    res = integrate(lambda x: np.cos(40.0 * x), 0.0, 1.0, tol=1e-11)
    assert abs(res.value - math.sin(40.0) / 40.0) <= 1e-11


def test_integrate_additive_over_adjacent_intervals():
    rng = np.random.default_rng(7)
    for _ in range(5):
        a, b, c = np.sort(rng.uniform(-3.0, 3.0, 3))
        w = rng.uniform(0.5, 4.0)

        def f(x):
            return np.exp(-0.3 * x * x) * np.cos(w * x)

        whole = integrate(f, a, c, tol=1e-10).value
        parts = integrate(f, a, b, tol=1e-10).value \
            + integrate(f, b, c, tol=1e-10).value
        assert abs(whole - parts) <= 2e-10


def test_integrate_error_budget_exhaustion():
    def spiky(x):
        return np.abs(x - 0.31) ** -0.9

    with pytest.raises(QuadratureNoConvergence):
        integrate(spiky, 0.0, 1.0, tol=1e-12, max_evaluations=3000)


def test_integrate_rejects_bad_input():
    with pytest.raises(ValueError):
        integrate(np.cos, 1.0, 1.0, tol=1e-9)
    with pytest.raises(ValueError):
        integrate(np.cos, 0.0, 1.0, tol=0.0)
    with pytest.raises(ValueError):
        integrate(np.cos, math.inf, 1.0, tol=1e-9)


# -- maximize_abs -------------------------------------------------------------


def test_maximize_cosine_tie_breaks_small():
    res = maximize_abs(lambda d: math.cos(d), 0.0, 2.0 * math.pi, grid_n=256)
    assert res.max_abs == pytest.approx(1.0, abs=1e-12)
    assert res.argmax == pytest.approx(0.0, abs=1e-9)


def test_maximize_enveloped_fringe():
    def f(d):
        return math.exp(-d * d / 8.0) * math.cos(d)

    res = maximize_abs(f, 0.0, 4.0 * math.pi)
    assert res.max_abs == pytest.approx(1.0, abs=1e-12)
    assert res.argmax == pytest.approx(0.0, abs=1e-9)


def test_maximize_plane_wave_objective():
    # fringe term for arcsine noise at fixed wavenumber: peak is |J0|
    k, sigma = 1.3, 0.9
    amp = bessel_j0(2.0 * k * sigma)

    def f(d):
        return amp * math.cos(k * d)

    res = maximize_abs(f, 0.0, 2.0 * math.pi / k)
    assert res.max_abs == pytest.approx(abs(amp), abs=1e-12)


def test_maximize_no_grid_point_beats_result():
    rng = np.random.default_rng(21)
    for _ in range(5):
        a1, a2 = rng.uniform(-1.0, 1.0, 2)
        w1, w2 = rng.uniform(0.5, 6.0, 2)

        def f(d):
            return a1 * math.cos(w1 * d) + a2 * math.sin(w2 * d)

        lo, hi = 0.0, 7.0
        res = maximize_abs(f, lo, hi, grid_n=512)
        grid = np.linspace(lo, hi, 512)
        assert res.max_abs >= max(abs(f(x)) for x in grid) - 1e-10
        assert res.bracket[0] <= res.argmax <= res.bracket[1]


def test_maximize_degenerate_interval():
    res = maximize_abs(lambda d: -2.0 * d + 1.0, 3.0, 3.0)
    assert res.argmax == 3.0
    assert res.max_abs == 5.0


def test_maximize_rejects_bad_input():
    with pytest.raises(ValueError):
        maximize_abs(math.cos, 0.0, 1.0, grid_n=32)
    with pytest.raises(ValueError):
        maximize_abs(math.cos, 1.0, 0.0)
    with pytest.raises(ValueError):
        maximize_abs(math.cos, 0.0, 1.0, tol=0.0)


# -- bessel_j0 ----------------------------------------------------------------


@pytest.mark.parametrize("x,expected", sorted(J0_REFERENCE.items()))
def test_bessel_j0_reference_values(x, expected):
    assert abs(bessel_j0(x) - expected) <= 1e-12


def test_bessel_j0_even():
    for x in (0.3, 1.7, 5.0, 13.0, 31.0):
        assert bessel_j0(-x) == bessel_j0(x)


def test_bessel_j0_bounded():
    xs = np.linspace(0.0, 50.0, 2001)
    assert np.all(np.abs(bessel_j0(xs)) <= 1.0)


def test_bessel_j0_array_shape():
    xs = np.array([[0.5, 1.0], [12.0, 20.0]])
    out = bessel_j0(xs)
    assert out.shape == xs.shape
    assert out[1, 1] == bessel_j0(20.0)


@pytest.mark.parametrize("x", sorted(J0_REFERENCE))
def test_bessel_j0_matches_oracle(x):
    assert abs(bessel_j0(x) - bessel_j0_oracle(x, tol=1e-10)) <= 1e-8


def test_bessel_j0_oracle_at_zero():
    assert bessel_j0_oracle(0.0, tol=1e-12) == pytest.approx(1.0, abs=1e-12)


def test_bessel_first_zero_by_bisection():
    lo, hi = 2.0, 3.0
    assert bessel_j0(lo) > 0.0 > bessel_j0(hi)
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if bessel_j0(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    zero = 0.5 * (lo + hi)
    assert abs(zero - J0_FIRST_ZERO) <= 1e-9
    assert abs(zero - 2.404826) <= 1e-5
