"""Shift-law tests: densities, samplers, and the two characteristic routes."""

import math

import numpy as np
import pytest

from mzfringe.errors import DensityUndefined, EndpointSingular, TooFewSamples
from mzfringe.shift_noise import (CharacteristicValue, ShiftDistribution,
                                  ShiftKind)

INV_SQRT_2PI = 0.39894228040143267794
INV_2PI = 0.15915494309189533577
EXP_MINUS_HALF = 0.6065306597126334236


# -- construction -------------------------------------------------------------


def test_zero_scale_degenerates_to_delta():
    for factory in (ShiftDistribution.gaussian, ShiftDistribution.arcsine,
                    ShiftDistribution.uniform):
        assert factory(0.0).kind is ShiftKind.DELTA


def test_negative_scale_rejected():
    for factory in (ShiftDistribution.gaussian, ShiftDistribution.arcsine,
                    ShiftDistribution.uniform):
        with pytest.raises(ValueError):
            factory(-1.0)


def test_empirical_needs_two_samples():
    with pytest.raises(TooFewSamples):
        ShiftDistribution.empirical([0.5])


def test_empirical_centering_recorded():
    dist = ShiftDistribution.empirical([1.0, 2.0, 6.0])
    assert dist.center_offset == pytest.approx(3.0)
    assert np.mean(dist.samples) == pytest.approx(0.0, abs=1e-15)
    diag = dist.diagnostics
    assert diag["n_samples"] == 3
    assert diag["center_offset"] == pytest.approx(3.0)


# -- density ------------------------------------------------------------------


def test_gaussian_density_peak():
    assert ShiftDistribution.gaussian(1.0).density(0.0) == pytest.approx(
        INV_SQRT_2PI, abs=1e-15)


def test_arcsine_density_center():
    assert ShiftDistribution.arcsine(1.0).density(0.0) == pytest.approx(
        INV_2PI, abs=1e-15)


def test_uniform_density_outside_support():
    assert ShiftDistribution.uniform(2.0).density(3.0) == 0.0
    assert ShiftDistribution.uniform(2.0).density(1.0) == 0.25


def test_density_undefined_kinds():
    with pytest.raises(DensityUndefined):
        ShiftDistribution.delta().density(0.0)
    with pytest.raises(DensityUndefined):
        ShiftDistribution.empirical([0.1, -0.1]).density(0.0)


def test_arcsine_endpoint_singular():
    dist = ShiftDistribution.arcsine(1.5)
    with pytest.raises(EndpointSingular):
        dist.density(3.0)
    with pytest.raises(EndpointSingular):
        dist.density(-3.0)
    assert dist.density(3.1) == 0.0


def test_densities_normalized_by_quadrature():
    from mzfringe.numerics import integrate
    gauss = ShiftDistribution.gaussian(0.7)
    res = integrate(lambda x: np.array([gauss.density(v) for v in x]),
                    -7.0, 7.0, tol=1e-9)
    assert abs(res.value - 1.0) <= 1e-8
    uni = ShiftDistribution.uniform(1.3)
    res = integrate(lambda x: np.array([uni.density(v) for v in x]),
                    -1.3, 1.3, tol=1e-9)
    assert abs(res.value - 1.0) <= 1e-8


# -- sampling -----------------------------------------------------------------


def test_delta_sampling_is_zero():
    rng = np.random.default_rng(0)
    assert ShiftDistribution.delta().sample(rng) == 0.0
    assert np.all(ShiftDistribution.delta().sample(rng, size=10) == 0.0)


def test_arcsine_second_moment():
    rng = np.random.default_rng(101)
    draws = ShiftDistribution.arcsine(1.0).sample(rng, size=1_000_000)
    # E[d^2] = 2 sigma^2, var(d^2) = 2 sigma^4
    se = math.sqrt(2.0 / draws.size)
    assert abs(np.mean(draws ** 2) - 2.0) <= 4.0 * se
    assert np.max(np.abs(draws)) <= 2.0


def test_gaussian_sample_std():
    rng = np.random.default_rng(102)
    draws = ShiftDistribution.gaussian(2.0).sample(rng, size=1_000_000)
    se = 2.0 / math.sqrt(2.0 * draws.size)
    assert abs(np.std(draws) - 2.0) <= 4.0 * se


def test_uniform_sample_range_and_mean():
    rng = np.random.default_rng(103)
    draws = ShiftDistribution.uniform(1.5).sample(rng, size=200_000)
    assert np.all(np.abs(draws) <= 1.5)
    se = 1.5 / math.sqrt(3.0 * draws.size)
    assert abs(np.mean(draws)) <= 4.0 * se


def test_empirical_sampling_symmetrized():
    rng = np.random.default_rng(104)
    dist = ShiftDistribution.empirical([0.0, 2.0])  # centered: {-1, +1}
    draws = dist.sample(rng, size=100_000)
    assert set(np.unique(draws)) == {-1.0, 1.0}
    # the random sign makes the ensemble symmetric even though indices
    # alone would already be
    assert abs(np.mean(draws)) <= 4.0 / math.sqrt(draws.size)


# -- characteristic function ---------------------------------------------------


def test_characteristic_at_zero_is_one():
    rng = np.random.default_rng(4)
    dists = [ShiftDistribution.delta(), ShiftDistribution.gaussian(1.3),
             ShiftDistribution.arcsine(0.7), ShiftDistribution.uniform(2.1),
             ShiftDistribution.empirical(rng.normal(0, 1, 100))]
    for dist in dists:
        assert dist.characteristic(0.0).value == 1.0


def test_characteristic_gaussian_closed_form():
    cv = ShiftDistribution.gaussian(1.0).characteristic(1.0)
    assert cv.value == pytest.approx(EXP_MINUS_HALF, abs=1e-15)
    assert cv.abs_error == 0.0


def test_characteristic_arcsine_first_zero():
    sigma = 2.404826 / 2.0
    assert abs(ShiftDistribution.arcsine(sigma).characteristic(1.0).value) <= 1e-6


def test_characteristic_uniform_node():
    dist = ShiftDistribution.uniform(1.0)
    assert abs(dist.characteristic(math.pi).value) <= 1e-15
    assert dist.characteristic(2.0).value == pytest.approx(
        math.sin(2.0) / 2.0, abs=1e-15)


def test_characteristic_even_and_bounded():
    rng = np.random.default_rng(5)
    dists = [ShiftDistribution.gaussian(0.8), ShiftDistribution.arcsine(1.1),
             ShiftDistribution.uniform(1.7),
             ShiftDistribution.empirical(rng.normal(0, 2, 300))]
    ks = np.linspace(0.0, 8.0, 41)
    for dist in dists:
        plus = dist.characteristic_curve(ks)
        minus = dist.characteristic_curve(-ks)
        assert np.array_equal(plus, minus)
        assert np.all(np.abs(plus) <= 1.0)


@pytest.mark.parametrize("kind", ["gaussian", "arcsine", "uniform"])
@pytest.mark.parametrize("scale", [0.1, 1.0, 3.0])
def test_characteristic_matches_quadrature(kind, scale):
    dist = getattr(ShiftDistribution, kind)(scale)
    for k in (0.1, 0.5, 1.0, 2.0, 5.0):
        closed = dist.characteristic(k)
        numeric = dist.characteristic_numeric(k, tol=1e-10)
        assert abs(closed.value - numeric.value) <= 1e-8
        assert numeric.abs_error <= 1e-10


def test_characteristic_numeric_undefined_kinds():
    with pytest.raises(DensityUndefined):
        ShiftDistribution.delta().characteristic_numeric(1.0)
    with pytest.raises(DensityUndefined):
        ShiftDistribution.empirical([1.0, -1.0]).characteristic_numeric(1.0)


def test_empirical_characteristic_concentrates():
    rng = np.random.default_rng(106)
    sigma = 1.0
    dist = ShiftDistribution.empirical(rng.normal(0.0, sigma, 1_000_000))
    bound = 5.0 / math.sqrt(1_000_000)
    for k in (0.1, 0.5, 1.0, 2.0):
        target = math.exp(-0.5 * (k * sigma) ** 2)
        assert abs(dist.characteristic(k).value - target) <= bound


def test_empirical_all_zero_samples():
    dist = ShiftDistribution.empirical([0.0, 0.0, 0.0])
    for k in (0.0, 1.0, 7.5):
        assert dist.characteristic(k).value == 1.0


def test_characteristic_value_invariants():
    with pytest.raises(ValueError):
        CharacteristicValue(value=1.5, abs_error=0.0)
    with pytest.raises(ValueError):
        CharacteristicValue(value=0.5, abs_error=-1.0)
    cv = CharacteristicValue(value=1.0 + 5e-10, abs_error=1e-9)
    assert cv.value > 1.0
