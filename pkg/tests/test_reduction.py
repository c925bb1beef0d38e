import numpy as np
import pytest

from cventangle.errors import BoundaryMassError, DomainError
from cventangle.reduction import (
    DensityKernel,
    canonical_bell_kernel,
    canonical_kernel,
    check_kernel_decay,
    reduce_gaussian,
    reduce_mixture,
    reduce_numeric,
    trace_analytic_bell,
    trace_power,
    trace_quadrature,
)
from cventangle.schemas import KernelWindow, SwapOutcome
from cventangle.states import GridWavefunction, cat_amplitudes, make_bell, make_cat
from cventangle.swap import swap_cat

POINTS = np.array([-1.3, -0.4, 0.0, 0.25, 0.9, 1.6])


@pytest.fixture
def bell():
    return make_bell(1.0, 1.0, 0.3, 0.2)


@pytest.fixture
def cat():
    return make_cat(*cat_amplitudes(0.3), 1.0)


def _exact(kernel: DensityKernel, points: np.ndarray) -> np.ndarray:
    return kernel.sample(points) * np.exp(-kernel.log_scale)


def test_gaussian_kernel_matches_quadrature(bell):
    kernel = reduce_gaussian(bell)
    numeric = reduce_numeric(bell.amplitude, window=KernelWindow(center=0.0, half_width=12.0, std_estimate=0.5))
    np.testing.assert_allclose(_exact(kernel, POINTS), numeric.sample(POINTS), atol=1e-10)


def test_gaussian_kernel_second_subsystem(bell):
    kernel = reduce_gaussian(bell, which=2)
    numeric = reduce_numeric(bell.amplitude, which=2, window=KernelWindow(center=0.0, half_width=12.0, std_estimate=0.5))
    np.testing.assert_allclose(_exact(kernel, POINTS), numeric.sample(POINTS), atol=1e-10)


def test_gaussian_kernel_is_hermitian(bell):
    m = reduce_gaussian(bell).sample(POINTS)
    np.testing.assert_allclose(m, m.conj().T, atol=1e-14)


def test_gaussian_trace(bell):
    kernel = reduce_gaussian(bell)
    n = 200
    quad = trace_quadrature(kernel, n, kernel.window.half_width / n)
    assert quad == pytest.approx(kernel.trace_analytic, rel=1e-10)


@pytest.mark.parametrize("alpha,beta", [(0.5, 0.5), (1.0, 2.0), (2.0, 0.7)])
def test_canonical_bell_trace(alpha, beta):
    kernel = canonical_bell_kernel(alpha, beta)
    assert kernel.trace_analytic == pytest.approx(trace_analytic_bell(alpha, beta))
    assert canonical_kernel(2.0 * alpha**2 * beta**2).trace_analytic == pytest.approx(kernel.trace_analytic, rel=1e-12)
    n = 150
    assert trace_quadrature(kernel, n, kernel.window.half_width / n) == pytest.approx(kernel.trace_analytic, rel=1e-9)


def test_canonical_kernel_needs_positive_p():
    with pytest.raises(DomainError):
        canonical_kernel(0.0)


def test_mixture_kernel_matches_quadrature(cat):
    kernel = reduce_mixture(cat)
    numeric = reduce_numeric(cat.amplitude, window=KernelWindow(center=0.0, half_width=8.0, std_estimate=0.4))
    np.testing.assert_allclose(_exact(kernel, POINTS), numeric.sample(POINTS), atol=1e-10)


def test_mixture_sampler_agrees_with_evaluate(cat):
    kernel = reduce_mixture(cat)
    X, Xp = np.meshgrid(POINTS, POINTS, indexing="ij")
    np.testing.assert_allclose(kernel.sample(POINTS), kernel.evaluate(X, Xp), atol=1e-14)


def test_mixture_window_and_trace(cat):
    kernel = reduce_mixture(cat)
    assert kernel.window.center == pytest.approx(0.0)
    assert kernel.window.std_estimate == pytest.approx(1.0 / np.sqrt(2.0) + 1.0)
    n = 200
    assert trace_quadrature(kernel, n, kernel.window.half_width / n) == pytest.approx(kernel.trace_analytic, rel=1e-10)


def test_trace_power_first_order_is_trace(bell):
    kernel = reduce_gaussian(bell)
    n, delta = 120, kernel.window.half_width / 120
    assert trace_power(kernel, 1, n, delta) == pytest.approx(trace_quadrature(kernel, n, delta))
    assert trace_power(kernel, 2, n, delta) < trace_power(kernel, 1, n, delta) ** 2
    with pytest.raises(DomainError):
        trace_power(kernel, 0, n, delta)


def test_grid_reduction_only_at_lattice_points():
    w = GridWavefunction.sample(make_bell(1.0, 1.0).amplitude, 80, 0.1)
    kernel = reduce_numeric(w)
    assert np.isfinite(kernel.evaluate(np.array(0.3), np.array(-0.2)))
    with pytest.raises(DomainError):
        kernel.evaluate(np.array(0.05), np.array(0.0))


def test_callable_needs_window(bell):
    with pytest.raises(DomainError):
        reduce_numeric(bell.amplitude)


def test_kernel_decay():
    check_kernel_decay(canonical_kernel(2.0))
    narrow = canonical_kernel(2.0)
    clipped = DensityKernel(evaluate=narrow.evaluate, window=KernelWindow(center=0.0, half_width=0.5, std_estimate=0.05))
    with pytest.raises(BoundaryMassError):
        check_kernel_decay(clipped)


def test_gaussian_kernel_survives_a_large_target_offset():
    # x2 = 4 puts Re(e)^2 / 2b = 800 in the exponent, past the double range
    shifted = reduce_gaussian(make_bell(1.0, 0.2, 0.0, 4.0))
    plain = reduce_gaussian(make_bell(1.0, 0.2))
    assert shifted.log_scale == pytest.approx(-800.0)
    assert np.isfinite(shifted.trace_analytic)
    assert np.all(np.isfinite(shifted.sample(POINTS)))
    np.testing.assert_allclose(shifted.sample(POINTS), plain.sample(POINTS), atol=1e-12)
    assert shifted.trace_analytic == pytest.approx(plain.trace_analytic, rel=1e-12)


def test_shifted_gaussian_trace_matches_quadrature():
    kernel = reduce_gaussian(make_bell(0.8, 0.3, 1.5, 6.0))
    n = 200
    assert np.isfinite(kernel.trace_analytic)
    assert trace_quadrature(kernel, n, kernel.window.half_width / n) == pytest.approx(kernel.trace_analytic, rel=1e-10)


def test_mixture_kernel_stays_finite_far_apart():
    kernel = reduce_mixture(make_cat(*cat_amplitudes(0.3), 20.0))
    assert np.isfinite(kernel.trace_analytic) and kernel.trace_analytic > 0
    assert np.isfinite(kernel.log_scale)
    m = kernel.sample(np.array([-20.0, -1.0, 0.0, 20.0]))
    assert np.all(np.isfinite(m))
    assert np.abs(m).max() == pytest.approx(1.0)


def test_mixture_kernel_is_hermitian():
    kernel = reduce_mixture(swap_cat(*cat_amplitudes(0.3), 1.0, SwapOutcome(a=0.8)))
    pts = np.random.default_rng(7).uniform(-3.0, 3.0, size=12)
    m = kernel.sample(pts)
    assert np.abs(m.imag).max() > 1e-6
    np.testing.assert_allclose(m, m.conj().T, atol=1e-13)
    X, Xp = np.meshgrid(pts, pts, indexing="ij")
    np.testing.assert_allclose(kernel.evaluate(X, Xp), np.conj(kernel.evaluate(Xp, X)), atol=1e-13)
