import numpy as np
import pytest
from pydantic import ValidationError

from cventangle.errors import BoundaryMassError, DomainError, NormalizationError
from cventangle.schemas import GaussianBipartiteState
from cventangle.states import (
    GridWavefunction,
    apply_cnot_grid,
    apply_disentangler_grid,
    apply_entangler_grid,
    apply_fourier_grid,
    cat_amplitudes,
    make_bell,
    make_cat,
    make_product,
    make_squeezed,
)

GATE_ATOL = 1e-6


def _gaussian(x, y):
    return np.exp(-(x**2) - y**2)


@pytest.fixture
def product_grid() -> GridWavefunction:
    return GridWavefunction.sample(_gaussian, 100, 0.08)


def test_make_bell_rejects_nonpositive_widths():
    with pytest.raises(DomainError):
        make_bell(0.0, 1.0)
    with pytest.raises(DomainError):
        make_bell(1.0, 1.0, sigma=-1.0)


def test_make_squeezed_rejects_negative_r():
    with pytest.raises(DomainError):
        make_squeezed(-0.1)


def test_gaussian_state_must_be_integrable():
    with pytest.raises(ValidationError):
        GaussianBipartiteState(a_q=1.0, b_q=1.0, c_q=1.0)


def test_make_cat_checks_normalization():
    with pytest.raises(NormalizationError):
        make_cat(1.0, 1.0, 1.0)
    cat = make_cat(*cat_amplitudes(0.3), 1.5)
    np.testing.assert_allclose(cat.centers(1), [1.5, -1.5])
    np.testing.assert_allclose(cat.centers(2), [-1.5, 1.5])


def test_grid_axis_and_shape(product_grid):
    assert product_grid.side == 201
    assert product_grid.axis[0] == pytest.approx(-8.0)
    assert product_grid.values.shape == (201, 201)
    assert not product_grid.values.flags.writeable


def test_boundary_check():
    wide = GridWavefunction.sample(lambda x, y: np.exp(-(x**2) / 25.0 - y**2), 50, 0.1)
    with pytest.raises(BoundaryMassError):
        wide.check_boundary()


def test_fourier_round_trip(product_grid):
    there = apply_fourier_grid(product_grid, 2)
    # F exp(-y^2) = exp(-y^2)
    np.testing.assert_allclose(there.values, product_grid.values, atol=1e-10)
    back = apply_fourier_grid(there, 2, inverse=True)
    np.testing.assert_allclose(back.values, product_grid.values, atol=1e-10)


def test_fourier_with_scale_length():
    alpha, sigma = 1.5, 0.8
    w = GridWavefunction.sample(lambda x, y: np.exp(-(x**2) / (alpha * sigma) ** 2 - y**2), 120, 0.06)
    out = apply_fourier_grid(w, 1, sigma=sigma)
    X, Y = np.meshgrid(w.axis, w.axis, indexing="ij")
    np.testing.assert_allclose(out.values, alpha * np.exp(-(alpha**2) * X**2 / sigma**2 - Y**2), atol=1e-10)


def test_fourier_twice_is_parity():
    w = GridWavefunction.sample(lambda x, y: np.exp(-((x - 1.0) ** 2) - y**2), 120, 0.06)
    twice = apply_fourier_grid(apply_fourier_grid(w, 1), 1)
    X, Y = np.meshgrid(w.axis, w.axis, indexing="ij")
    np.testing.assert_allclose(twice.values, np.exp(-((X + 1.0) ** 2) - Y**2), atol=1e-10)


def test_cnot_round_trip(product_grid):
    out = apply_cnot_grid(apply_cnot_grid(product_grid, "forward"), "inverse")
    np.testing.assert_allclose(out.values, product_grid.values, atol=1e-12)


def test_cnot_shears_rows(product_grid):
    out = apply_cnot_grid(product_grid, "forward")
    X, Y = np.meshgrid(product_grid.axis, product_grid.axis, indexing="ij")
    np.testing.assert_allclose(out.values, _gaussian(X, Y - X), atol=1e-12)


def test_cnot_reports_lost_amplitude():
    wide = GridWavefunction.sample(lambda x, y: np.exp(-(x**2) / 16.0 - y**2), 50, 0.1)
    with pytest.raises(BoundaryMassError):
        apply_cnot_grid(wide)


def test_entangler_matches_closed_form_bell():
    alpha, beta, x1 = 1.2, 0.8, 0.5
    def packets(x, y):
        return np.exp(-((x - x1) ** 2) / alpha**2 - y**2 / beta**2)

    before = GridWavefunction.sample(packets, 150, 0.05)
    after = apply_entangler_grid(before)
    closed = GridWavefunction.sample(make_bell(alpha, beta, x1, 0.0).amplitude, 150, 0.05)
    np.testing.assert_allclose(after.values, alpha * closed.values, atol=GATE_ATOL)


def test_disentangler_undoes_entangler():
    before = GridWavefunction.sample(make_product(1.0, 1.0).amplitude, 120, 0.06)
    back = apply_disentangler_grid(apply_entangler_grid(before))
    np.testing.assert_allclose(back.values, before.values, atol=GATE_ATOL)
