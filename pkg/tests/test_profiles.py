"""Initial data families: supports, means, derivatives, and size constants."""

import numpy as np
import pytest

from slwave import FAMILIES, make_data


@pytest.mark.parametrize("family", FAMILIES)
def test_compact_support(family):
    data = make_data(family, 1.0, 1.0)
    x = np.concatenate([np.linspace(-5.0, -1.0, 200), np.linspace(1.0, 5.0, 200)])
    for fn in (data.f, data.f1, data.f2, data.g, data.g1):
        assert np.all(fn(x) == 0.0)


@pytest.mark.parametrize("family,R", [(f, R) for f in FAMILIES for R in (1.0, 2.0)])
def test_g_mean_matches_quadrature(family, R):
    data = make_data(family, R, 1.0)
    x = np.linspace(-R, R, 200001)
    quad = np.trapezoid(data.g(x), x)
    assert quad == pytest.approx(data.g_mean, abs=1e-9)
    quad_f = np.trapezoid(data.f(x), x)
    assert quad_f == pytest.approx(data.f_mean, abs=1e-9)


@pytest.mark.parametrize("family", FAMILIES)
def test_g_int_is_running_integral(family):
    data = make_data(family, 1.0, 1.0)
    x = np.linspace(-1.5, 1.5, 3001)
    dx = x[1] - x[0]
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (data.g(x)[1:] + data.g(x)[:-1]) * dx)))
    cum += data.g_int(np.array([-1.5]))[0]
    assert np.max(np.abs(cum - data.g_int(x))) < 1e-6
    # endpoint value equals the full mean
    assert data.g_int(np.array([2.0]))[0] == pytest.approx(data.g_mean, abs=1e-12)


@pytest.mark.parametrize("family", FAMILIES)
def test_derivatives_match_finite_differences(family):
    data = make_data(family, 1.0, 1.0)
    x = np.linspace(-0.95, 0.95, 401)
    h = 1e-6
    fd1 = (data.f(x + h) - data.f(x - h)) / (2.0 * h)
    assert np.max(np.abs(fd1 - data.f1(x))) < 1e-5
    fd2 = (data.f1(x + h) - data.f1(x - h)) / (2.0 * h)
    assert np.max(np.abs(fd2 - data.f2(x))) < 1e-4
    gd1 = (data.g(x + h) - data.g(x - h)) / (2.0 * h)
    assert np.max(np.abs(gd1 - data.g1(x))) < 1e-4


def test_mean_zero_flags():
    assert not make_data("bump", 1.0, 1.0).mean_zero
    assert make_data("dipole", 1.0, 1.0).mean_zero
    assert make_data("blowup-seed", 1.0, 1.0).mean_zero


def test_bump_exact_means():
    data = make_data("bump", 2.0, 1.0)
    assert data.g_mean == pytest.approx(16.0 * 2.0 / 15.0, rel=1e-14)
    assert data.f_mean == pytest.approx(32.0 * 2.0 / 35.0, rel=1e-14)


@pytest.mark.parametrize("R", [1.0, 1.5, 3.0])
def test_blowup_seed_plateau(R):
    """f >= f0 and -f' >= f0 on (-R/2, 0) with the reported constant."""
    data = make_data("blowup-seed", R, 1.0)
    assert data.f0 > 0.0
    x = np.linspace(-R / 2.0, 0.0, 5001)
    assert np.min(data.f(x)) >= data.f0 - 1e-12
    assert np.min(-data.f1(x)) >= data.f0 - 1e-12
    x_all = np.linspace(-R, R, 5001)
    assert np.min(data.f(x_all)) >= 0.0


def test_data_size_M_positive_and_scales_with_R():
    m1 = make_data("bump", 1.0, 1.0).data_size_M()
    m2 = make_data("bump", 2.0, 1.0).data_size_M()
    assert m1 > 0.0
    # derivative sups shrink with R while the L1 term grows; both finite
    assert m2 > 0.0


def test_invalid_inputs_rejected():
    with pytest.raises(ValueError):
        make_data("bump", 0.5, 1.0)
    with pytest.raises(ValueError):
        make_data("bump", 1.0, 0.0)
    with pytest.raises(ValueError):
        make_data("unknown", 1.0, 1.0)
