import numpy as np
import pytest

from netunfold.errors import (
    DomainError,
    EmptyInputError,
    GridAlignmentError,
    InsufficientLevelsError,
    IntervalTooLongError,
    InvalidParameterError,
)
from netunfold.stats import (
    StatCurve,
    delta3_direct,
    delta3_via_integral,
    ensemble_average,
    nnsd,
    number_variance,
    spacings,
)
from netunfold.unfolding import PolynomialFit, UnfoldedSpectrum


def _unfolded(levels):
    return UnfoldedSpectrum(levels=np.asarray(levels, dtype=float), method=PolynomialFit(1))


def test_spacings_basic():
    u = _unfolded([1.0, 2.0, 3.5])
    np.testing.assert_allclose(spacings(u), [1.0, 1.5])


def test_spacings_picket_fence_and_telescoping():
    u = _unfolded(np.arange(100.0))
    s = spacings(u)
    assert s.size == 99
    np.testing.assert_allclose(s, 1.0)
    assert s.mean() == pytest.approx((u.levels[-1] - u.levels[0]) / 99)


def test_spacings_needs_two_levels():
    with pytest.raises(InsufficientLevelsError):
        spacings(_unfolded([1.0]))


def test_nnsd_picket_fence_mass():
    s = np.ones(99)
    hist = nnsd([s], bin_width=0.1)
    # spacing 1.0 sits at the closed right edge of the last bin
    assert hist.bin_edges[-1] == pytest.approx(1.0)
    assert hist.densities[-1] == pytest.approx(10.0)
    assert np.all(hist.densities[:-1] == 0)
    assert hist.area() == pytest.approx(1.0, abs=1e-9)


def test_nnsd_pools_members_and_normalizes():
    rng = np.random.default_rng(0)
    lists = [rng.exponential(1.0, 500) for _ in range(4)]
    hist = nnsd(lists, bin_width=0.1)
    assert hist.sample_count == 2000
    assert hist.area() == pytest.approx(1.0, abs=1e-9)


def test_nnsd_errors():
    with pytest.raises(EmptyInputError):
        nnsd([np.array([])], 0.1)
    with pytest.raises(InvalidParameterError):
        nnsd([np.ones(5)], 0.0)


def test_number_variance_picket_fence():
    u = _unfolded(np.arange(1000.0))
    mean, var = number_variance(u, 5.0, window_samples=300, rng_seed=1)
    assert mean == pytest.approx(5.0, abs=0.05)
    assert var == pytest.approx(0.0, abs=1e-12)


def test_number_variance_poisson_process():
    rng = np.random.default_rng(12)
    u = _unfolded(np.cumsum(rng.exponential(1.0, 10_000)))
    mean, var = number_variance(u, 5.0, window_samples=2000, rng_seed=7)
    assert mean == pytest.approx(5.0, rel=0.05)
    assert var == pytest.approx(5.0, rel=0.10)


def test_number_variance_errors():
    u = _unfolded(np.arange(30.0))
    with pytest.raises(IntervalTooLongError):
        number_variance(u, 20.0, 100, 0)
    with pytest.raises(InvalidParameterError):
        number_variance(u, 5.0, 5, 0)
    with pytest.raises(InvalidParameterError):
        number_variance(u, -1.0, 100, 0)


def test_number_variance_deterministic():
    rng = np.random.default_rng(5)
    u = _unfolded(np.cumsum(rng.exponential(1.0, 3000)))
    a = number_variance(u, 3.0, 200, rng_seed=42)
    b = number_variance(u, 3.0, 200, rng_seed=42)
    c = number_variance(u, 3.0, 200, rng_seed=43)
    assert a == b
    assert a != c


def test_delta3_direct_picket_fence_twelfth():
    u = _unfolded(np.arange(1000.0))
    val = delta3_direct(u, 50.0, window_samples=400, rng_seed=3)
    assert val == pytest.approx(1.0 / 12.0, rel=0.02)


def test_delta3_direct_deterministic_and_nonnegative():
    rng = np.random.default_rng(9)
    u = _unfolded(np.cumsum(rng.exponential(1.0, 5000)))
    a = delta3_direct(u, 10.0, 200, rng_seed=11)
    assert a == delta3_direct(u, 10.0, 200, rng_seed=11)
    assert a >= 0.0


def _sigma2_curve_from(fn, step, l_max):
    grid = step * np.arange(1, int(round(l_max / step)) + 1)
    return StatCurve(grid, fn(grid), np.zeros_like(grid), "sigma2")


@pytest.mark.parametrize("L", [1.0, 5.0, 20.0])
def test_delta3_integral_poisson_identity(L):
    curve = _sigma2_curve_from(lambda r: r, 1e-3, 20.0)
    assert delta3_via_integral(curve, L) == pytest.approx(L / 15.0, abs=1e-6)


def test_delta3_integral_constant_sigma2():
    c = 0.7
    curve = _sigma2_curve_from(lambda r: np.full_like(r, c), 1e-3, 10.0)
    # analytic value c/2; the jump at r=0 costs the trapezoid ~c*h/L
    for L in (2.0, 10.0):
        assert delta3_via_integral(curve, L) == pytest.approx(c / 2.0, abs=1e-3)


def test_delta3_integral_zero_sigma2():
    curve = _sigma2_curve_from(lambda r: np.zeros_like(r), 0.01, 5.0)
    assert delta3_via_integral(curve, 5.0) == 0.0


def test_delta3_integral_grid_errors():
    coarse = _sigma2_curve_from(lambda r: r, 0.2, 10.0)
    with pytest.raises(DomainError):
        delta3_via_integral(coarse, 5.0)
    short = _sigma2_curve_from(lambda r: r, 0.01, 3.0)
    with pytest.raises(DomainError):
        delta3_via_integral(short, 5.0)
    with pytest.raises(InvalidParameterError):
        delta3_via_integral(short, -1.0)


def test_ensemble_average_definitions():
    grid = np.array([1.0, 2.0])
    single = ensemble_average([np.array([3.0, 4.0])], grid, "delta3", "exact")
    np.testing.assert_array_equal(single.means, [3.0, 4.0])
    np.testing.assert_array_equal(single.std_errors, [0.0, 0.0])
    assert single.kind == "delta3" and single.method == "exact"

    v = np.array([1.0, 2.0])
    sym = ensemble_average([v, -v], grid, "sigma2")
    np.testing.assert_allclose(sym.means, 0.0, atol=1e-15)

    rng = np.random.default_rng(2)
    members = [rng.random(2) for _ in range(20)]
    curve = ensemble_average(members, grid, "delta3")
    stacked = np.vstack(members)
    np.testing.assert_allclose(
        curve.std_errors, stacked.std(axis=0, ddof=1) / np.sqrt(20), atol=1e-15
    )


def test_ensemble_average_errors():
    grid = np.array([1.0, 2.0])
    with pytest.raises(EmptyInputError):
        ensemble_average([], grid, "delta3")
    with pytest.raises(GridAlignmentError):
        ensemble_average([np.array([1.0])], grid, "delta3")


def test_statcurve_length_check():
    with pytest.raises(InvalidParameterError):
        StatCurve(np.array([1.0]), np.array([1.0, 2.0]), np.array([0.0]), "delta3")
