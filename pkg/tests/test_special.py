import numpy as np
import pytest

from helpers import ci_oracle, erfc_oracle, si_oracle

from netunfold.errors import DomainError
from netunfold.special import EULER_GAMMA, cos_integral, erfc, euler_gamma, sin_integral


def test_si_at_zero_and_pi():
    assert sin_integral(0.0) == 0.0
    assert sin_integral(np.pi) == pytest.approx(si_oracle(np.pi), abs=1e-10)
    assert sin_integral(np.pi) == pytest.approx(1.8519370519824661, abs=1e-12)


def test_ci_at_one():
    assert cos_integral(1.0) == pytest.approx(ci_oracle(1.0), abs=1e-10)
    assert cos_integral(1.0) == pytest.approx(0.3374039229009681, abs=1e-12)


def test_si_is_odd():
    xs = np.array([0.3, 1.7, 5.0, 40.0])
    np.testing.assert_allclose(sin_integral(-xs), -sin_integral(xs), atol=1e-15)


def test_ci_domain():
    with pytest.raises(DomainError):
        cos_integral(0.0)
    with pytest.raises(DomainError):
        cos_integral(-1.0)


def test_si_ci_quadrature_grid():
    # 100 log-spaced points spanning (1e-3, 1e3]
    grid = np.logspace(-3, 3, 100)
    si_err = max(abs(sin_integral(x) - si_oracle(x)) for x in grid)
    ci_err = max(abs(cos_integral(x) - ci_oracle(x)) for x in grid)
    assert si_err < 1e-9
    assert ci_err < 1e-9


def test_switchover_continuity():
    for fn in (sin_integral, cos_integral):
        below = fn(2.0 - 1e-9)
        above = fn(2.0 + 1e-9)
        assert abs(above - below) < 1e-8


def test_erfc_values_and_symmetry():
    assert erfc(0.0) == pytest.approx(1.0, abs=1e-15)
    xs = np.array([0.2, 1.0, 2.5, 4.0])
    np.testing.assert_allclose(erfc(-xs), 2.0 - erfc(xs), atol=1e-14)
    grid = np.concatenate([np.logspace(-3, np.log10(6), 50), [1.9999, 2.0001]])
    err = max(abs(erfc(x) - erfc_oracle(x)) for x in np.concatenate([grid, -grid]))
    assert err < 1e-9


def test_euler_gamma_constant():
    assert euler_gamma() == EULER_GAMMA
    assert EULER_GAMMA == pytest.approx(np.euler_gamma, abs=1e-16)


def test_vectorized_shapes():
    arr = np.array([[0.5, 1.5], [2.5, 10.0]])
    out = sin_integral(arr)
    assert out.shape == arr.shape
    assert isinstance(sin_integral(1.0), float)
    assert isinstance(erfc(1.0), float)
