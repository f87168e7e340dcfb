import subprocess
import sys

import numpy as np

from netunfold._kernels import (
    BACKEND,
    _delta3_windows_loop,
    _delta3_windows_numpy,
    delta3_windows,
)


def test_backends_agree_on_random_spectrum():
    rng = np.random.default_rng(4)
    levels = np.cumsum(rng.exponential(1.0, 20_000))
    starts = rng.uniform(levels[0], levels[-1] - 15.0, 1500)
    loop = _delta3_windows_loop(levels, starts, 15.0)
    vec = _delta3_windows_numpy(levels, starts, 15.0)
    active = delta3_windows(levels, starts, 15.0)
    np.testing.assert_allclose(loop, vec, rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(loop, active, rtol=1e-9, atol=1e-12)


def test_single_step_window_closed_form():
    # one level at the window midpoint: best-line residual is exactly 1/16
    # of the step variance budget: integral solves to 0.0625
    levels = np.array([0.5])
    starts = np.array([0.0])
    for fn in (_delta3_windows_loop, _delta3_windows_numpy):
        assert fn(levels, starts, 1.0)[0] == np.float64(0.0625)


def test_empty_window_contributes_zero():
    levels = np.concatenate([np.arange(0.0, 11.0), np.arange(100.0, 111.0)])
    starts = np.array([40.0, 60.0])  # fully inside the gap
    for fn in (_delta3_windows_loop, _delta3_windows_numpy):
        np.testing.assert_array_equal(fn(levels, starts, 8.0), [0.0, 0.0])


def test_levels_below_window_shift_nothing():
    # a constant offset in the staircase is absorbed by the fitted intercept
    inner = np.array([3.2, 3.9, 4.4])
    with_prefix = np.concatenate([np.array([0.1, 0.5, 1.0]), inner])
    starts = np.array([3.0])
    a = _delta3_windows_loop(inner, starts, 2.0)
    b = _delta3_windows_loop(with_prefix, starts, 2.0)
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_env_flag_selects_numpy_backend():
    code = "from netunfold._kernels import BACKEND; print(BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True,
        env={"PATH": "/usr/bin:/bin", "NETUNFOLD_NO_NUMBA": "1"},
    )
    assert out.stdout.strip() == "numpy"


def test_default_backend_is_numba_when_available():
    assert BACKEND in ("numba", "numpy")
    import os

    if os.environ.get("NETUNFOLD_NO_NUMBA", "").strip().lower() in ("1", "true", "yes"):
        assert BACKEND == "numpy"
        return
    try:
        import numba  # noqa: F401
    except ImportError:
        assert BACKEND == "numpy"
    else:
        assert BACKEND == "numba"
