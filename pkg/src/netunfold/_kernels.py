"""Hot window-scan kernels with a numba JIT path and a pure-numpy fallback.

The rigidity statistic integrates the squared residual of the level
staircase against its best-fit line over hundreds of thousands of windows,
which dominates pipeline runtime. Two interchangeable implementations:

* ``_delta3_windows_loop`` — straight per-window loop, compiled with
  ``@njit`` when numba is importable (the default backend);
* ``_delta3_windows_numpy`` — per-window numpy slices, no compilation.

Set ``NETUNFOLD_NO_NUMBA=1`` to force the numpy path (or it is picked
automatically when numba is missing). Both paths evaluate the same exact
piecewise integrals; they differ only in floating-point summation order, so
results agree to ~1e-12 but are not guaranteed bit-identical across
backends. Within one backend, output is bit-stable.

``bench/bench_kernels.py`` times one against the other.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("NETUNFOLD_NO_NUMBA", "").strip().lower()
_NUMBA_DISABLED = _FLAG in ("1", "true", "yes")

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:
    _HAVE_NUMBA = False


def _delta3_windows_loop(levels, starts, length):
    """Per-window least-squares staircase deviation, exact integration.

    For each window [a, a+L] the staircase of levels inside the window is
    integrated against its best-fit line in closed form (no discretization).
    Levels below the window shift the staircase by a constant, which the
    fitted intercept absorbs, so only in-window levels enter.
    """
    out = np.empty(starts.size, dtype=np.float64)
    for w in range(starts.size):
        alpha = starts[w]
        lo = np.searchsorted(levels, alpha, side="right")
        hi = np.searchsorted(levels, alpha + length, side="left")
        k = hi - lo
        if k == 0:
            out[w] = 0.0
            continue
        b0 = 0.0
        b1 = 0.0
        s_int = 0.0
        for j in range(k):
            x = levels[lo + j] - alpha
            b0 += length - x
            b1 += 0.5 * (length * length - x * x)
            s_int += (2 * j + 1) * (length - x)
        a_fit = 4.0 * b0 / length - 6.0 * b1 / (length * length)
        b_fit = 12.0 * b1 / length ** 3 - 6.0 * b0 / (length * length)
        q = s_int - a_fit * b0 - b_fit * b1
        out[w] = q / length if q > 0.0 else 0.0
    return out


def _delta3_windows_numpy(levels, starts, length):
    """Numpy variant: same closed-form integrals, sliced sums per window.

    Sums run over window-relative positions (not global prefix arrays) so
    precision does not degrade with spectrum length.
    """
    out = np.empty(starts.size, dtype=np.float64)
    lo = np.searchsorted(levels, starts, side="right")
    hi = np.searchsorted(levels, starts + length, side="left")
    for w in range(starts.size):
        k = hi[w] - lo[w]
        if k == 0:
            out[w] = 0.0
            continue
        x = levels[lo[w] : hi[w]] - starts[w]
        b0 = k * length - x.sum()
        b1 = 0.5 * (k * length * length - (x * x).sum())
        ranks = 2.0 * np.arange(k) + 1.0
        s_int = length * float(k) ** 2 - (ranks * x).sum()
        a_fit = 4.0 * b0 / length - 6.0 * b1 / (length * length)
        b_fit = 12.0 * b1 / length ** 3 - 6.0 * b0 / (length * length)
        q = s_int - a_fit * b0 - b_fit * b1
        out[w] = q / length if q > 0.0 else 0.0
    return out


if _HAVE_NUMBA and not _NUMBA_DISABLED:
    BACKEND = "numba"
    # nogil: the kernel touches only primitive arrays, so per-matrix threads
    # can overlap inside it.
    delta3_windows = njit(cache=True, nogil=True)(_delta3_windows_loop)
else:
    BACKEND = "numpy"
    delta3_windows = _delta3_windows_numpy
