"""Shared test utilities: KS statistics and quadrature oracles.

The oracles here are deliberately independent of the package's own
implementations: plain adaptive quadrature (plus QUADPACK's oscillatory
weights for large arguments), so they can vouch for the closed forms.
"""

import numpy as np
from scipy import integrate

EULER_GAMMA_REF = float(np.euler_gamma)


def ks_one_sample(sample, cdf):
    """Kolmogorov-Smirnov distance between an empirical sample and a CDF."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    f = cdf(x)
    i = np.arange(1, n + 1)
    return float(max(np.max(np.abs(i / n - f)), np.max(np.abs((i - 1) / n - f))))


def ks_two_sample(a, b):
    """KS distance between two empirical distributions."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def si_oracle(x):
    """Sine integral by adaptive quadrature (oscillatory tail for large x)."""
    if x <= 30.0:
        val, _ = integrate.quad(
            lambda t: np.sinc(t / np.pi), 0.0, x, limit=300, epsabs=1e-13, epsrel=1e-13
        )
        return val
    tail, _ = integrate.quad(lambda t: 1.0 / t, x, np.inf, weight="sin", wvar=1.0)
    return np.pi / 2 - tail


def ci_oracle(x):
    """Cosine integral by adaptive quadrature of (cos t - 1)/t."""
    if x <= 30.0:
        val, _ = integrate.quad(
            lambda t: (np.cos(t) - 1.0) / t if t > 0 else 0.0,
            0.0, x, limit=300, epsabs=1e-13, epsrel=1e-13,
        )
        return EULER_GAMMA_REF + np.log(x) + val
    tail, _ = integrate.quad(lambda t: 1.0 / t, x, np.inf, weight="cos", wvar=1.0)
    return -tail


def erfc_oracle(x):
    """Complementary error function from its defining integral."""
    val, _ = integrate.quad(lambda t: np.exp(-t * t), abs(x), np.inf, epsabs=1e-14)
    v = 2.0 / np.sqrt(np.pi) * val
    return v if x >= 0 else 2.0 - v


def sample_wigner_sequence(count, rng):
    """Levels of a stationary renewal process with Wigner-surmise gaps.

    Inverse-CDF sampling: s = sqrt(-(4/pi) ln(1 - u)) has density
    (pi/2) s exp(-pi s^2/4) with unit mean.
    """
    u = rng.random(count)
    gaps = np.sqrt(-4.0 / np.pi * np.log1p(-u))
    return np.cumsum(gaps)
