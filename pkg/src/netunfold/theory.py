"""Analytic reference curves: GOE, Poisson, and superposed two-GOE forms."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, InvalidParameterError
from .special import EULER_GAMMA, cos_integral, erfc, sin_integral
from .stats import StatCurve, delta3_via_integral

GOE_DELTA3_GRID_STEP = 0.01

THEORY_KINDS = (
    "goe_nnsd",
    "poisson_nnsd",
    "two_goe_nnsd",
    "goe_sigma2",
    "goe_delta3",
    "poisson_sigma2",
    "poisson_delta3",
    "semicircle_density",
)


def _require_nonnegative(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise DomainError(f"{name} must be >= 0")
    return arr


def semicircle_density(n: float, radius: float, energy):
    """Semicircle bulk density: 2n/(pi a^2) * sqrt(a^2 - E^2), zero outside."""
    if radius <= 0:
        raise InvalidParameterError(f"radius must be > 0, got {radius}")
    e = np.asarray(energy, dtype=np.float64)
    inside = np.abs(e) <= radius
    out = np.where(
        inside,
        2.0 * n / (math.pi * radius * radius)
        * np.sqrt(np.maximum(radius * radius - e * e, 0.0)),
        0.0,
    )
    return float(out) if np.isscalar(energy) else out


def wigner_surmise(s):
    """GOE nearest-neighbor spacing density (pi/2) s exp(-pi s^2 / 4)."""
    sv = _require_nonnegative(s, "s")
    out = math.pi / 2.0 * sv * np.exp(-math.pi * sv * sv / 4.0)
    return float(out) if np.isscalar(s) else out


def wigner_surmise_cdf(s):
    """Cumulative of the surmise: 1 - exp(-pi s^2 / 4)."""
    sv = _require_nonnegative(s, "s")
    out = 1.0 - np.exp(-math.pi * sv * sv / 4.0)
    return float(out) if np.isscalar(s) else out


def poisson_nnsd(s):
    """Uncorrelated-spectrum spacing density exp(-s)."""
    sv = _require_nonnegative(s, "s")
    out = np.exp(-sv)
    return float(out) if np.isscalar(s) else out


def poisson_sigma2(L):
    """Number variance of an uncorrelated spectrum: L."""
    lv = _require_nonnegative(L, "L")
    return float(lv) if np.isscalar(L) else lv.copy()


def poisson_delta3(L):
    """Rigidity of an uncorrelated spectrum: L / 15."""
    lv = _require_nonnegative(L, "L")
    out = lv / 15.0
    return float(out) if np.isscalar(L) else out


def two_goe_nnsd(s):
    """Spacing density of two superposed independent GOE sequences.

    Derived from the product of two surmise-level gap functions
    E(s) = erfc(sqrt(pi) s / 4)^2 by double differentiation; the closed
    form starts at 1/2 for s = 0 (no repulsion between the sequences).
    """
    sv = _require_nonnegative(s, "s")
    root_pi = math.sqrt(math.pi)
    out = 0.5 * np.exp(-math.pi * sv * sv / 8.0) + (
        math.pi * sv / 8.0
    ) * np.exp(-math.pi * sv * sv / 16.0) * erfc(root_pi * sv / 4.0)
    return float(out) if np.isscalar(s) else out


def two_goe_nnsd_cdf(s):
    """Cumulative of the two-GOE spacing density: 1 - E'(s) integrated."""
    sv = _require_nonnegative(s, "s")
    out = 1.0 - erfc(math.sqrt(math.pi) * sv / 4.0) * np.exp(-math.pi * sv * sv / 16.0)
    return float(out) if np.isscalar(s) else out


def _sigma2_goe_scalar(L: float) -> float:
    if L < 0:
        raise DomainError(f"L must be >= 0, got {L}")
    if L == 0.0:
        return 0.0
    pi = math.pi
    si_piL = sin_integral(pi * L)
    si_2piL = sin_integral(2.0 * pi * L)
    ci_2piL = cos_integral(2.0 * pi * L)
    bracket = (
        math.log(2.0 * pi * L)
        + EULER_GAMMA
        + 1.0
        + 0.5 * si_piL * si_piL
        - math.cos(2.0 * pi * L)
        - ci_2piL
    )
    return (
        2.0 / (pi * pi) * bracket
        - si_piL / pi
        + 2.0 * L * (1.0 - 2.0 / pi * si_2piL)
    )


def sigma2_goe(L):
    """GOE level number variance (exact closed form in Si, Ci and gamma).

    Validated against a Monte Carlo GOE ensemble in the acceptance suite;
    grows logarithmically, the hallmark of a rigid spectrum.
    """
    if np.isscalar(L):
        return _sigma2_goe_scalar(float(L))
    arr = np.asarray(L, dtype=np.float64)
    out = np.empty(arr.shape, dtype=np.float64)
    flat = out.ravel()
    for i, x in enumerate(arr.ravel()):
        flat[i] = _sigma2_goe_scalar(float(x))
    return out


def _goe_sigma2_statcurve(grid: np.ndarray) -> StatCurve:
    return StatCurve(
        L_values=grid,
        means=sigma2_goe(grid),
        std_errors=np.zeros_like(grid),
        kind="theory",
        method="goe_sigma2",
    )


def delta3_goe(L: float) -> float:
    """GOE rigidity: cubic-kernel integral of the GOE number variance."""
    if L <= 0:
        raise DomainError(f"L must be > 0, got {L}")
    m = max(2, int(math.ceil(L / GOE_DELTA3_GRID_STEP)))
    grid = np.linspace(L / m, L, m)
    return delta3_via_integral(_goe_sigma2_statcurve(grid), L)


def delta3_goe_curve(L_grid) -> np.ndarray:
    """GOE rigidity on a grid, sharing one number-variance evaluation.

    Uses cumulative trapezoid moments of the number variance on a step-0.01
    grid; identical quadrature to delta3_goe for L values that land on the
    shared grid, scalar fallback otherwise.
    """
    lgrid = np.asarray(L_grid, dtype=np.float64)
    if np.any(lgrid <= 0):
        raise DomainError("all L must be > 0")
    step = GOE_DELTA3_GRID_STEP
    kmax = int(round(float(lgrid.max()) / step)) + 1
    r = np.arange(kmax + 1, dtype=np.float64) * step
    s2 = np.empty_like(r)
    s2[0] = 0.0
    s2[1:] = sigma2_goe(r[1:])
    dr = np.diff(r)

    def cumtrap(f):
        return np.concatenate(([0.0], np.cumsum(0.5 * (f[1:] + f[:-1]) * dr)))

    i0 = cumtrap(s2)
    i1 = cumtrap(r * s2)
    i3 = cumtrap(r ** 3 * s2)
    out = np.empty(lgrid.shape, dtype=np.float64)
    for idx, L in enumerate(lgrid.ravel()):
        k = int(round(L / step))
        if abs(k * step - L) > 1e-9:
            out.ravel()[idx] = delta3_goe(float(L))
        else:
            out.ravel()[idx] = (
                2.0 / L ** 4 * (L ** 3 * i0[k] - 2.0 * L ** 2 * i1[k] + i3[k])
            )
    return out


def theory_curve(kind: str, grid, n: float | None = None, radius: float | None = None) -> StatCurve:
    """Sample a named reference curve on a grid, as a StatCurve.

    `semicircle_density` requires the `n` and `radius` parameters; all other
    kinds are parameter-free.
    """
    g = np.asarray(grid, dtype=np.float64)
    if kind not in THEORY_KINDS:
        raise InvalidParameterError(f"unknown theory curve {kind!r}; choose from {THEORY_KINDS}")
    if kind == "semicircle_density":
        if n is None or radius is None:
            raise InvalidParameterError("semicircle_density needs n and radius")
        vals = semicircle_density(n, radius, g)
    elif kind == "goe_nnsd":
        vals = wigner_surmise(g)
    elif kind == "poisson_nnsd":
        vals = poisson_nnsd(g)
    elif kind == "two_goe_nnsd":
        vals = two_goe_nnsd(g)
    elif kind == "goe_sigma2":
        vals = sigma2_goe(g)
    elif kind == "goe_delta3":
        vals = delta3_goe_curve(g)
    elif kind == "poisson_sigma2":
        vals = poisson_sigma2(g)
    else:
        vals = poisson_delta3(g)
    return StatCurve(
        L_values=g,
        means=np.asarray(vals, dtype=np.float64),
        std_errors=np.zeros_like(g),
        kind="theory",
        method=kind,
    )
