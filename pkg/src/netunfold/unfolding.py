"""Map raw spectra to dimensionless levels with unit mean spacing.

Three unfolding routes: the exact semicircle cumulative density (known
analytic bulk), a sum of per-block semicircle cumulatives (clustered
networks), and an ordinary least-squares polynomial fit to the empirical
staircase (no analytic density known).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import (
    InsufficientLevelsError,
    InvalidParameterError,
    MonotonicityError,
    PolynomialFitError,
    UnfoldingQualityError,
)
from .spectra import Spectrum

MAX_POLY_DEGREE = 9
MEAN_SPACING_GATE = (0.9, 1.1)


def semicircle_radius(n: int, sigma: float) -> float:
    """Bulk radius 2*sigma*sqrt(n); sigma = sqrt(p(1-p)) for a random network."""
    if n < 1:
        raise InvalidParameterError(f"level count must be >= 1, got {n}")
    if sigma <= 0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    return 2.0 * sigma * math.sqrt(n)


def semicircle_cdf(n: float, radius: float, energy) -> np.ndarray | float:
    """Cumulative level count of a semicircle bulk of n levels on [-a, a].

    Continuous everywhere: 0 below -a, n above +a. arctan2 handles the
    endpoints where the half-width sqrt vanishes.
    """
    if radius <= 0:
        raise InvalidParameterError(f"radius must be > 0, got {radius}")
    e = np.asarray(energy, dtype=np.float64)
    clipped = np.clip(e, -radius, radius)
    half_width = np.sqrt(np.maximum(radius * radius - clipped * clipped, 0.0))
    inside = 0.5 + clipped * half_width / (math.pi * radius * radius) + np.arctan2(
        clipped, half_width
    ) / math.pi
    out = n * inside
    if np.isscalar(energy):
        return float(out)
    return out


def block_semicircle_cdf(blocks: Sequence[tuple[float, float]], energy):
    """Cumulative density of a union of independent semicircle bulks."""
    if len(blocks) == 0:
        raise InvalidParameterError("block list is empty")
    total = None
    for n_b, a_b in blocks:
        part = semicircle_cdf(n_b, a_b, energy)
        total = part if total is None else total + part
    return total


@dataclass(frozen=True)
class SemicircleExact:
    """Unfold through the semicircle cumulative with n_eff bulk levels."""

    n_eff: int
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidParameterError(f"radius must be > 0, got {self.radius}")

    def describe(self) -> dict:
        return {"variant": "semicircle_exact", "n_eff": self.n_eff, "radius": self.radius}


@dataclass(frozen=True)
class BlockSemicircle:
    """Unfold through a sum of per-block semicircle cumulatives."""

    blocks: tuple[tuple[float, float], ...]

    def __post_init__(self):
        blocks = tuple((float(n), float(a)) for n, a in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise InvalidParameterError("block list is empty")
        if any(a <= 0 for _, a in blocks):
            raise InvalidParameterError("every block radius must be > 0")

    def describe(self) -> dict:
        return {"variant": "block_semicircle", "blocks": [list(b) for b in self.blocks]}


@dataclass(frozen=True)
class PolynomialFit:
    """Unfold through a least-squares polynomial fit of the staircase."""

    degree: int
    include_constant: bool = True

    def __post_init__(self):
        if not 1 <= self.degree <= MAX_POLY_DEGREE:
            raise InvalidParameterError(
                f"degree must be in [1, {MAX_POLY_DEGREE}], got {self.degree}"
            )

    def describe(self) -> dict:
        return {
            "variant": "polynomial_fit",
            "degree": self.degree,
            "include_constant": self.include_constant,
        }


UnfoldingMethod = Union[SemicircleExact, BlockSemicircle, PolynomialFit]


@dataclass(frozen=True)
class PolyCdfFit:
    """Fitted staircase polynomial: coefficients in ascending powers of E."""

    coefficients: np.ndarray
    rms: float
    _poly: np.polynomial.Polynomial = field(repr=False)

    def __call__(self, energy):
        return self._poly(energy)


def fit_polynomial_cdf(
    spectrum: Spectrum, degree: int, include_constant: bool = True
) -> PolyCdfFit:
    """Least-squares fit of the midpoint staircase (E_i, i - 1/2).

    The fit runs on the affinely mapped variable x in [-1, 1] for
    conditioning; reported coefficients are mapped back to powers of E.
    """
    if not 1 <= degree <= MAX_POLY_DEGREE:
        raise InvalidParameterError(f"degree must be in [1, {MAX_POLY_DEGREE}], got {degree}")
    e = spectrum.values
    m = e.size
    if m < 10 * (degree + 1):
        raise InsufficientLevelsError(
            f"need >= {10 * (degree + 1)} levels for degree {degree}, got {m}"
        )
    if e[-1] == e[0]:
        raise PolynomialFitError("degenerate spectrum: all eigenvalues equal")
    y = np.arange(1, m + 1, dtype=np.float64) - 0.5
    if include_constant:
        poly = np.polynomial.Polynomial.fit(e, y, deg=degree)
        coeffs = poly.convert().coef
    else:
        # No-intercept form: powers of E only, scaled by max |E| for conditioning.
        scale = float(np.max(np.abs(e)))
        design = np.column_stack([(e / scale) ** k for k in range(1, degree + 1)])
        beta, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
        if rank < degree:
            raise PolynomialFitError(f"rank-deficient fit (rank {rank} < {degree})")
        coeffs = np.concatenate([[0.0], beta / scale ** np.arange(1, degree + 1)])
        poly = np.polynomial.Polynomial(coeffs)
    if coeffs.size < degree + 1:
        coeffs = np.pad(coeffs, (0, degree + 1 - coeffs.size))
    residuals = poly(e) - y
    rms = float(np.sqrt(np.mean(residuals * residuals)))
    return PolyCdfFit(coefficients=coeffs, rms=rms, _poly=poly)


def _check_increasing(poly: np.polynomial.Polynomial, lo: float, hi: float) -> None:
    """Raise MonotonicityError naming the subinterval where the fit decreases."""
    deriv = poly.deriv()
    points = [lo, hi]
    for root in deriv.roots():
        if abs(root.imag) < 1e-9 and lo < root.real < hi:
            points.append(float(root.real))
    points.sort()
    for a, b in zip(points[:-1], points[1:]):
        mid = 0.5 * (a + b)
        if deriv(mid) <= 0.0:
            raise MonotonicityError(
                f"fitted staircase decreases on [{a:.6g}, {b:.6g}]; "
                "increase the edge trim or change the fit degree"
            )


@dataclass(frozen=True)
class UnfoldedSpectrum:
    """Dimensionless levels with unit mean spacing."""

    levels: np.ndarray
    method: UnfoldingMethod
    source_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        lv = np.asarray(self.levels, dtype=np.float64)
        object.__setattr__(self, "levels", lv)
        lv.setflags(write=False)

    def __len__(self) -> int:
        return self.levels.size

    def mean_spacing(self) -> float:
        lv = self.levels
        return float((lv[-1] - lv[0]) / (lv.size - 1))


def unfold(spectrum: Spectrum, method: UnfoldingMethod) -> UnfoldedSpectrum:
    """Evaluate the smooth cumulative density at every level.

    The input is expected to be trimmed already (detached top levels gone).
    Output levels are checked against the mean-spacing gate [0.9, 1.1]; a
    polynomial map must additionally be strictly increasing over the
    retained range.
    """
    e = spectrum.values
    if e.size < 2:
        raise InsufficientLevelsError("need at least 2 levels to unfold")
    if isinstance(method, SemicircleExact):
        levels = semicircle_cdf(method.n_eff, method.radius, e)
    elif isinstance(method, BlockSemicircle):
        levels = block_semicircle_cdf(method.blocks, e)
    elif isinstance(method, PolynomialFit):
        fit = fit_polynomial_cdf(spectrum, method.degree, method.include_constant)
        _check_increasing(fit._poly, float(e[0]), float(e[-1]))
        levels = fit(e)
    else:
        raise InvalidParameterError(f"unknown unfolding method {method!r}")
    levels = np.asarray(levels, dtype=np.float64)
    ms = (levels[-1] - levels[0]) / (levels.size - 1)
    lo, hi = MEAN_SPACING_GATE
    if not lo <= ms <= hi:
        raise UnfoldingQualityError(
            f"unfolded mean spacing {ms:.4f} outside [{lo}, {hi}] "
            f"(method {method.describe()['variant']})"
        )
    return UnfoldedSpectrum(levels=levels, method=method, source_meta=dict(spectrum.source_meta))
