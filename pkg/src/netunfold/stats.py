"""Empirical fluctuation statistics of unfolded spectra.

Short range: nearest-neighbor spacing distribution. Long range: level
number variance in windows of length L and the least-squares staircase
rigidity, either measured directly on windows or obtained from the number
variance through the standard cubic-kernel integral transform.

Window starting points are drawn uniformly over the unfolded span with a
caller-supplied seed, so every statistic is deterministic given
(spectrum, L, window_samples, rng_seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import delta3_windows
from .errors import (
    DomainError,
    EmptyInputError,
    GridAlignmentError,
    InsufficientLevelsError,
    IntervalTooLongError,
    InvalidParameterError,
)
from .rng import make_rng, mix64
from .unfolding import UnfoldedSpectrum

DEFAULT_WINDOW_SAMPLES = 200
DEFAULT_NNSD_BIN_WIDTH = 0.1
SIGMA2_GRID_STEP = 0.05


@dataclass(frozen=True)
class SpacingHistogram:
    """Unit-area histogram of nearest-neighbor spacings."""

    bin_edges: np.ndarray
    densities: np.ndarray
    sample_count: int

    def __post_init__(self):
        for name in ("bin_edges", "densities"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, arr)
            arr.setflags(write=False)

    def area(self) -> float:
        return float(np.sum(self.densities * np.diff(self.bin_edges)))


@dataclass(frozen=True)
class StatCurve:
    """A sampled statistic: values with standard errors on an L grid."""

    L_values: np.ndarray
    means: np.ndarray
    std_errors: np.ndarray
    kind: str
    method: str = ""

    def __post_init__(self):
        for name in ("L_values", "means", "std_errors"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, arr)
            arr.setflags(write=False)
        if not (self.L_values.size == self.means.size == self.std_errors.size):
            raise InvalidParameterError("StatCurve arrays must have equal length")


def spacings(unfolded: UnfoldedSpectrum) -> np.ndarray:
    """Gaps between adjacent unfolded levels (non-negative by construction)."""
    if len(unfolded) < 2:
        raise InsufficientLevelsError("need at least 2 levels for spacings")
    return np.diff(unfolded.levels)


def nnsd(
    spacing_lists: Sequence[np.ndarray], bin_width: float = DEFAULT_NNSD_BIN_WIDTH
) -> SpacingHistogram:
    """Pooled unit-area spacing histogram over all ensemble members.

    Bins run from 0 to the largest spacing rounded up to a bin edge. The
    pooled sample should be large (hundreds) for a meaningful histogram.
    """
    if bin_width <= 0:
        raise InvalidParameterError(f"bin_width must be > 0, got {bin_width}")
    arrays = [np.asarray(s, dtype=np.float64) for s in spacing_lists]
    pool = np.concatenate(arrays) if arrays else np.empty(0)
    if pool.size == 0:
        raise EmptyInputError("no spacings supplied")
    n_bins = max(1, int(math.ceil(pool.max() / bin_width - 1e-12)))
    edges = np.arange(n_bins + 1, dtype=np.float64) * bin_width
    counts, _ = np.histogram(pool, bins=edges)
    densities = counts / (pool.size * bin_width)
    return SpacingHistogram(bin_edges=edges, densities=densities, sample_count=pool.size)


def _window_starts(
    unfolded: UnfoldedSpectrum, length: float, window_samples: int, rng_seed: int
) -> np.ndarray:
    if length <= 0:
        raise InvalidParameterError(f"window length must be > 0, got {length}")
    if window_samples < 10:
        raise InvalidParameterError(f"need >= 10 window samples, got {window_samples}")
    lv = unfolded.levels
    span = lv[-1] - lv[0]
    if span < 2 * length:
        raise IntervalTooLongError(
            f"window length {length} exceeds half the unfolded span {span:.2f}"
        )
    rng = make_rng(rng_seed)
    return lv[0] + rng.random(window_samples) * (span - length)


def number_variance(
    unfolded: UnfoldedSpectrum,
    length: float,
    window_samples: int = DEFAULT_WINDOW_SAMPLES,
    rng_seed: int = 0,
) -> tuple[float, float]:
    """Mean and sample variance of the level count in windows [a, a+L).

    For a healthy unfolded spectrum the mean count is close to L.
    """
    starts = _window_starts(unfolded, length, window_samples, rng_seed)
    lv = unfolded.levels
    counts = np.searchsorted(lv, starts + length, side="left") - np.searchsorted(
        lv, starts, side="left"
    )
    counts = counts.astype(np.float64)
    return float(counts.mean()), float(counts.var(ddof=1))


def delta3_direct(
    unfolded: UnfoldedSpectrum,
    length: float,
    window_samples: int = DEFAULT_WINDOW_SAMPLES,
    rng_seed: int = 0,
) -> float:
    """Window-averaged least-squares staircase rigidity at length L.

    Each window integrates (staircase - best line)^2 exactly over the
    piecewise-constant staircase; a window with no levels contributes 0
    (a constant is fit exactly by a line) and still counts in the average.
    """
    starts = _window_starts(unfolded, length, window_samples, rng_seed)
    values = delta3_windows(unfolded.levels, starts, float(length))
    return float(values.mean())


def delta3_via_integral(sigma2: StatCurve, length: float) -> float:
    """Rigidity from the number variance through the cubic-kernel integral.

    Expects sigma2 sampled on a grid with step <= 0.05 covering (0, L];
    the integrand is completed with sigma2(0) = 0 and integrated by the
    composite trapezoid rule on the given grid.
    """
    if length <= 0:
        raise InvalidParameterError(f"L must be > 0, got {length}")
    r = sigma2.L_values
    v = sigma2.means
    keep = r <= length + 1e-12
    r, v = r[keep], v[keep]
    if r.size < 2 or r[-1] < length - 1e-9:
        raise DomainError(f"sigma2 grid does not cover (0, {length}]")
    steps = np.diff(np.concatenate(([0.0], r)))
    if steps.max() > SIGMA2_GRID_STEP + 1e-12:
        raise DomainError(
            f"sigma2 grid step {steps.max():.4f} exceeds {SIGMA2_GRID_STEP}"
        )
    rr = np.concatenate(([0.0], r))
    vv = np.concatenate(([0.0], v))
    integrand = (length ** 3 - 2.0 * length ** 2 * rr + rr ** 3) * vv
    return float(2.0 / length ** 4 * np.trapezoid(integrand, rr))


def ensemble_average(
    member_values: Sequence[np.ndarray],
    L_values: np.ndarray,
    kind: str,
    method: str = "",
) -> StatCurve:
    """Mean and standard error over members sharing one L grid.

    Accumulation runs in member-index order, so the result is independent
    of how member values were computed (serially or in parallel).
    """
    if not member_values:
        raise EmptyInputError("no ensemble members supplied")
    grid = np.asarray(L_values, dtype=np.float64)
    rows = []
    for i, vals in enumerate(member_values):
        arr = np.asarray(vals, dtype=np.float64)
        if arr.shape != grid.shape:
            raise GridAlignmentError(
                f"member {i} sampled on {arr.shape}, expected {grid.shape}"
            )
        rows.append(arr)
    stacked = np.vstack(rows)
    means = stacked.mean(axis=0)
    if stacked.shape[0] > 1:
        stderr = stacked.std(axis=0, ddof=1) / math.sqrt(stacked.shape[0])
    else:
        stderr = np.zeros_like(means)
    return StatCurve(L_values=grid, means=means, std_errors=stderr, kind=kind, method=method)


def sigma2_curve(
    unfolded: UnfoldedSpectrum,
    L_grid: np.ndarray,
    window_samples: int = DEFAULT_WINDOW_SAMPLES,
    rng_seed: int = 0,
) -> np.ndarray:
    """Number variance of one spectrum on an L grid (seed varies per point)."""
    return np.array(
        [
            number_variance(unfolded, float(L), window_samples, mix64(rng_seed, i))[1]
            for i, L in enumerate(L_grid)
        ]
    )


def delta3_curve(
    unfolded: UnfoldedSpectrum,
    L_grid: np.ndarray,
    window_samples: int = DEFAULT_WINDOW_SAMPLES,
    rng_seed: int = 0,
) -> np.ndarray:
    """Direct rigidity of one spectrum on an L grid (seed varies per point)."""
    return np.array(
        [
            delta3_direct(unfolded, float(L), window_samples, mix64(rng_seed, i))
            for i, L in enumerate(L_grid)
        ]
    )
