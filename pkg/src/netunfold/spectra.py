"""Eigenvalue spectra of adjacency matrices and their empirical densities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .ensembles import AdjacencyMatrix
from .errors import (
    DegenerateVarianceError,
    EmptyInputError,
    InsufficientLevelsError,
    InvalidParameterError,
    NumericalError,
)

TRACE_TOL_PER_LEVEL = 1e-8
FROBENIUS_RTOL = 1e-8

# ~260 pooled levels per bin at ensemble scale 20 x 1000: smooth but unbiased.
DEFAULT_DENSITY_BINS = 75


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of one adjacency matrix plus provenance."""

    values: np.ndarray
    source_n: int
    source_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        v.setflags(write=False)
        if np.any(np.diff(v) < 0):
            raise InvalidParameterError("spectrum values must be ascending")

    def __len__(self) -> int:
        return self.values.size


def eigenvalues(matrix: AdjacencyMatrix, meta: dict | None = None) -> Spectrum:
    """All n eigenvalues of the adjacency matrix, ascending.

    Uses a symmetric eigenvalue solver (LAPACK orthogonal reduction);
    eigenvectors are never formed. The trace and Frobenius identities of a
    0/1 symmetric matrix are verified on the result as a convergence check.
    """
    n = matrix.n
    try:
        vals = np.linalg.eigvalsh(matrix.entries.astype(np.float64))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed to converge (n={n}, meta={meta})") from exc
    vals = np.sort(vals)
    edges = matrix.edge_count()
    trace = float(vals.sum())
    if abs(trace) > TRACE_TOL_PER_LEVEL * n:
        raise NumericalError(f"trace {trace} violates zero-diagonal identity (n={n})")
    frob = float((vals * vals).sum())
    if abs(frob - 2.0 * edges) > FROBENIUS_RTOL * max(1.0, 2.0 * edges):
        raise NumericalError(
            f"sum of squared eigenvalues {frob} != 2*edges {2 * edges} (n={n})"
        )
    return Spectrum(values=vals, source_n=n, source_meta=dict(meta or {}))


def staircase(spectrum: Spectrum, energy) -> int | np.ndarray:
    """Number of levels at or below `energy` (closed boundary)."""
    counts = np.searchsorted(spectrum.values, energy, side="right")
    if np.isscalar(energy):
        return int(counts)
    return counts


@dataclass(frozen=True)
class DensityHistogram:
    """Unit-area histogram of pooled eigenvalues."""

    bin_edges: np.ndarray
    densities: np.ndarray
    total_weight: int

    def __post_init__(self):
        for name in ("bin_edges", "densities"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, arr)
            arr.setflags(write=False)

    def area(self) -> float:
        return float(np.sum(self.densities * np.diff(self.bin_edges)))


def density_histogram(
    spectra: Sequence[Spectrum],
    bin_count: int = DEFAULT_DENSITY_BINS,
    value_range: tuple[float, float] | None = None,
) -> DensityHistogram:
    """Pooled, unit-area eigenvalue density over all supplied spectra.

    Default range is [min, max] of the pool widened by one bin width (half a
    bin on each side) so no mass sits exactly on the outer edges.
    """
    if not spectra:
        raise EmptyInputError("no spectra supplied")
    if bin_count < 1:
        raise InvalidParameterError(f"bin_count must be >= 1, got {bin_count}")
    pool = np.concatenate([s.values for s in spectra])
    if pool.size == 0:
        raise EmptyInputError("pooled spectrum is empty")
    if value_range is None:
        lo, hi = float(pool.min()), float(pool.max())
        pad = (hi - lo) / bin_count / 2 if hi > lo else 0.5
        lo, hi = lo - pad, hi + pad
    else:
        lo, hi = map(float, value_range)
        if not hi > lo:
            raise InvalidParameterError(f"empty range [{lo}, {hi}]")
    edges = np.linspace(lo, hi, bin_count + 1)
    counts, _ = np.histogram(pool, bins=edges)
    width = edges[1] - edges[0]
    densities = counts / (pool.size * width)
    return DensityHistogram(bin_edges=edges, densities=densities, total_weight=pool.size)


def rescale_density(hist: DensityHistogram, n: int, p: float) -> DensityHistogram:
    """Rescale axes by the off-diagonal standard deviation times sqrt(n).

    Bin edges shrink by [n p (1-p)]^(-1/2) and densities grow by the inverse
    factor, so unit area is preserved and the bulk support becomes [-2, 2].
    """
    if not 0.0 < p < 1.0:
        raise DegenerateVarianceError(f"p={p} leaves zero entry variance")
    scale = math.sqrt(n * p * (1.0 - p))
    return DensityHistogram(
        bin_edges=hist.bin_edges / scale,
        densities=hist.densities * scale,
        total_weight=hist.total_weight,
    )


def trim_spectrum(spectrum: Spectrum, drop_top: int = 0, edge_fraction: float = 0.0) -> Spectrum:
    """Drop detached top levels, then a fraction of levels from each end.

    `drop_top` removes the largest eigenvalues (one detached level per dense
    block sits far above the bulk and would corrupt unfolding). After that,
    floor(edge_fraction * remaining) levels are cut from both ends.
    """
    if drop_top < 0:
        raise InvalidParameterError(f"drop_top must be >= 0, got {drop_top}")
    if not 0.0 <= edge_fraction <= 0.2:
        raise InvalidParameterError(f"edge_fraction={edge_fraction} outside [0, 0.2]")
    vals = spectrum.values
    if drop_top:
        vals = vals[: len(vals) - drop_top]
    k = int(math.floor(edge_fraction * len(vals)))
    if k:
        vals = vals[k : len(vals) - k]
    if len(vals) < 10:
        raise InsufficientLevelsError(
            f"{len(vals)} levels left after trimming, need at least 10"
        )
    meta = dict(spectrum.source_meta)
    meta["trim"] = {"drop_top": int(drop_top), "edge_fraction": float(edge_fraction)}
    return Spectrum(values=vals.copy(), source_n=spectrum.source_n, source_meta=meta)
