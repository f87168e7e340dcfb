"""Random and clustered network adjacency matrices, plus edge-list ingestion.

Generators draw one uniform number per unordered node pair, consumed in
row-major order over i < j, so a fixed seed reproduces the same matrix
bit-for-bit anywhere. Matrices are dense uint8 arrays, frozen after
construction.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import EdgeListParseError, EmptyNetworkError, InvalidParameterError
from .rng import make_rng, mix64


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Symmetric 0/1 matrix with zero diagonal encoding an undirected network."""

    entries: np.ndarray

    def __post_init__(self):
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidParameterError(f"adjacency matrix must be square, got {a.shape}")
        a.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def edge_count(self) -> int:
        return int(self.entries.sum(dtype=np.int64)) // 2

    def validate(self) -> None:
        """Raise if symmetry, zero diagonal or 0/1 entries are violated."""
        a = self.entries
        if not np.array_equal(a, a.T):
            raise InvalidParameterError("adjacency matrix is not symmetric")
        if np.any(np.diagonal(a) != 0):
            raise InvalidParameterError("adjacency matrix has nonzero diagonal")
        if not np.isin(a, (0, 1)).all():
            raise InvalidParameterError("adjacency entries must be 0 or 1")


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of one matrix ensemble.

    A single entry in `block_sizes` means a plain random network; several
    entries mean dense blocks wired internally with `p_intra` and across
    blocks with `q_inter`.
    """

    count: int
    n: int
    p_intra: float
    seed: int
    block_sizes: tuple[int, ...] = field(default=())
    q_inter: float = 0.0

    def __post_init__(self):
        blocks = tuple(self.block_sizes) if self.block_sizes else (self.n,)
        object.__setattr__(self, "block_sizes", blocks)
        if self.count < 1:
            raise InvalidParameterError(f"ensemble size must be >= 1, got {self.count}")
        if sum(blocks) != self.n:
            raise InvalidParameterError(
                f"block sizes {blocks} sum to {sum(blocks)}, expected n={self.n}"
            )
        for p, name in ((self.p_intra, "p_intra"), (self.q_inter, "q_inter")):
            if not 0.0 <= p <= 1.0:
                raise InvalidParameterError(f"{name}={p} outside [0, 1]")


def _pair_edges(n: int, thresholds: np.ndarray, seed: int) -> np.ndarray:
    """Fill the strict upper triangle from one uniform draw per pair.

    Pair k in row-major order over i < j consumes draw k of the stream,
    which pins the output for a given seed.
    """
    rng = make_rng(seed)
    draws = rng.random(n * (n - 1) // 2)
    upper = (draws < thresholds).astype(np.uint8)
    a = np.zeros((n, n), dtype=np.uint8)
    iu = np.triu_indices(n, k=1)
    a[iu] = upper
    a += a.T
    return a


def generate_er(n: int, p: float, seed: int) -> AdjacencyMatrix:
    """Erdos-Renyi G(n, p): each pair linked independently with probability p."""
    if n < 2:
        raise InvalidParameterError(f"need at least 2 nodes, got n={n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p={p} outside [0, 1]")
    return AdjacencyMatrix(_pair_edges(n, np.float64(p), seed))


def generate_clustered(
    block_sizes: Sequence[int], p_intra: float, q_inter: float, seed: int
) -> AdjacencyMatrix:
    """Blocks wired internally with p_intra, across blocks with q_inter.

    q_inter = 0 gives an exactly block-diagonal matrix; p_intra == q_inter
    reproduces generate_er on the same seed.
    """
    sizes = tuple(int(b) for b in block_sizes)
    if len(sizes) == 0:
        raise InvalidParameterError("block list is empty")
    if any(b < 2 for b in sizes):
        raise InvalidParameterError(f"every block needs >= 2 nodes, got {sizes}")
    for p, name in ((p_intra, "p_intra"), (q_inter, "q_inter")):
        if not 0.0 <= p <= 1.0:
            raise InvalidParameterError(f"{name}={p} outside [0, 1]")
    n = sum(sizes)
    block_of = np.repeat(np.arange(len(sizes)), sizes)
    iu = np.triu_indices(n, k=1)
    thresholds = np.where(block_of[iu[0]] == block_of[iu[1]], p_intra, q_inter)
    return AdjacencyMatrix(_pair_edges(n, thresholds, seed))


def generate_ensemble(spec: EnsembleSpec) -> list[AdjacencyMatrix]:
    """Generate all members; member i uses the derived seed mix64(spec.seed, i)."""
    return [generate_member(spec, i) for i in range(spec.count)]


def generate_member(spec: EnsembleSpec, index: int) -> AdjacencyMatrix:
    """Generate a single ensemble member, independent of all the others."""
    if not 0 <= index < spec.count:
        raise InvalidParameterError(f"member index {index} outside [0, {spec.count})")
    child = mix64(spec.seed, index)
    if len(spec.block_sizes) == 1:
        return generate_er(spec.n, spec.p_intra, child)
    return generate_clustered(spec.block_sizes, spec.p_intra, spec.q_inter, child)


def ingest_edge_list(lines: Iterable[str] | IO[str] | str) -> AdjacencyMatrix:
    """Build an adjacency matrix from edge-list text.

    Each non-comment line holds two whitespace-separated node labels
    (anything hashable as a string); '#' starts a comment. Labels map to
    indices 0..n-1 in first-appearance order. Duplicate edges are idempotent;
    self-loops are dropped and reported through a UserWarning with their
    count.
    """
    if isinstance(lines, str):
        lines = io.StringIO(lines)
    index_of: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    self_loops = 0
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = text.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected two node labels, got {len(tokens)}: {text!r}", lineno
            )
        idx = []
        for tok in tokens:
            if tok not in index_of:
                index_of[tok] = len(index_of)
            idx.append(index_of[tok])
        i, j = idx
        if i == j:
            self_loops += 1
            continue
        edges.add((min(i, j), max(i, j)))
    if self_loops:
        warnings.warn(f"dropped {self_loops} self-loop(s)", stacklevel=2)
    if not edges:
        raise EmptyNetworkError("edge list contains no (non-loop) edges")
    n = len(index_of)
    a = np.zeros((n, n), dtype=np.uint8)
    rows, cols = zip(*sorted(edges))
    a[rows, cols] = 1
    a[cols, rows] = 1
    return AdjacencyMatrix(a)


def export_edge_list(matrix: AdjacencyMatrix, stream: IO[str]) -> int:
    """Write one "i j" line per edge, ascending i then j. Returns edge count."""
    rows, cols = np.nonzero(np.triu(matrix.entries, k=1))
    for i, j in zip(rows.tolist(), cols.tolist()):
        stream.write(f"{i} {j}\n")
    return len(rows)
