import numpy as np
import pytest

from netunfold.ensembles import AdjacencyMatrix, generate_clustered, generate_er
from netunfold.errors import (
    DegenerateVarianceError,
    EmptyInputError,
    InsufficientLevelsError,
    InvalidParameterError,
)
from netunfold.spectra import (
    Spectrum,
    density_histogram,
    eigenvalues,
    rescale_density,
    staircase,
    trim_spectrum,
)


def _adj(arr):
    return AdjacencyMatrix(np.asarray(arr, dtype=np.uint8))


def test_two_node_path_spectrum():
    spec = eigenvalues(_adj([[0, 1], [1, 0]]))
    np.testing.assert_allclose(spec.values, [-1.0, 1.0], atol=1e-12)


def test_complete_graph_k4_spectrum():
    k4 = np.ones((4, 4), dtype=np.uint8) - np.eye(4, dtype=np.uint8)
    spec = eigenvalues(AdjacencyMatrix(k4))
    np.testing.assert_allclose(spec.values, [-1.0, -1.0, -1.0, 3.0], atol=1e-12)


def test_zero_matrix_spectrum():
    spec = eigenvalues(_adj(np.zeros((3, 3))))
    np.testing.assert_allclose(spec.values, np.zeros(3), atol=1e-14)


def test_trace_and_frobenius_identities():
    matrix = generate_er(300, 0.2, seed=8)
    spec = eigenvalues(matrix)
    assert abs(spec.values.sum()) <= 1e-8 * 300
    frob = float((spec.values ** 2).sum())
    assert abs(frob - 2 * matrix.edge_count()) <= 1e-8 * 2 * matrix.edge_count()


def test_staircase_closed_boundary():
    spec = Spectrum(np.array([1.0, 2.0, 3.0]), 3)
    assert staircase(spec, 2.0) == 2
    assert staircase(spec, 0.5) == 0
    assert staircase(spec, 10.0) == 3
    grid = np.linspace(0.0, 4.0, 81)
    counts = staircase(spec, grid)
    assert np.all(np.diff(counts) >= 0)
    # closed at the level itself
    assert staircase(spec, 3.0) == 3


def test_block_diagonal_spectrum_is_union_of_blocks():
    sizes = [30, 40, 50]
    matrix = generate_clustered(sizes, 0.5, 0.0, seed=3)
    whole = eigenvalues(matrix).values
    parts = []
    off = 0
    for b in sizes:
        block = matrix.entries[off : off + b, off : off + b]
        parts.append(np.linalg.eigvalsh(block.astype(float)))
        off += b
    union = np.sort(np.concatenate(parts))
    np.testing.assert_allclose(whole, union, atol=1e-8)


def test_density_single_wide_bin():
    spec = Spectrum(np.zeros(3), 3)
    hist = density_histogram([spec], bin_count=1, value_range=(-0.5, 0.5))
    assert hist.densities[0] == pytest.approx(1.0)
    assert hist.area() == pytest.approx(1.0, abs=1e-12)


def test_density_area_is_one():
    specs = [eigenvalues(generate_er(60, 0.4, seed=s)) for s in (0, 1)]
    hist = density_histogram(specs, bin_count=20)
    assert hist.area() == pytest.approx(1.0, abs=1e-9)
    assert hist.total_weight == 120


def test_density_default_range_covers_pool():
    spec = Spectrum(np.array([-2.0, 0.0, 2.0]), 3)
    hist = density_histogram([spec], bin_count=4)
    assert hist.bin_edges[0] < -2.0 and hist.bin_edges[-1] > 2.0


def test_density_errors():
    with pytest.raises(EmptyInputError):
        density_histogram([], 10)
    spec = Spectrum(np.arange(3.0), 3)
    with pytest.raises(InvalidParameterError):
        density_histogram([spec], 0)
    with pytest.raises(InvalidParameterError):
        density_histogram([spec], 5, value_range=(1.0, 1.0))


def test_rescale_density_scale_factor():
    spec = Spectrum(np.linspace(-10, 10, 50), 50)
    hist = density_histogram([spec], 10)
    scaled = rescale_density(hist, n=1000, p=0.1)
    factor = np.sqrt(1000 * 0.1 * 0.9)  # 9.4868...
    np.testing.assert_allclose(scaled.bin_edges * factor, hist.bin_edges, atol=1e-12)
    np.testing.assert_allclose(scaled.densities / factor, hist.densities, atol=1e-15)
    assert scaled.area() == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("p", [0.0, 1.0])
def test_rescale_density_degenerate(p):
    spec = Spectrum(np.arange(5.0), 5)
    hist = density_histogram([spec], 3)
    with pytest.raises(DegenerateVarianceError):
        rescale_density(hist, 100, p)


def test_trim_spectrum_semantics():
    spec = Spectrum(np.arange(1.0, 21.0), 20)
    top = trim_spectrum(spec, drop_top=2)
    np.testing.assert_array_equal(top.values, np.arange(1.0, 19.0))
    both = trim_spectrum(spec, drop_top=2, edge_fraction=0.1)
    # floor(0.1 * 18) = 1 from each end
    np.testing.assert_array_equal(both.values, np.arange(2.0, 18.0))
    ident = trim_spectrum(spec, 0, 0.0)
    np.testing.assert_array_equal(ident.values, spec.values)
    assert both.source_meta["trim"] == {"drop_top": 2, "edge_fraction": 0.1}


def test_trim_spectrum_too_short():
    spec = Spectrum(np.array([-1.0, -1.0, -1.0, 3.0]), 4)
    with pytest.raises(InsufficientLevelsError):
        trim_spectrum(spec, drop_top=1)


def test_trim_spectrum_bad_parameters():
    spec = Spectrum(np.arange(20.0), 20)
    with pytest.raises(InvalidParameterError):
        trim_spectrum(spec, drop_top=-1)
    with pytest.raises(InvalidParameterError):
        trim_spectrum(spec, edge_fraction=0.3)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_perron_level_detaches_from_bulk(seed):
    # largest eigenvalue ~ np = 100 while the bulk ends near 2*sqrt(90) ~ 19
    spec = eigenvalues(generate_er(1000, 0.1, seed))
    assert 80.0 < spec.values[-1] < 120.0
    assert spec.values[-2] < 25.0


def test_spectrum_requires_ascending():
    with pytest.raises(InvalidParameterError):
        Spectrum(np.array([1.0, 0.5]), 2)
