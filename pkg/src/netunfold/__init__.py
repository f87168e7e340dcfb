"""Spectral fluctuation statistics of network adjacency ensembles.

Generate random / clustered network ensembles, unfold their eigenvalue
spectra (exact semicircle, per-block semicircle, or polynomial staircase
fit) and measure short- and long-range fluctuation statistics against
analytic GOE / Poisson / two-GOE references.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .ensembles import (
    AdjacencyMatrix,
    EnsembleSpec,
    export_edge_list,
    generate_clustered,
    generate_ensemble,
    generate_er,
    generate_member,
    ingest_edge_list,
)
from .pipeline import (
    ExperimentConfig,
    ResultBundle,
    analyze_file,
    parse_config_file,
    reproduce_figure,
    run_experiment,
)
from .spectra import (
    DensityHistogram,
    Spectrum,
    density_histogram,
    eigenvalues,
    rescale_density,
    staircase,
    trim_spectrum,
)
from .stats import (
    SpacingHistogram,
    StatCurve,
    delta3_direct,
    delta3_via_integral,
    ensemble_average,
    nnsd,
    number_variance,
    spacings,
)
from .theory import (
    delta3_goe,
    delta3_goe_curve,
    poisson_delta3,
    poisson_nnsd,
    poisson_sigma2,
    semicircle_density,
    sigma2_goe,
    theory_curve,
    two_goe_nnsd,
    two_goe_nnsd_cdf,
    wigner_surmise,
    wigner_surmise_cdf,
)
from .unfolding import (
    BlockSemicircle,
    PolynomialFit,
    SemicircleExact,
    UnfoldedSpectrum,
    block_semicircle_cdf,
    fit_polynomial_cdf,
    semicircle_cdf,
    semicircle_radius,
    unfold,
)

__version__ = "0.1.0"
