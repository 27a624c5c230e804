"""Topology-enhanced nonparametric change point detection.

The pipeline: normalize a series into [-1/2, 1/2], slide a short window
along it, summarize every window by the component counts of its
thresholded distance graphs over a grid of scales, compress the count
sequences with PCA, and hand the derived series to a nonparametric
change point detector.  Distribution changes that barely move the mean
of the raw series (variance, dependence, tail weight) show up as mean
shifts of the derived series, where energy-divergence or CvM-type
detectors localize them far more accurately.
"""

from .cpd import (
    BARTLETT,
    CVM,
    DETECTORS,
    E_DIVISIVE,
    DetectionResult,
    EnergyConfig,
    admissible_splits,
    bartlett_single_change,
    bartlett_statistic,
    best_single_split,
    cvm_null_moments,
    cvm_single_change,
    cvm_two_sample,
    e_divisive,
    energy_divergence,
)
from .embedding import (
    DerivedSeries,
    PcaModel,
    pca_fit,
    pca_transform,
    tda_pipeline,
    tda_transform,
)
from .errors import (
    CsvParseError,
    FittingError,
    InvalidInputError,
    InvalidSpecError,
    TopoCpdError,
    UnsupportedError,
)
from .prewhiten import ArModel, ar_residuals, difference, fit_ar
from .series import (
    PointCloud,
    TimeSeries,
    WindowConfig,
    normalize,
    sliding_windows,
)
from .simulate import (
    Arma11,
    BenchmarkReport,
    DetectorSetup,
    Laplace,
    MvNormal,
    MvT,
    Normal,
    PipelineSetup,
    PoissonAdjusted,
    ScenarioSpec,
    StudentT,
    generate,
    monte_carlo,
    run_sweep,
)
from .topology import (
    BettiMatrix,
    BettiSequence,
    ScaleGrid,
    betti0_sequence,
    betti_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "ArModel",
    "Arma11",
    "BARTLETT",
    "BenchmarkReport",
    "BettiMatrix",
    "BettiSequence",
    "CVM",
    "CsvParseError",
    "DETECTORS",
    "DerivedSeries",
    "DetectionResult",
    "DetectorSetup",
    "E_DIVISIVE",
    "EnergyConfig",
    "FittingError",
    "InvalidInputError",
    "InvalidSpecError",
    "Laplace",
    "MvNormal",
    "MvT",
    "Normal",
    "PcaModel",
    "PipelineSetup",
    "PointCloud",
    "PoissonAdjusted",
    "ScaleGrid",
    "ScenarioSpec",
    "StudentT",
    "TimeSeries",
    "TopoCpdError",
    "UnsupportedError",
    "WindowConfig",
    "admissible_splits",
    "ar_residuals",
    "bartlett_single_change",
    "bartlett_statistic",
    "best_single_split",
    "betti0_sequence",
    "betti_matrix",
    "cvm_null_moments",
    "cvm_single_change",
    "cvm_two_sample",
    "difference",
    "e_divisive",
    "energy_divergence",
    "fit_ar",
    "generate",
    "monte_carlo",
    "normalize",
    "pca_fit",
    "pca_transform",
    "run_sweep",
    "sliding_windows",
    "tda_pipeline",
    "tda_transform",
]
