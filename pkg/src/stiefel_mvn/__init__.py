"""Exact multivariate-normality testing via random matrix transformation.

The central object is :func:`mvn_test`: it maps an N x p sample to an
orthonormal residual matrix U that is uniform on the Stiefel manifold
exactly when the data are Gaussian, multiplies by the symmetric square
root of an independent Wishart draw to recover exact iid N(0,1) entries
under the null, and applies a univariate normality test with a Bonferroni
rule over m Wishart replicates.  The harness reproduces the article-style
Type I error and power grids.
"""

from .datasets import DatasetFile, iris_path, load_csv, load_iris, save_csv
from .errors import (
    ConfigError,
    ConstantSampleError,
    DatasetError,
    DatasetParseError,
    DimensionMismatchError,
    EmptyDatasetError,
    InvalidDofError,
    InvalidSizeError,
    NotPSDError,
    NotSymmetricError,
    RankDeficientError,
    SampleSizeError,
    SingularCovarianceError,
    SingularMatrixError,
    StiefelMvnError,
)
from .harness import (
    SimConfig,
    SimResult,
    SimTable,
    repeat_stability,
    run_experiment,
    run_table,
    table1_configs,
    table2_configs,
    table3_configs,
)
from .linalg import (
    helmert_apply,
    helmert_complement,
    polar_decompose,
    sym_inv_sqrt,
    sym_sqrt,
)
from .procedure import TestConfig, TestReport, mvn_test, transform
from .residuals import Sample, StiefelResidual, sample_mean_cov, stiefel_residual
from .sampling import (
    AlternativeModel,
    RngSeedSpec,
    sample_alternative,
    sample_std_normal_matrix,
    sample_wishart_identity,
)
from .univariate import (
    UnivariateTestResult,
    anderson_darling,
    resolve_method,
    shapiro_wilk,
)

__version__ = "0.1.0"

__all__ = [
    "AlternativeModel",
    "ConfigError",
    "ConstantSampleError",
    "DatasetError",
    "DatasetFile",
    "DatasetParseError",
    "DimensionMismatchError",
    "EmptyDatasetError",
    "InvalidDofError",
    "InvalidSizeError",
    "NotPSDError",
    "NotSymmetricError",
    "RankDeficientError",
    "RngSeedSpec",
    "Sample",
    "SampleSizeError",
    "SimConfig",
    "SimResult",
    "SimTable",
    "SingularCovarianceError",
    "SingularMatrixError",
    "StiefelMvnError",
    "StiefelResidual",
    "TestConfig",
    "TestReport",
    "UnivariateTestResult",
    "anderson_darling",
    "helmert_apply",
    "helmert_complement",
    "iris_path",
    "load_csv",
    "load_iris",
    "mvn_test",
    "polar_decompose",
    "repeat_stability",
    "resolve_method",
    "run_experiment",
    "run_table",
    "sample_alternative",
    "sample_mean_cov",
    "sample_std_normal_matrix",
    "sample_wishart_identity",
    "save_csv",
    "shapiro_wilk",
    "stiefel_residual",
    "sym_inv_sqrt",
    "sym_sqrt",
    "table1_configs",
    "table2_configs",
    "table3_configs",
    "transform",
    "__version__",
]
