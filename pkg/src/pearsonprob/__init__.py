"""Pearson distribution fitting and probability values from central moments."""

from .classify import ClassifyTolerances, PearsonType, classify
from .errors import (
    DegenerateSample,
    FitFailure,
    InvalidMoments,
    InvalidOptions,
    NonConvergence,
    PearsonError,
)
from .fit import FittedPearson, density, fit, support
from .moments import (
    CentralMoments,
    ShapeCoefficients,
    compute_sample_moments,
    kappa_criterion,
    moments_from_shape,
    shape_from_moments,
)
from .quadrature import (
    IntegrationSettings,
    ProbabilityResult,
    cdf,
    integrate,
    moment,
    quantile,
)

__all__ = [
    "CentralMoments", "ClassifyTolerances", "DegenerateSample", "FitFailure",
    "FittedPearson", "IntegrationSettings", "InvalidMoments", "InvalidOptions",
    "NonConvergence", "PearsonError", "PearsonType", "ProbabilityResult",
    "ShapeCoefficients", "cdf", "classify", "compute_sample_moments", "density",
    "fit", "integrate", "kappa_criterion", "moment", "moments_from_shape", "quantile",
    "shape_from_moments", "support",
]
