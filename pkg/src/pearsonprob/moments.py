"""Central moments of a sample and the shape coefficients derived from them.

All x-coordinates downstream are deviations from the mean, so the first
moment never appears as an input.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSample, InvalidMoments

# Type III band on |2*beta2 - 3*beta1 - 6|, scaled by (1 + |2*beta2|).
DEFAULT_EPS_KAPPA = 1e-8
# Slack on the validity inequality beta2 > beta1 + 1, scaled by (1 + beta2).
VALIDITY_TOL = 1e-12


@dataclass(frozen=True)
class CentralMoments:
    """Second, third and fourth central moments (population convention)."""

    mu2: float
    mu3: float
    mu4: float

    def __post_init__(self):
        for name in ("mu2", "mu3", "mu4"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidMoments(f"{name} must be finite, got {v!r}")
        if self.mu2 <= 0:
            raise InvalidMoments(f"mu2 must be > 0, got {self.mu2!r}")
        if self.mu4 <= 0:
            raise InvalidMoments(f"mu4 must be > 0, got {self.mu4!r}")
        beta1 = self.mu3 ** 2 / self.mu2 ** 3
        beta2 = self.mu4 / self.mu2 ** 2
        if beta2 - beta1 - 1 <= VALIDITY_TOL * (1 + beta2):
            raise InvalidMoments(
                f"moments violate beta2 > beta1 + 1 (beta1={beta1:.6g}, beta2={beta2:.6g})"
            )

    def scaled(self, c):
        """Moments of c*X."""
        return CentralMoments(c ** 2 * self.mu2, c ** 3 * self.mu3, c ** 4 * self.mu4)

    def mirrored(self):
        """Moments of -X."""
        return CentralMoments(self.mu2, -self.mu3, self.mu4)


@dataclass(frozen=True)
class ShapeCoefficients:
    sqrt_beta1: float
    beta1: float
    beta2: float
    kappa: float  # +/-inf marks the Type III line


def central_moments(values):
    """Return (mu2, mu3, mu4) of ``values`` by the two-pass method, unvalidated."""
    x = np.asarray(values, dtype=float)
    d = x - x.mean()
    d2 = d * d
    return float(d2.mean()), float((d2 * d).mean()), float((d2 * d2).mean())


def compute_sample_moments(sample):
    """Population central moments of a raw sample.

    Raises DegenerateSample for constant data and InvalidMoments when the
    sample takes only two distinct values (beta2 == beta1 + 1 exactly).
    """
    x = np.asarray(sample, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise InvalidMoments(f"need a 1-D sample of length >= 2, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidMoments("sample contains NaN or infinite values")
    mu2, mu3, mu4 = central_moments(x)
    if mu2 == 0 or np.all(x == x[0]):
        raise DegenerateSample("all sample values are equal")
    return CentralMoments(mu2, mu3, mu4)


def kappa_criterion(beta1, beta2, eps=DEFAULT_EPS_KAPPA):
    """Pearson's kappa, returning +/-inf on the Type III line (beta1 > 0)."""
    if beta2 <= beta1 + 1:
        raise InvalidMoments(f"kappa needs beta2 > beta1 + 1 (beta1={beta1}, beta2={beta2})")
    if beta1 == 0:
        return 0.0
    d = 2 * beta2 - 3 * beta1 - 6
    if abs(d) < eps * (1 + abs(2 * beta2)):
        return math.copysign(math.inf, d)
    return beta1 * (beta2 + 3) ** 2 / (4 * (4 * beta2 - 3 * beta1) * d)


def shape_from_moments(m, eps=DEFAULT_EPS_KAPPA):
    sqrt_beta1 = m.mu3 / m.mu2 ** 1.5
    beta1 = sqrt_beta1 * sqrt_beta1
    beta2 = m.mu4 / (m.mu2 * m.mu2)
    return ShapeCoefficients(sqrt_beta1, beta1, beta2, kappa_criterion(beta1, beta2, eps))


def moments_from_shape(sqrt_beta1, beta2, mu2=1.0):
    """Central moments with the given signed skewness and kurtosis."""
    return CentralMoments(mu2, sqrt_beta1 * mu2 ** 1.5, beta2 * mu2 ** 2)
