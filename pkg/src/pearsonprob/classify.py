"""Kappa-criterion classification into the eight Pearson family members."""

import enum
import math
from dataclasses import dataclass

from .errors import InvalidOptions


class PearsonType(enum.Enum):
    NORMAL = "normal"
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClassifyTolerances:
    """Bands that stand in for the exact equalities of the transition types.

    ``eps_type3`` is relative to ``1 + |2*beta2|``; the others are absolute.
    """

    eps_beta1: float = 1e-8
    eps_kappa_one: float = 1e-8
    eps_beta2_normal: float = 1e-8
    eps_type3: float = 1e-8

    def __post_init__(self):
        for name, v in vars(self).items():
            if not (0 < v < 1e-2):
                raise InvalidOptions(f"{name} must lie in (0, 1e-2), got {v!r}")


def on_type3_line(beta1, beta2, eps):
    return abs(2 * beta2 - 3 * beta1 - 6) < eps * (1 + abs(2 * beta2))


def classify(s, tol=ClassifyTolerances()):
    """Pick the Pearson type for shape coefficients ``s``.

    Transition types are tested before the main types, the kappa = +/-inf
    line first, because kappa changes sign across it.
    """
    symmetric = s.beta1 < tol.eps_beta1
    if not symmetric and (math.isinf(s.kappa) or on_type3_line(s.beta1, s.beta2, tol.eps_type3)):
        return PearsonType.III
    if symmetric:
        if abs(s.beta2 - 3) < tol.eps_beta2_normal:
            return PearsonType.NORMAL
        return PearsonType.II if s.beta2 < 3 else PearsonType.VII
    if abs(s.kappa - 1) < tol.eps_kappa_one:
        return PearsonType.V
    if s.kappa < 0:
        return PearsonType.I
    if s.kappa < 1:
        return PearsonType.IV
    return PearsonType.VI
