import math

import pytest
from scipy.optimize import brentq

from pearsonprob import PearsonType, kappa_criterion

T = PearsonType

# (beta1, beta2) inputs and the classical tabulated fits (Elderton & Johnson)
ELDERTON_FITS = {
    T.I: ((0.507296, 2.935111), {"kappa": -0.264500, "r": 5.186811, "m1": 0.409833, "m2": 2.776878}),
    T.IV: ((0.005366, 3.172912), {"kappa": 0.012800, "r": 39.442540, "m": 20.721270, "nu": 4.388794}),
    T.VI: ((0.995360, 4.739349), {"kappa": 1.895000, "r": -33.421290, "q1": 42.030800, "q2": 6.609500}),
}

# sqrt(beta1), beta2 and tabulated percentage points for 2.5% and 97.5%
PERCENTAGE_POINTS = [
    (T.NORMAL, 0.0, 3.0, -1.9600, 1.9600),
    (T.I, 0.6, 3.2, -1.5998, 2.2320),
    (T.II, 0.0, 2.6, -1.9196, 1.9196),
    (T.IV, 1.4, 8.6, -1.5068, 2.3801),
    (T.VI, 2.0, 11.2, -1.1915, 2.5545),
    (T.VII, 0.0, 8.4, -1.9925, 1.9925),
]


def type5_beta2(beta1):
    """beta2 on the kappa == 1 curve, located by root search."""
    return brentq(lambda b2: kappa_criterion(beta1, b2) - 1, 1.5 * beta1 + 3 + 1e-9, 1e4,
                  xtol=1e-14, rtol=1e-15)


def shape_grid():
    """(sqrt_beta1, beta2, expected type) points spanning all eight types."""
    grid = [(0.0, 3.0, T.NORMAL)]
    grid += [(0.0, b2, T.II) for b2 in (1.1, 1.5, 1.8, 2.2, 2.6, 2.95)]
    grid += [(0.0, b2, T.VII) for b2 in (3.05, 4.2, 6.0, 8.4, 12.0, 20.0)]
    grid += [(sb, b2, T.I) for sb, b2 in (
        (0.6, 3.2), (0.3, 1.2), (0.9, 1.9), (-1.5, 3.3), (1.99, 4.97), (0.5, 1.26),
        (math.sqrt(0.507296), 2.935111), (1.0, 3.0), (-0.4, 2.5), (1.2, 3.4),
    )]
    grid += [(sb, 1.5 * sb * sb + 3, T.III) for sb in (0.3, 0.8, -1.2, 1.6)]
    grid += [(sb, type5_beta2(sb * sb), T.V) for sb in (0.5, 1.0, -1.5, 2.5)]
    grid += [(sb, b2, T.IV) for sb, b2 in (
        (1.4, 8.6), (math.sqrt(0.005366), 3.172912), (0.1, 3.1), (0.5, 30.0), (-2.0, 40.0),
        (3.0, 30.0), (-0.8, 5.0), (1.5, 8.0),
    )]
    grid += [(sb, b2, T.VI) for sb, b2 in (
        (2.0, 11.2), (-2.0, 11.2), (math.sqrt(0.995360), 4.739349), (1.0, 4.6), (1.5, 6.4),
        (0.3, 3.14),
    )]
    return grid


GRID = shape_grid()


@pytest.fixture(params=GRID, ids=[f"{t.value}-{sb:.3g}-{b2:.4g}" for sb, b2, t in GRID])
def grid_point(request):
    return request.param
