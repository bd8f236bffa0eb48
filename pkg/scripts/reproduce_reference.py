"""Print fitted parameters and tail probabilities next to the classical tabulations.

    python3 scripts/reproduce_reference.py
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from conftest import ELDERTON_FITS, PERCENTAGE_POINTS  # noqa: E402

from pearsonprob import CentralMoments, cdf, fit, moments_from_shape, shape_from_moments  # noqa: E402


def parameters():
    print("Fitted parameters vs Elderton & Johnson")
    print(f"{'type':<5}{'param':<8}{'computed':>14}{'tabulated':>14}{'abs diff':>12}")
    for t, ((b1, b2), ref) in ELDERTON_FITS.items():
        f = fit(moments_from_shape(math.sqrt(b1), b2))
        got = {"kappa": shape_from_moments(f.moments).kappa, "r": f.r, **f.params}
        for key, want in ref.items():
            have = abs(got[key]) if key == "nu" else got[key]
            print(f"{t.value:<5}{key:<8}{have:>14.6f}{want:>14.6f}{abs(have - want):>12.2e}")


def probabilities():
    print("\nTail probabilities at tabulated 2.5% / 97.5% points (mu2 = 1)")
    print(f"{'type':<7}{'sqrt_b1':>8}{'beta2':>7}{'x_lo':>9}{'P(X<=x_lo)':>12}{'x_hi':>9}{'P(X<=x_hi)':>12}")
    for t, sb, b2, x_lo, x_hi in PERCENTAGE_POINTS:
        f = fit(CentralMoments(1.0, sb, b2))
        p_lo, p_hi = cdf(f, x_lo).p, cdf(f, x_hi).p
        print(f"{t.value:<7}{sb:>8.2f}{b2:>7.2f}{x_lo:>9.4f}{p_lo:>12.6f}{x_hi:>9.4f}{p_hi:>12.6f}")


if __name__ == "__main__":
    parameters()
    probabilities()
