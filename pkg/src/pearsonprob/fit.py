"""Density parameters of the selected Pearson type from the central moments.

Shape parameters follow Elderton & Johnson's moment relations (the auxiliary
constant ``r`` and the roots of its quadratic); scale parameters come from the
closed-form variance of the standardised shape, and ``y0`` from numerical
normalisation. Every fit is computed for non-negative skew in units of the
standard deviation and then reflected and rescaled.

Conventions
-----------
* x is always a deviation from the mean, in data units.
* ``origin_shift`` is the mean-relative position of the origin the closed
  form is written about, so the closed form is evaluated at
  ``x - origin_shift`` (at ``origin_shift - x`` when ``mirrored``).
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .classify import ClassifyTolerances, PearsonType, classify
from .errors import FitFailure
from .moments import CentralMoments, shape_from_moments
from .quadrature import IntegrationSettings, integrate, mass_between

# Tighter than the defaults so normalisation error is negligible next to
# any CDF tolerance a caller may request.
NORMALISATION_SETTINGS = IntegrationSettings(abs_tol=1e-14, rel_tol=1e-13, max_subdivisions=50_000)

SYMMETRIC_TYPES = (PearsonType.NORMAL, PearsonType.II, PearsonType.VII)

# Parameters measured in data units (scaled by the standard deviation).
_LENGTHS = {"a", "a1", "a2"}


@dataclass(frozen=True)
class _Shape:
    """A fit in standard-deviation units with non-negative skew."""

    params: dict
    r: float | None
    log_kernel: Callable
    lo: float
    hi: float
    mean: float  # mean of the closed form in its own coordinate
    # algebraic exponent at each end: |u - end|**p if finite, |u|**p if infinite
    powers: tuple = (None, None)
    homogeneity: float = 0.0  # kernel(c*u) scales as c**homogeneity
    # log kernel at distance d inside the lower / upper endpoint
    near_lo: Callable | None = None
    near_hi: Callable | None = None

    def log_kernel_near(self, side, d):
        fn = self.near_lo if side == "lo" else self.near_hi
        if fn is not None:
            return fn(d)
        return self.log_kernel(self.lo + d if side == "lo" else self.hi - d)


@dataclass(frozen=True)
class FittedPearson:
    type_tag: PearsonType
    r: float | None
    params: dict
    origin_shift: float
    support: tuple
    mirrored: bool
    moments: CentralMoments
    scale: float
    log_y0: float
    endpoint_powers: tuple
    mass_below_mean: float = field(default=0.5, compare=False)
    _shape: _Shape = field(default=None, repr=False, compare=False)
    _log_norm: float = field(default=0.0, repr=False, compare=False)

    @property
    def y0(self):
        try:
            return math.exp(self.log_y0)
        except OverflowError:
            return math.inf

    def standard_density(self, z):
        """Density of X / sd at z (vectorised)."""
        z = np.asarray(z, dtype=float)
        u = (-z if self.mirrored else z) + self._shape.mean
        inside = (u >= self._shape.lo) & (u <= self._shape.hi)
        with np.errstate(all="ignore"):
            lk = self._shape.log_kernel(np.where(inside, u, self._shape.mean))
            val = np.exp(lk - self._log_norm)
        out = np.where(inside & ~np.isnan(val), val, 0.0)
        return out if out.ndim else float(out)

    def standard_density_near(self, side, d):
        """Standard density at distance d >= 0 inside the ``side`` end of the support."""
        if self.mirrored:
            side = "hi" if side == "lo" else "lo"
        d = np.asarray(d, dtype=float)
        with np.errstate(all="ignore"):
            val = np.exp(self._shape.log_kernel_near(side, d) - self._log_norm)
        return np.where(np.isnan(val), 0.0, val)

    def density(self, x):
        """Density at mean-relative x in data units; exactly 0 off the support."""
        return self.standard_density(np.asarray(x, dtype=float) / self.scale) / self.scale


def density(f, x):
    return f.density(x)


def support(f):
    return f.support


# ---------------------------------------------------------------------------
# Per-type shapes (unit variance, skew >= 0)
# ---------------------------------------------------------------------------

def _check(type_name, name, value, ok):
    if not (math.isfinite(value) and ok):
        raise FitFailure(type_name, name, value)


def _quadratic_roots(beta1, r):
    """Roots m1 <= m2 of the Type I / VI quadratic and the range factor."""
    inner = beta1 * (r + 2) ** 2 + 16 * (r + 1)
    if inner <= 0:
        raise FitFailure("I/VI", "beta1*(r+2)^2 + 16(r+1)", inner)
    half = 0.5 * r * (r + 2) * math.sqrt(beta1 / inner)
    lo, hi = 0.5 * (r - 2) - half, 0.5 * (r - 2) + half
    return min(lo, hi), max(lo, hi), inner


def _normal(b1, b2):
    return _Shape({}, None, lambda u: -0.5 * u * u, -math.inf, math.inf, 0.0)


def _type1(b1, b2):
    r = 6 * (b2 - b1 - 1) / (6 + 3 * b1 - 2 * b2)
    m1, m2, _ = _quadratic_roots(b1, r)
    _check("I", "m1", m1, m1 > -1)
    _check("I", "m2", m2, m2 > -1)
    p, q = m1 + 1, m2 + 1
    width = (p + q) * math.sqrt((p + q + 1) / (p * q))
    mean_frac = p / (p + q)
    if m1 * m2 > 0:
        # origin at the mode (antimode when U-shaped), where m1/a1 == m2/a2
        a1 = width * m1 / (m1 + m2)
    else:
        a1 = width * mean_frac
    a2 = width - a1
    _check("I", "a1", a1, a1 > 0)
    _check("I", "a2", a2, a2 > 0)

    def lk(u):
        return m1 * np.log1p(u / a1) + m2 * np.log1p(-u / a2)

    return _Shape(
        {"a1": a1, "a2": a2, "m1": m1, "m2": m2}, r, lk, -a1, a2,
        -a1 + width * mean_frac, (m1, m2),
        near_lo=lambda d: m1 * np.log(d / a1) + m2 * np.log1p((a1 - d) / a2),
        near_hi=lambda e: m1 * np.log1p((a2 - e) / a1) + m2 * np.log(e / a2),
    )


def _type2(b1, b2):
    r = 3 * (b2 - 1) / (3 - b2)
    m = 0.5 * (r - 2)
    a = math.sqrt(r + 1)
    _check("II", "m", m, m > -1)

    def lk(u):
        return m * (np.log1p(-u / a) + np.log1p(u / a))

    def near(d):
        return m * (np.log(d / a) + np.log1p((a - d) / a))

    return _Shape({"a": a, "m": m}, None, lk, -a, a, 0.0, (m, m), near_lo=near, near_hi=near)


def _type3(b1, b2):
    k = 4.0 / b1
    theta = 0.5 * math.sqrt(b1)
    gamma = 1.0 / theta
    a = (k - 1) * theta
    _check("III", "a", a, a > 0)
    ga = gamma * a

    def lk(u):
        return ga * np.log1p(u / a) - gamma * u

    return _Shape(
        {"a": a, "gamma": gamma}, None, lk, -a, math.inf, theta, (ga, None),
        near_lo=lambda d: ga * np.log(d / a) - gamma * (d - a),
    )


def _type4(b1, b2):
    r = 6 * (b2 - b1 - 1) / (2 * b2 - 3 * b1 - 6)
    m = 0.5 * (r + 2)
    disc = 16 * (r - 1) - b1 * (r - 2) ** 2
    _check("IV", "16(r-1) - beta1*(r-2)^2", disc, disc > 0)
    _check("IV", "m", m, m > 0.5)
    a = 0.25 * math.sqrt(disc)
    nu = -r * (r - 2) * math.sqrt(b1) / math.sqrt(disc)

    def lk(u):
        v = u / a
        return -m * np.log1p(v * v) - nu * np.arctan(v)

    return _Shape(
        {"a": a, "m": m, "nu": nu}, r, lk, -math.inf, math.inf, -nu * a / r, (-2 * m, -2 * m),
    )


def _type5(b1, b2):
    r = 6 * (b2 - b1 - 1) / (6 + 3 * b1 - 2 * b2)
    alpha = 3 + (8 + 4 * math.sqrt(4 + b1)) / b1
    p = alpha + 1
    gamma = (alpha - 1) * math.sqrt(alpha - 2)
    _check("V", "p", p, p > 1)

    def lk(u):
        return -p * np.log(u) - gamma / u

    return _Shape(
        {"p": p, "gamma": gamma}, r, lk, 0.0, math.inf, gamma / (alpha - 1),
        (None, -p), -p,
    )


def _type6(b1, b2):
    r = 6 * (b2 - b1 - 1) / (6 + 3 * b1 - 2 * b2)
    lo_root, hi_root, _ = _quadratic_roots(b1, r)
    q1, q2 = -lo_root, hi_root
    _check("VI", "q2", q2, q2 > -1)
    _check("VI", "q1", q1, q1 > q2 + 1)
    shape_a, shape_b = q2 + 1, q1 - q2 - 1  # beta-prime shapes
    var_t = shape_a * (shape_a + shape_b - 1) / ((shape_b - 2) * (shape_b - 1) ** 2)
    a = 1.0 / math.sqrt(var_t)
    _check("VI", "a", a, a > 0)

    def lk(u):
        return q2 * np.log(u - a) - q1 * np.log(u)

    return _Shape(
        {"a": a, "q1": q1, "q2": q2}, r, lk, a, math.inf,
        a * (1 + shape_a / (shape_b - 1)), (q2, q2 - q1), q2 - q1,
        near_lo=lambda d: q2 * np.log(d) - q1 * np.log(a + d),
    )


def _type7(b1, b2):
    m = (5 * b2 - 9) / (2 * (b2 - 3))
    a = math.sqrt(2 * m - 3)
    _check("VII", "m", m, m > 0.5)

    def lk(u):
        v = u / a
        return -m * np.log1p(v * v)

    return _Shape({"a": a, "m": m}, None, lk, -math.inf, math.inf, 0.0, (-2 * m, -2 * m))


_BUILDERS = {
    PearsonType.NORMAL: _normal,
    PearsonType.I: _type1,
    PearsonType.II: _type2,
    PearsonType.III: _type3,
    PearsonType.IV: _type4,
    PearsonType.V: _type5,
    PearsonType.VI: _type6,
    PearsonType.VII: _type7,
}


def fit(m, tol=ClassifyTolerances()):
    """Fit the Pearson member selected by the kappa-criterion to ``m``."""
    shape = shape_from_moments(m, tol.eps_type3)
    t = classify(shape, tol)
    mirrored = t not in SYMMETRIC_TYPES and m.mu3 < 0
    sd = math.sqrt(m.mu2)
    sh = _BUILDERS[t](shape.beta1, shape.beta2)

    kernel_at_mean = float(sh.log_kernel(np.array(sh.mean)))
    if not math.isfinite(kernel_at_mean):
        raise FitFailure(t.value, "log kernel at mean", kernel_at_mean)

    def shifted(u):
        with np.errstate(all="ignore"):
            val = np.exp(sh.log_kernel(u) - kernel_at_mean)
        inside = (u >= sh.lo) & (u <= sh.hi)
        return np.where(inside & np.isfinite(val), val, 0.0)

    def shifted_near(side):
        def g(d):
            with np.errstate(all="ignore"):
                val = np.exp(sh.log_kernel_near(side, d) - kernel_at_mean)
            return np.where(np.isnan(val), 0.0, val)
        return g

    z, _ = integrate(shifted, sh.lo, sh.hi, NORMALISATION_SETTINGS,
                     lo_power=sh.powers[0], hi_power=sh.powers[1],
                     near_lo=shifted_near("lo"), near_hi=shifted_near("hi"))
    if not (z > 0 and math.isfinite(z)):
        raise FitFailure(t.value, "normalising integral", z)
    log_norm = kernel_at_mean + math.log(z)
    log_y0 = -log_norm - (1 + sh.homogeneity) * math.log(sd)

    params = {k: (v * sd if k in _LENGTHS else v) for k, v in sh.params.items()}
    if t is PearsonType.NORMAL:
        params["mu2"] = m.mu2
    elif t is PearsonType.III:
        params["gamma"] = sh.params["gamma"] / sd
    elif t is PearsonType.V:
        params["gamma"] = sh.params["gamma"] * sd
    if t is PearsonType.IV and mirrored:
        params["nu"] = -params["nu"]
    params = {"y0": _exp_or_inf(log_y0), **params}

    lo, hi = (sh.lo - sh.mean) * sd, (sh.hi - sh.mean) * sd
    powers = sh.powers
    shift = 0.0 - sh.mean * sd
    if mirrored:
        lo, hi = -hi, -lo
        powers = powers[::-1]
        shift = -shift

    fitted = FittedPearson(
        type_tag=t, r=sh.r, params=params, origin_shift=shift, support=(lo, hi),
        mirrored=mirrored, moments=m, scale=sd, log_y0=log_y0, endpoint_powers=powers,
        _shape=sh, _log_norm=log_norm,
    )
    below, _ = mass_between(fitted, -math.inf, 0.0, NORMALISATION_SETTINGS)
    object.__setattr__(fitted, "mass_below_mean", below)
    return fitted


def _exp_or_inf(v):
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf
