"""Adaptive Gauss-Kronrod integration, CDF evaluation and quantile inversion.

The 7/15-point Gauss-Kronrod pair is an open rule, so integrable endpoint
singularities are never evaluated directly. Algebraic singularities of known
exponent are additionally removed by a power substitution, and infinite
limits are mapped onto [0, 1) with x = a + c*t/(1 - t).
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import InvalidOptions, NonConvergence

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# 7-point Gauss weights at _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WEIGHTS_K = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WEIGHTS_G = np.zeros(15)
_WEIGHTS_G[[1, 3, 5]] = _WG[:3]
_WEIGHTS_G[[13, 11, 9]] = _WG[:3]
_WEIGHTS_G[7] = _WG[3]

_EPS = np.finfo(float).eps

WARNING_TEMPLATE = "WARNING: x0 is out of the domain of type {} Pearson distribution"


@dataclass(frozen=True)
class IntegrationSettings:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 10_000
    tail_cut_epsilon: float = 1e-16

    def __post_init__(self):
        if not self.abs_tol >= 1e-14:
            raise InvalidOptions(f"abs_tol must be >= 1e-14, got {self.abs_tol!r}")
        if not self.rel_tol >= 1e-14:
            raise InvalidOptions(f"rel_tol must be >= 1e-14, got {self.rel_tol!r}")
        if not (0 < self.max_subdivisions <= 10 ** 6):
            raise InvalidOptions(f"max_subdivisions must be in (0, 1e6], got {self.max_subdivisions!r}")
        if not self.tail_cut_epsilon > 0:
            raise InvalidOptions("tail_cut_epsilon must be > 0")

    def tolerance(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_SETTINGS = IntegrationSettings()


@dataclass(frozen=True)
class ProbabilityResult:
    p: float
    domain_warning: str | None = None
    error_estimate: float = 0.0


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    y = f(center + half * _NODES)
    k = half * float(_WEIGHTS_K @ y)
    g = half * float(_WEIGHTS_G @ y)
    return k, abs(k - g)


def _cleaned(f, s):
    # Non-finite products of an underflowed weight and a divergent factor, and
    # transformed tail values below tail_cut_epsilon, contribute nothing.
    def g(x):
        y = np.asarray(f(x), dtype=float)
        return np.where(np.isnan(y) | (np.abs(y) < s.tail_cut_epsilon), 0.0, y)
    return g


def _adaptive(f, a, b, s, tol_scale=1.0):
    """Globally adaptive bisection on a finite interval of the working variable."""
    f = _cleaned(f, s)
    val, err = _gk15(f, a, b)
    heap = [(-err, a, b, val, err)]
    total, total_err = val, err
    n = 1
    while total_err > tol_scale * s.tolerance(total):
        if n >= s.max_subdivisions:
            raise NonConvergence(
                f"integration did not converge in {s.max_subdivisions} subdivisions "
                f"(value={total!r}, error estimate={total_err!r})"
            )
        neg, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or hi - lo <= 64 * _EPS * max(abs(lo), abs(hi), 1e-300):
            # Interval at roundoff width; its error cannot shrink further.
            heapq.heappush(heap, (0.0, lo, hi, v, e))
            if all(item[0] == 0.0 for item in heap):
                break
            continue
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
        n += 1
        # Re-summing keeps cancellation from drifting over many updates.
        if n % 64 == 0:
            total = math.fsum(item[3] for item in heap)
            total_err = math.fsum(item[4] for item in heap)
        else:
            total += v1 + v2 - v
            total_err += e1 + e2 - e
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(item[4] for item in heap)
    return total, total_err


def _tail_exponent(power):
    """Exponent k of the map x = c*((1 - t)**-k - 1) that flattens an |x|**power tail."""
    if power is None or power >= -1:
        return 1.0
    return max(1.0, 2.0 / (-power - 1.0))


def _half_line(f, start, direction, scale, power):
    k = _tail_exponent(power)

    def g(t):
        u = 1.0 - t
        grow = u ** -k
        y = f(start + direction * scale * (grow - 1.0))
        return np.where(y == 0, 0.0, y * (scale * k) * grow / u)
    return g


def _infinite(f, lo, hi, s, scale, lo_power, hi_power, tol_scale=1.0):
    if math.isfinite(lo):
        return _adaptive(_half_line(f, lo, 1.0, scale, hi_power), 0.0, 1.0, s, tol_scale)
    if math.isfinite(hi):
        return _adaptive(_half_line(f, hi, -1.0, scale, lo_power), 0.0, 1.0, s, tol_scale)
    v1, e1 = _adaptive(_half_line(f, 0.0, -1.0, scale, lo_power), 0.0, 1.0, s, 0.5 * tol_scale)
    v2, e2 = _adaptive(_half_line(f, 0.0, 1.0, scale, hi_power), 0.0, 1.0, s, 0.5 * tol_scale)
    return v1 + v2, e1 + e2


def _power_map(near, beta):
    # distance d = w**beta removes d**(1/beta - 1)
    def g(w):
        return near(w ** beta) * (beta * w ** (beta - 1))
    return g


def _singular_piece(near, power, length, s, tol_scale=1.0):
    """Integral of near(d) over d in [0, length] for near(d) ~ d**power, power in (-1, 0).

    The substitution d = w**beta, beta = 1/(power + 1), flattens the
    integrand. Below d_min (where w**beta would underflow for beta large)
    the power law itself is integrated in closed form.
    """
    beta = 1.0 / (power + 1.0)
    d_min = 1e-200 * length
    head = float(near(np.array([d_min]))[0]) * d_min / (power + 1.0)
    if not math.isfinite(head):
        head = 0.0
    val, err = _adaptive(_power_map(near, beta), d_min ** (1.0 / beta), length ** (1.0 / beta), s, tol_scale)
    return val + head, err


def integrate(f, lo, hi, s=DEFAULT_SETTINGS, lo_power=None, hi_power=None, scale=1.0,
              near_lo=None, near_hi=None):
    """Integrate vectorised ``f`` over [lo, hi]; either limit may be infinite.

    ``lo_power``/``hi_power`` declare the algebraic behaviour at each end:
    ``f ~ |x - end|**power`` at a finite end, where power in (-1, 0) is
    removed by the substitution ``|x - end| = w**(1/(power + 1))``, and
    ``f ~ |x|**power`` at an infinite end, which selects a stretched map
    that keeps slowly decaying tails integrable after transformation. Near such an
    endpoint ``near_lo(d)``/``near_hi(d)``, if given, must return f at
    distance d from it; they avoid the cancellation in ``lo + d`` for tiny d.
    ``scale`` sets the length unit of the infinite-range map.
    Returns ``(value, error_estimate)``.
    """
    if not lo < hi:
        if lo == hi:
            return 0.0, 0.0
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    sing_lo = lo_power is not None and math.isfinite(lo) and -1 < lo_power < 0
    sing_hi = hi_power is not None and math.isfinite(hi) and -1 < hi_power < 0
    if not (sing_lo or sing_hi):
        if math.isfinite(lo) and math.isfinite(hi):
            return _adaptive(f, lo, hi, s)
        return _infinite(f, lo, hi, s, scale, lo_power, hi_power)

    if sing_lo and sing_hi:
        mid = 0.5 * (lo + hi)
        v1, e1 = integrate(f, lo, mid, s, lo_power=lo_power, near_lo=near_lo, scale=scale)
        v2, e2 = integrate(f, mid, hi, s, hi_power=hi_power, near_hi=near_hi, scale=scale)
        return v1 + v2, e1 + e2

    if sing_lo:
        near = near_lo if near_lo is not None else (lambda d: f(lo + d))
        if math.isfinite(hi):
            return _singular_piece(near, lo_power, hi - lo, s)
        # Finite singular piece of length `scale`, then the infinite tail.
        v1, e1 = _singular_piece(near, lo_power, scale, s, 0.5)
        v2, e2 = _infinite(f, lo + scale, hi, s, scale, None, hi_power, 0.5)
        return v1 + v2, e1 + e2

    near = near_hi if near_hi is not None else (lambda d: f(hi - d))
    if math.isfinite(lo):
        return _singular_piece(near, hi_power, hi - lo, s)
    v1, e1 = _singular_piece(near, hi_power, scale, s, 0.5)
    v2, e2 = _infinite(f, lo, hi - scale, s, scale, lo_power, None, 0.5)
    return v1 + v2, e1 + e2


# ---------------------------------------------------------------------------
# Probability values
# ---------------------------------------------------------------------------

def domain_warning(fitted):
    return WARNING_TEMPLATE.format(fitted.type_tag.value)


def mass_between(fitted, a, b, s=DEFAULT_SETTINGS):
    """Probability of [a, b] (mean-relative, clipped to the support) and its error bound."""
    lo, hi = fitted.support
    a, b = max(a, lo), min(b, hi)
    if not a < b:
        return 0.0, 0.0
    sd = fitted.scale
    lo_pow, hi_pow = fitted.endpoint_powers
    return integrate(
        fitted.standard_density, a / sd, b / sd, s,
        lo_power=lo_pow if a == lo else None, hi_power=hi_pow if b == hi else None,
        near_lo=lambda d: fitted.standard_density_near("lo", d),
        near_hi=lambda d: fitted.standard_density_near("hi", d),
    )


def moment(fitted, k, s=DEFAULT_SETTINGS):
    """k-th moment about the mean of the fitted density, by quadrature."""
    lo, hi = fitted.support
    sd = fitted.scale
    lo_std, hi_std = lo / sd, hi / sd
    lo_pow, hi_pow = fitted.endpoint_powers
    # x**k raises the decay power at an infinite end
    if not math.isfinite(lo) and lo_pow is not None:
        lo_pow += k
    if not math.isfinite(hi) and hi_pow is not None:
        hi_pow += k
    val, _ = integrate(
        lambda z: z ** k * fitted.standard_density(z), lo_std, hi_std, s,
        lo_power=lo_pow, hi_power=hi_pow,
        near_lo=lambda d: (lo_std + d) ** k * fitted.standard_density_near("lo", d),
        near_hi=lambda d: (hi_std - d) ** k * fitted.standard_density_near("hi", d),
    )
    return val * sd ** k


def _lower_mass(fitted, x0, s):
    return mass_between(fitted, -math.inf, x0, s)


def _upper_mass(fitted, x0, s):
    return mass_between(fitted, x0, math.inf, s)


def cdf(fitted, x0, s=DEFAULT_SETTINGS):
    """Probability that the fitted variable (mean-relative) is at most ``x0``.

    Outside the support the result is clamped to 0 or 1 and carries the
    out-of-domain warning instead of raising.
    """
    x0 = float(x0)
    if not math.isfinite(x0):
        raise ValueError(f"x0 must be finite, got {x0!r}")
    lo, hi = fitted.support
    if x0 <= lo:
        return ProbabilityResult(0.0, domain_warning(fitted), 0.0)
    if x0 >= hi:
        return ProbabilityResult(1.0, domain_warning(fitted), 0.0)
    if x0 <= 0.0:
        p, err = _lower_mass(fitted, x0, s)
    else:
        # Complement keeps the relative error bound valid in the upper half:
        # p >= mass_below_mean there.
        floor = fitted.mass_below_mean
        tight = IntegrationSettings(
            s.abs_tol, max(1e-14, s.rel_tol * floor), s.max_subdivisions, s.tail_cut_epsilon
        )
        upper, err = _upper_mass(fitted, x0, tight)
        p = 1.0 - upper
    return ProbabilityResult(min(1.0, max(0.0, p)), None, err)


def _bracket(fitted, p, s):
    lo, hi = fitted.support
    sd = fitted.scale
    a = lo if math.isfinite(lo) else None
    b = hi if math.isfinite(hi) else None
    if a is None:
        step = sd
        a = min(0.0, b if b is not None else 0.0) - step
        while cdf(fitted, a, s).p > p:
            step *= 2.0
            a -= step
            if step > 1e12 * sd:
                raise NonConvergence("could not bracket quantile from below")
    if b is None:
        step = sd
        b = max(0.0, a) + step
        while cdf(fitted, b, s).p < p:
            step *= 2.0
            b += step
            if step > 1e12 * sd:
                raise NonConvergence("could not bracket quantile from above")
    return a, b


def quantile(fitted, p, s=DEFAULT_SETTINGS):
    """Mean-relative x with cdf(x) == p, by bracketing and Brent refinement."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    a, b = _bracket(fitted, p, s)

    def h(x):
        return cdf(fitted, x, s).p - p

    try:
        x, info = optimize.brentq(
            h, a, b, xtol=1e-13 * fitted.scale, rtol=4 * _EPS, maxiter=200, full_output=True,
            disp=False,
        )
    except ValueError as exc:
        raise NonConvergence(f"quantile bracket [{a}, {b}] failed: {exc}") from exc
    if not info.converged:
        raise NonConvergence(f"quantile search did not converge for p={p}")
    # near a singular end the root can round onto the endpoint; keep it inside
    lo, hi = fitted.support
    x = float(x)
    if x <= lo:
        x = math.nextafter(lo, math.inf)
    elif x >= hi:
        x = math.nextafter(hi, -math.inf)
    return x
