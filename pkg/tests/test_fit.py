import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pearsonprob import (
    CentralMoments,
    FitFailure,
    PearsonType,
    fit,
    moment,
    moments_from_shape,
    shape_from_moments,
    support,
)

from conftest import GRID, ELDERTON_FITS

T = PearsonType


def fit_shape(sb, b2, mu2=1.0):
    return fit(moments_from_shape(sb, b2, mu2))


def student_t_density(x, df, scale):
    # location-scale Student-t, written out directly
    z = x / scale
    c = math.gamma((df + 1) / 2) / (math.sqrt(df * math.pi) * math.gamma(df / 2))
    return c * (1 + z * z / df) ** (-(df + 1) / 2) / scale


class TestExamples:
    def test_normal(self):
        f = fit(CentralMoments(1, 0, 3))
        assert f.type_tag is T.NORMAL
        assert f.params["mu2"] == 1
        assert f.support == (-math.inf, math.inf)
        assert f.origin_shift == 0
        assert f.density(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-12)
        assert f.params["y0"] == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-12)

    @pytest.mark.parametrize("mu2", [1.0, 0.3, 17.0])
    def test_elderton_type1(self, mu2):
        (b1, b2), _ = ELDERTON_FITS[T.I]
        f = fit_shape(math.sqrt(b1), b2, mu2)
        assert f.type_tag is T.I
        assert f.r == pytest.approx(5.186821, abs=3e-3)
        assert f.params["m1"] == pytest.approx(0.406954, abs=3e-3)
        assert f.params["m2"] == pytest.approx(2.779867, abs=3e-3)
        assert f.params["a1"] / f.params["a2"] == pytest.approx(
            f.params["m1"] / f.params["m2"], abs=1e-4)

    def test_elderton_type4(self):
        (b1, b2), _ = ELDERTON_FITS[T.IV]
        f = fit_shape(math.sqrt(b1), b2)
        assert f.type_tag is T.IV
        assert f.r == pytest.approx(39.442562, abs=1e-3)
        assert f.params["m"] == pytest.approx(20.721280, abs=1e-3)
        assert abs(f.params["nu"]) == pytest.approx(4.388796, abs=1e-3)

    def test_elderton_type6(self):
        (b1, b2), _ = ELDERTON_FITS[T.VI]
        f = fit_shape(math.sqrt(b1), b2)
        assert f.type_tag is T.VI
        assert f.r == pytest.approx(-33.421430, abs=1e-3)
        assert f.params["q1"] == pytest.approx(42.030520, abs=1e-3)
        assert f.params["q2"] == pytest.approx(6.609095, abs=1e-3)

    def test_type7_is_scaled_student_t(self):
        f = fit_shape(0.0, 8.4)
        df = 46 / 9
        scale = math.sqrt((df - 2) / df)
        xs = np.linspace(-8, 8, 401)
        ref = np.array([student_t_density(x, df, scale) for x in xs])
        assert np.max(np.abs(f.density(xs) - ref)) < 1e-8

    @pytest.mark.parametrize("b2", [1.5, 2.6, 3.0, 8.4])
    def test_symmetric_density(self, b2):
        f = fit_shape(0.0, b2)
        xs = np.linspace(-3, 3, 61)
        assert np.array_equal(f.density(xs), f.density(-xs))

    def test_type2_support(self):
        f = fit_shape(0.0, 2.6, mu2=2.0)
        lo, hi = support(f)
        assert lo == -hi
        assert hi == pytest.approx(f.params["a"])
        assert f.origin_shift == 0

    def test_type6_support(self):
        f = fit_shape(2.0, 11.2)
        lo, hi = support(f)
        assert math.isfinite(lo) and hi == math.inf
        # canonical domain a <= x, translated by the origin shift
        assert lo == pytest.approx(f.params["a"] + f.origin_shift)

    def test_type1_support(self):
        f = fit_shape(0.6, 3.2, mu2=4.0)
        lo, hi = f.support
        assert hi - lo == pytest.approx(f.params["a1"] + f.params["a2"])
        assert lo == pytest.approx(f.origin_shift - f.params["a1"])

    def test_density_zero_outside_support(self):
        f = fit_shape(2.0, 11.2)
        lo, _ = f.support
        assert f.density(lo - 1e-9) == 0.0
        assert f.density(lo - 5) == 0.0


class TestEldertonCrossChecks:
    def test_type1_relations(self):
        for b1, b2 in [(0.507296, 2.935111), (0.36, 3.2), (0.81, 1.9)]:
            f = fit_shape(math.sqrt(b1), b2, mu2=2.0)
            r = f.r
            assert r == pytest.approx(6 * (b2 - b1 - 1) / (6 + 3 * b1 - 2 * b2))
            assert f.params["m1"] + f.params["m2"] == pytest.approx(r - 2)
            # Elderton's range formula
            width = 0.5 * math.sqrt(2.0) * math.sqrt(b1 * (r + 2) ** 2 + 16 * (r + 1))
            assert f.params["a1"] + f.params["a2"] == pytest.approx(width, rel=1e-12)

    def test_type4_relations(self):
        b1, b2 = 1.96, 8.6
        f = fit_shape(1.4, b2)
        r = 6 * (b2 - b1 - 1) / (2 * b2 - 3 * b1 - 6)
        assert f.r == pytest.approx(r)
        assert f.params["m"] == pytest.approx((r + 2) / 2)
        # mean lies nu*a/r from the origin
        assert f.origin_shift == pytest.approx(f.params["nu"] * f.params["a"] / r)

    def test_type6_range(self):
        b1, b2 = 0.995360, 4.739349
        f = fit_shape(math.sqrt(b1), b2, mu2=3.0)
        r = f.r
        elderton_a = 0.5 * math.sqrt(3.0) * math.sqrt(b1 * (r + 2) ** 2 + 16 * (r + 1))
        assert f.params["a"] == pytest.approx(elderton_a, rel=1e-12)


class TestFailures:
    def test_type3_with_unit_shape_fails(self):
        # gamma shape 4/beta1 <= 1 puts the mode on the boundary: a <= 0
        with pytest.raises(FitFailure) as exc:
            fit_shape(2.0, 1.5 * 4 + 3)
        assert exc.value.type_name == "III"
        assert exc.value.parameter == "a"


class TestProperties:
    @pytest.mark.parametrize("sb,b2,t", GRID)
    def test_normalisation_and_moments(self, sb, b2, t):
        mu2 = 2.5
        f = fit_shape(sb, b2, mu2)
        assert f.type_tag is t
        assert moment(f, 0) == pytest.approx(1.0, abs=1e-8)
        targets = [0.0, mu2, sb * mu2 ** 1.5, b2 * mu2 ** 2]
        for k, target in zip(range(1, 5), targets):
            got = moment(f, k)
            if target == 0:
                assert abs(got) < 1e-6
            else:
                assert got == pytest.approx(target, rel=1e-6)

    @pytest.mark.parametrize("sb,b2,t", GRID)
    def test_density_nonnegative(self, sb, b2, t):
        f = fit_shape(sb, b2)
        lo, hi = f.support
        xs = np.linspace(max(lo, -10), min(hi, 10), 501)
        assert np.all(f.density(xs) >= 0)
        assert f.params["y0"] > 0

    @pytest.mark.parametrize("sb,b2,t", GRID)
    def test_scale_equivariance(self, sb, b2, t):
        c = 3.7
        f = fit_shape(sb, b2)
        g = fit(moments_from_shape(sb, b2).scaled(c))
        assert g.type_tag is f.type_tag
        for k, v in f.params.items():
            if k in ("m", "m1", "m2", "nu", "q1", "q2", "p"):
                assert g.params[k] == pytest.approx(v, rel=1e-10)
        if f.r is not None:
            assert g.r == pytest.approx(f.r, rel=1e-10)
        lo, hi = f.support
        xs = np.linspace(max(lo, -5) + 1e-3, min(hi, 5) - 1e-3, 97)
        np.testing.assert_allclose(g.density(c * xs), f.density(xs) / c, rtol=1e-9)

    @pytest.mark.parametrize("sb,b2,t", GRID)
    def test_mirror(self, sb, b2, t):
        f = fit_shape(sb, b2)
        g = fit(moments_from_shape(sb, b2).mirrored())
        lo, hi = f.support
        assert g.support == (-hi, -lo)
        xs = np.linspace(max(lo, -5) + 1e-3, min(hi, 5) - 1e-3, 97)
        np.testing.assert_allclose(g.density(-xs), f.density(xs), rtol=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(-3.0, 3.0), st.floats(0.05, 40.0))
    def test_random_moments_round_trip(self, sb, excess):
        b2 = sb * sb + 1 + excess
        try:
            f = fit_shape(sb, b2)
        except FitFailure:
            # only gamma fits with shape <= 1 are unrepresentable
            assert shape_from_moments(moments_from_shape(sb, b2)).beta1 >= 4
            return
        assert moment(f, 0) == pytest.approx(1.0, abs=1e-8)
        assert moment(f, 2) == pytest.approx(1.0, rel=1e-6)
        assert moment(f, 3) == pytest.approx(sb, rel=1e-6, abs=1e-6)
