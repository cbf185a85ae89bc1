"""Transforms against classical closed forms and their defining cross-relations."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptrans import functions as fn
from ptrans import transforms as tr
from ptrans.errors import DomainError, EvalError, TailError
from ptrans.specfun import bessel_k, beta, exp_integral_e1, gamma, rgamma
from ptrans.transforms import GrowthClass, RealFunction

from conftest import rel_err, within

SQRT_PI = math.sqrt(math.pi)


def plain(func, growth=GrowthClass.ALGEBRAIC, **kw):
    return RealFunction(lambda x: func(np.asarray(x, dtype=float)), growth, **kw)


class TestL2:
    @given(st.floats(0.2, 5))
    def test_constant(self, y):
        assert within(tr.l2_transform(fn.one().realization, y).value, 1 / (2 * y * y), 1e-9)

    @given(st.floats(0.3, 3), st.floats(0.3, 3))
    def test_power_kernel(self, nu, y):
        f = fn.power(nu).realization
        assert within(tr.l2_transform(f, y).value, gamma(nu) / (2 * y ** (2 * nu)), 1e-8)

    @given(st.floats(-0.5, 2), st.floats(0.3, 3), st.floats(0.3, 3))
    def test_bessel(self, mu, z, y):
        f = fn.besselj(mu, z).realization
        exact = z ** mu / 2 ** (mu + 1) * y ** (-2 * mu - 2) * math.exp(-z * z / (4 * y * y))
        assert within(tr.l2_transform(f, y).value, exact, 1e-8)

    def test_point_must_be_positive(self):
        with pytest.raises(DomainError):
            tr.l2_transform(fn.one().realization, 0.0)


class TestLaplace:
    @given(st.floats(0.2, 5))
    def test_constant(self, y):
        assert within(tr.laplace_transform(fn.one().realization, y).value, 1 / y, 1e-9)

    @given(st.floats(-0.5, 2), st.floats(0.3, 2), st.floats(0.3, 2))
    def test_power_exponential(self, mu, a, u):
        f = plain(lambda x: x ** mu * np.exp(-a * a * x), GrowthClass.EXPONENTIAL, decay_scale=1 / (a * a))
        exact = gamma(mu + 1) * (u * u + a * a) ** (-mu - 1)
        assert within(tr.laplace_transform(f, u * u).value, exact, 1e-8)


CATALOG_SMOOTH = [fn.gauss(), fn.power_gauss(1.0, 2.0), fn.power_gauss(0.25, 1.0), fn.one(), fn.power(0.7),
                  fn.e1_inverse_square(1.0)]


@pytest.mark.parametrize("f", CATALOG_SMOOTH + [fn.besselj(0, 1), fn.besselj(1.5, 2)], ids=lambda f: f.label())
@pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
def test_l2_is_half_laplace_at_square_root(f, y):
    base = f.realization
    root = plain(lambda x: base(np.sqrt(x)))
    left = tr.l2_transform(base, y).value
    right = 0.5 * tr.laplace_transform(root, y * y).value
    assert within(left, right, 1e-7)


@pytest.mark.parametrize("f", CATALOG_SMOOTH + [fn.besselj(0, 1)], ids=lambda f: f.label())
@pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
def test_laplace_is_twice_l2_of_square(f, y):
    base = f.realization
    square = plain(lambda x: base(x * x))
    left = tr.laplace_transform(base, y).value
    right = 2 * tr.l2_transform(square, math.sqrt(y)).value
    assert within(left, right, 1e-7)


class TestWidder:
    def test_bessel(self):
        result = tr.widder_potential(fn.besselj(0, 1).realization, 1.0)
        assert within(result.value, 0.4210244382407083, 1e-9)

    @given(st.floats(0.2, 3))
    def test_gaussian(self, y):
        exact = 0.5 * exp_integral_e1(y * y) * math.exp(y * y)
        assert within(tr.widder_potential(fn.gauss().realization, y).value, exact, 1e-9)

    @pytest.mark.parametrize("f", [fn.gauss(), fn.power_gauss(1, 2), fn.besselj(0.5, 1), fn.cos_over_x(1)],
                             ids=lambda f: f.label())
    @pytest.mark.parametrize("y", [0.5, 1.5])
    def test_is_order_one(self, f, y):
        w = tr.widder_potential(f.realization, y)
        p = tr.p_nu2_transform(f.realization, 1.0, y)
        assert abs(w.value - p.value) <= w.error_estimate + p.error_estimate + 1e-15 * abs(w.value)


class TestGlasser:
    @given(st.floats(-0.5, 0.4), st.floats(0.4, 2.5), st.floats(0.4, 2.5))
    def test_bessel(self, mu, z, y):
        # integrand x^(mu+1) J_mu(z x): the order-1/2 case of the P_(nu,2) Bessel formula applied to f/x
        f = RealFunction.oscillatory(lambda x: np.asarray(x, float) ** (mu + 1), mu, z, decay_power=mu + 0.5)
        exact = math.sqrt(2 / (math.pi * z)) * y ** (mu + 0.5) * float(bessel_k(mu + 0.5, z * y))
        assert within(tr.glasser_transform(f, y).value, exact, 1e-7)

    def test_unit_instance(self):
        f = RealFunction.oscillatory(lambda x: np.asarray(x, float), 0.0, 1.0)
        assert within(tr.glasser_transform(f, 1.0).value, math.exp(-1), 1e-8)

    @pytest.mark.filterwarnings("ignore:overflow encountered:RuntimeWarning")
    def test_inverse_power_bessel_diverges_at_zero(self):
        f = RealFunction.oscillatory(lambda x: 1 / np.asarray(x, float), 0.0, 1.0)
        with pytest.raises(EvalError):
            tr.glasser_transform(f, 1.0)

    @pytest.mark.parametrize("f", [fn.gauss(), fn.power_gauss(1, 2), fn.power_gauss(0.25, 1)], ids=lambda f: f.label())
    @pytest.mark.parametrize("y", [0.5, 2.0])
    def test_is_half_order_of_f_over_x(self, f, y):
        base = f.realization
        over_x = plain(lambda x: base(x) / x, base.growth, decay_scale=base.decay_scale)
        g = tr.glasser_transform(base, y)
        p = tr.p_nu2_transform(over_x, 0.5, y)
        assert abs(g.value - p.value) <= g.error_estimate + p.error_estimate + 1e-15 * abs(g.value)

    @pytest.mark.parametrize("f", [fn.one(), fn.e1_inverse_square(1)], ids=lambda f: f.label())
    def test_non_decaying_input(self, f):
        with pytest.raises(TailError):
            tr.glasser_transform(f.realization, 1.0)


class TestPnu2:
    @given(st.floats(0.2, 2), st.floats(0.1, 2), st.floats(0.3, 3))
    def test_power(self, mu, gap, y):
        nu = mu + gap
        exact = 0.5 * y ** (2 * mu - 2 * nu) * beta(mu, nu - mu)
        assert within(tr.p_nu2_transform(fn.power(mu).realization, nu, y).value, exact, 1e-7)

    @given(st.floats(-0.5, 1.5), st.floats(0.4, 1.5), st.floats(0.4, 2.5), st.floats(0.4, 2.5))
    def test_bessel(self, mu, extra, z, y):
        nu = max(mu, 0) + 0.6 + extra
        exact = rgamma(nu) * (z / 2) ** (nu - 1) * y ** (mu - nu + 1) * float(bessel_k(nu - mu - 1, z * y))
        assert within(tr.p_nu2_transform(fn.besselj(mu, z).realization, nu, y).value, exact, 1e-6)

    @given(st.floats(0.2, 3), st.floats(0.4, 2.5), st.floats(0.4, 2.5))
    def test_cosine(self, nu, a, y):
        # mpmath quadosc places the power factor as (a / (2 y)), e.g. 0.1062920828969 at (1, 1, 2)
        exact = SQRT_PI * rgamma(nu) * (a / (2 * y)) ** (nu - 0.5) * float(bessel_k(nu - 0.5, a * y))
        assert within(tr.p_nu2_transform(fn.cos_over_x(a).realization, nu, y).value, exact, 1e-6)

    @pytest.mark.parametrize("order", [0.0, -1.0])
    def test_order_must_be_positive(self, order):
        with pytest.raises(DomainError):
            tr.p_nu2_transform(fn.gauss().realization, order, 1.0)


class TestHankel:
    @given(st.floats(-0.5, 2.5), st.floats(0.3, 4))
    def test_gaussian_moment(self, order, y):
        # int x^(order+1) exp(-x^2) J_order(x y) dx = y^order exp(-y^2/4) / 2^(order+1)
        f = plain(lambda x: x ** (order + 0.5) * np.exp(-x * x), GrowthClass.GAUSSIAN)
        exact = math.sqrt(y) * y ** order * math.exp(-y * y / 4) / 2 ** (order + 1)
        assert within(tr.hankel_transform(f, order, y).value, exact, 1e-7)

    def test_minus_half_order_is_cosine_transform(self):
        f = fn.gauss().realization
        for y in (0.5, 1.0, 3.0):
            exact = math.sqrt(2 / math.pi) * SQRT_PI / 2 * math.exp(-y * y / 4)
            assert within(tr.hankel_transform(f, -0.5, y).value, exact, 1e-8)

    def test_compact_support_shrinks_to_zero(self):
        values = []
        for width in (0.1, 0.01, 0.001):
            f = plain(lambda x, w=width: np.where(x < w, 1.0, 0.0), GrowthClass.BOUNDED)
            values.append(abs(tr.hankel_transform(f, 0.0, 1.0).value))
        assert values[0] > values[1] > values[2]
        assert values[2] <= 1e-4

    def test_order_domain(self):
        with pytest.raises(DomainError):
            tr.hankel_transform(fn.gauss().realization, -1.0, 1.0)


class TestK:
    @given(st.floats(-0.5, 1.0), st.floats(0.5, 1.2), st.floats(0.4, 2.5), st.floats(0.4, 2.5))
    def test_cosine(self, mu, gap, a, z):
        nu = mu + gap  # nu - mu < 3/2 keeps the integrand integrable at 0
        order = nu - mu - 1
        f = plain(lambda x: x ** (mu - nu + 0.5) * np.cos(a * x), GrowthClass.BOUNDED)
        s = mu - nu + 1.5
        exact = 2 ** (mu - nu) * SQRT_PI / z ** (nu - mu - 1.5) * gamma(s) / (z * z + a * a) ** s
        assert within(tr.k_transform(f, order, z).value, exact, 1e-7)

    def test_zero_function(self):
        assert tr.k_transform(tr.ZERO_FUNCTION, 0.3, 1.0).value == 0.0


class TestIterated:
    @pytest.mark.parametrize("g", [fn.gauss(), fn.power_gauss(1, 2)], ids=lambda g: g.label())
    @pytest.mark.parametrize("nu", [0.75, 1.0, 2.5])
    @pytest.mark.parametrize("y", [0.5, 2.0])
    def test_matches_numeric_pnu2(self, g, nu, y):
        nested = tr.iterated_l2(g.realization, nu, y)
        direct = tr.p_nu2_transform(g.realization, nu, y)
        assert nested.converged and direct.converged
        assert rel_err(nested.value, gamma(nu) / 2 * direct.value) <= 1e-6

    @pytest.mark.parametrize("g", [fn.gauss(), fn.power_gauss(0.25, 1)], ids=lambda g: g.label())
    def test_order_one_is_widder(self, g):
        for y in (0.5, 1.0):
            nested = tr.iterated_l2(g.realization, 1.0, y).value
            assert within(nested, 0.5 * tr.widder_potential(g.realization, y).value, 1e-6)

    def test_zero(self):
        assert tr.iterated_l2(tr.ZERO_FUNCTION, 1.5, 1.0).value == 0.0

    def test_budget_is_enforced(self):
        from dataclasses import replace
        from ptrans.errors import NonConvergenceError
        with pytest.raises(NonConvergenceError):
            tr.iterated_l2(fn.gauss().realization, 1.5, 1.0, replace(tr.DEFAULT_CONFIG, max_evals=500))


def test_request_registry():
    assert set(tr.TRANSFORMS) == {"l2", "laplace", "widder", "glasser", "p_nu2", "hankel", "k", "iterated_l2"}
    request = tr.TransformRequest("p_nu2", fn.besselj(0, 1).realization, 1.0, 1.0)
    assert within(tr.evaluate_transform(request).value, 0.4210244382407083, 1e-9)
    with pytest.raises(DomainError):
        tr.evaluate_transform(tr.TransformRequest("p_nu2", fn.gauss().realization, 1.0))
    with pytest.raises(DomainError):
        tr.evaluate_transform(tr.TransformRequest("mellin", fn.gauss().realization, 1.0))


def test_routing_uses_declared_class():
    f = fn.besselj(0, 1)
    assert tr.widder_potential(f.realization, 1.0).strategy.value == "oscillatory-accelerated"
    assert tr.widder_potential(fn.gauss().realization, 1.0).strategy.value != "oscillatory-accelerated"
