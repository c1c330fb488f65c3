import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from core.domain import Rectangle, RuleParams
from core.exceptions import InvalidParameter, ToleranceNotMet
from cubature.kernels import kernel_K, kernel_M
from exprmodel.function_model import FunctionModel
from exprmodel.parser import parse

from .quadrature import (
    QuadConfig, gauss_legendre, integrate_1d, integrate_2d, kernel_weighted_estimate,
    kernel_weighted_integral,
)

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)


class QuadConfigTests(SimpleTestCase):

    def test_defaults_valid(self):
        cfg = QuadConfig()
        self.assertEqual(cfg.nodes_per_panel, 16)

    def test_rejects_out_of_range(self):
        bad = [
            dict(abs_tol=1e-16),
            dict(rel_tol=0.0),
            dict(max_depth=0),
            dict(max_depth=61),
            dict(nodes_per_panel=12),
        ]
        for kwargs in bad:
            with self.assertRaises(InvalidParameter, msg=kwargs):
                QuadConfig(**kwargs)

    @override_settings(CUBATURE={'QUAD_NODES': 32, 'QUAD_ABS_TOL': 1e-10})
    def test_from_settings(self):
        cfg = QuadConfig.from_settings()
        self.assertEqual(cfg.nodes_per_panel, 32)
        self.assertEqual(cfg.abs_tol, 1e-10)
        self.assertEqual(cfg.rel_tol, 1e-12)

    def test_tightened_respects_floor(self):
        cfg = QuadConfig(abs_tol=1e-12).tightened(1000)
        self.assertEqual(cfg.abs_tol, 1e-14)
        self.assertAlmostEqual(cfg.rel_tol, 1e-15)


class Integrate1DTests(SimpleTestCase):

    def test_polynomial(self):
        value, err = integrate_1d(lambda x: x ** 2, 0.0, 1.0)
        self.assertAlmostEqual(value, 1 / 3, delta=1e-12)
        self.assertLessEqual(err, 1e-12)

    def test_constant(self):
        value, _ = integrate_1d(np.ones_like, 0.0, 1.0)
        self.assertAlmostEqual(value, 1.0, places=15)

    def test_exponential(self):
        value, _ = integrate_1d(np.exp, 0.0, 1.0)
        self.assertAlmostEqual(value, math.e - 1, delta=1e-12)

    def test_polynomial_exactness_per_panel(self):
        for n in (8, 16, 32):
            nodes, weights = gauss_legendre(n)
            degree = 2 * n - 1
            self.assertAlmostEqual(float(weights @ nodes ** (degree - 1)), 2 / degree, places=13)

    def test_oscillatory_needs_refinement(self):
        value, err = integrate_1d(lambda x: np.sin(40 * x), 0.0, 3.0, QuadConfig(nodes_per_panel=8))
        self.assertAlmostEqual(value, (1 - math.cos(120)) / 40, delta=1e-11)
        self.assertLessEqual(err, 1e-11)

    def test_tolerance_not_met(self):
        cfg = QuadConfig(max_depth=2)
        with self.assertRaises(ToleranceNotMet) as ctx:
            integrate_1d(lambda x: np.sqrt(np.abs(x)), -1.0, 1.0, cfg)
        self.assertAlmostEqual(ctx.exception.value, 4 / 3, places=3)
        self.assertGreater(ctx.exception.err_est, 1e-12)

    def test_empty_interval_rejected(self):
        with self.assertRaises(InvalidParameter):
            integrate_1d(np.exp, 1.0, 1.0)


class Integrate2DTests(SimpleTestCase):

    def test_separable_polynomial(self):
        value, _ = integrate_2d(FunctionModel.from_text('x*y'), UNIT)
        self.assertAlmostEqual(value, 0.25, delta=1e-12)

    def test_sum_of_squares(self):
        value, _ = integrate_2d(FunctionModel.from_text('x^2 + y^2'), UNIT)
        self.assertAlmostEqual(value, 2 / 3, delta=1e-12)

    def test_area(self):
        value, _ = integrate_2d(FunctionModel.from_text('1'), Rectangle(1.0, 3.0, 2.0, 5.0))
        self.assertAlmostEqual(value, 6.0, places=13)

    def test_accepts_expressions_and_callables(self):
        r = Rectangle(0.0, 1.0, 0.0, 2.0)
        from_expr, _ = integrate_2d(parse('exp(x + y)'), r)
        from_callable, _ = integrate_2d(lambda X, Y: np.exp(X + Y), r)
        exact = (math.e - 1) * (math.e ** 2 - 1)
        self.assertAlmostEqual(from_expr, exact, delta=1e-11)
        self.assertEqual(from_expr, from_callable)

    def test_monotone_refinement(self):
        r = Rectangle(0.0, 2.0, -1.0, 1.0)
        exact = (1 - math.cos(12)) / 6 * (2 * math.sin(5) / 5)
        previous = math.inf
        for abs_tol in (1e-4, 5e-5, 2.5e-5, 1.25e-5):
            cfg = QuadConfig(abs_tol=abs_tol, rel_tol=1e-14, nodes_per_panel=8)
            value, _ = integrate_2d(lambda X, Y: np.sin(6 * X) * np.cos(5 * Y), r, cfg)
            error = abs(value - exact)
            self.assertLessEqual(error, previous + 1e-14)
            previous = error

    def test_depth_limit_reports_reason(self):
        with self.assertRaises(ToleranceNotMet) as ctx:
            integrate_2d(lambda X, Y: np.sqrt(np.abs(X - 1 / 3)), UNIT, QuadConfig(max_depth=2))
        self.assertEqual(ctx.exception.reason, 'maximum depth reached')
        self.assertIn('maximum depth reached', str(ctx.exception))


class KernelWeightedTests(SimpleTestCase):

    def test_constant_mixed_partial_vanishes(self):
        for lam in (0.0, 0.3, 1.0):
            value = kernel_weighted_integral(parse('1'), Rectangle(-1.0, 2.0, 0.5, 4.0), RuleParams(lam))
            self.assertAlmostEqual(value, 0.0, delta=1e-13)

    def test_trapezoid_type(self):
        value = kernel_weighted_integral(parse('4*x*y'), UNIT, RuleParams.trapezoid())
        self.assertAlmostEqual(value, 1 / 36, delta=1e-13)

    def test_midpoint_type(self):
        # 1/16 - 1/6 + 1/9 from the point, line and average terms
        value = kernel_weighted_integral(parse('4*x*y'), UNIT, RuleParams.midpoint())
        self.assertAlmostEqual(value, 1 / 144, delta=1e-13)

    def test_split_matches_brute_force(self):
        r = Rectangle(0.0, 1.0, 0.0, 2.0)
        params = RuleParams(0.3)
        model = FunctionModel.from_text('exp(x + y)')

        def integrand(X, Y):
            return kernel_K(X, r, params) * kernel_M(Y, r, params) * model.evaluate_fxy(X, Y)

        brute, _ = integrate_2d(integrand, r)
        split = kernel_weighted_estimate(model.fxy, r, params)
        self.assertAlmostEqual(split.value, brute / r.area, delta=1e-9)
        self.assertLess(split.err_est, 1e-10)

    def test_inner_error_dominated_surface(self):
        # at lam = 1 both kernels are t - 3/2 on [0, 3], so the integral factorises
        r = Rectangle(0.0, 3.0, 0.0, 3.0)
        fxy = FunctionModel.from_text('sin(40*x)*sin(40*y)').fxy
        result = kernel_weighted_estimate(fxy, r, RuleParams(1.0))
        one_axis = 1.5 * math.sin(120) - (1 - math.cos(120)) / 40
        self.assertAlmostEqual(result.value, one_axis ** 2 / 9, delta=1e-9)
        self.assertLess(result.err_est, 1e-9)
