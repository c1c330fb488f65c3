import math

import numpy as np
from django.test import SimpleTestCase

from core.domain import CornerData, HolderExponents, Rectangle, RuleParams
from core.exceptions import InvalidExponents, NegativeCorner
from cubature.kernels import lambda_factor
from cubature.rule import rule_breakdown
from exprmodel.corpus import SMOOTH_CORPUS
from exprmodel.function_model import FunctionModel
from oracle.quadrature import integrate_2d
from verify.convexity import is_coordinate_convex

from .estimates import (
    BoundReport,
    Theorem,
    all_bounds,
    best_bound,
    bound_t5,
    bound_t6,
    bound_t6_relaxed,
    bound_t7,
    corner_values,
    holder_coefficient,
    kernel_power_coefficient,
)

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)
SIMPSON = RuleParams(1 / 3)
TRAPEZOID = RuleParams.trapezoid()
SQUARE_PRODUCT = FunctionModel.from_text('x^2*y^2')


class LambdaFactorTests(SimpleTestCase):

    def test_values(self):
        self.assertEqual(lambda_factor(RuleParams.midpoint()), 1.0)
        self.assertEqual(lambda_factor(TRAPEZOID), 1.0)
        self.assertAlmostEqual(lambda_factor(SIMPSON), 25 / 81, places=15)
        self.assertEqual(lambda_factor(RuleParams(0.5)), 0.25)

    def test_symmetric_in_lambda(self):
        for lam in (0.125, 0.25, 0.375):
            self.assertEqual(lambda_factor(RuleParams(lam)), lambda_factor(RuleParams(1 - lam)))


class BoundFormulaTests(SimpleTestCase):

    def test_t5_square_product_trapezoid(self):
        corners = corner_values(SQUARE_PRODUCT, UNIT)
        self.assertEqual(tuple(corners), (0.0, 0.0, 0.0, 4.0))
        report = bound_t5(corners, UNIT, TRAPEZOID)
        self.assertEqual(report.theorem, Theorem.T5)
        self.assertAlmostEqual(report.value, 1 / 16, places=15)
        self.assertIsNone(report.p)
        self.assertIsNone(report.q)

    def test_t5_is_linear_in_corner_sum(self):
        corners = CornerData(1.0, 2.0, 3.0, 4.0)
        self.assertAlmostEqual(bound_t5(corners, UNIT, SIMPSON).value, 25 * 10 / 5184, places=15)
        midpoint = bound_t5(corners, UNIT, RuleParams.midpoint()).value
        self.assertAlmostEqual(midpoint, 10 / 64, delta=1e-14 * 10 / 64)

    def test_t6_coefficient(self):
        he = HolderExponents.from_q(2.0)
        self.assertEqual((he.p, he.q), (2.0, 2.0))
        ones = CornerData(1.0, 1.0, 1.0, 1.0)
        self.assertAlmostEqual(bound_t6(ones, UNIT, SIMPSON, he).value, 25 / 972, places=15)
        report = bound_t6(corner_values(SQUARE_PRODUCT, UNIT, 2.0), UNIT, TRAPEZOID, he)
        self.assertAlmostEqual(report.value, 1 / 6, places=14)
        self.assertEqual((report.p, report.q), (2.0, 2.0))

    def test_relaxed_coefficient(self):
        ones = CornerData(1.0, 1.0, 1.0, 1.0)
        report = bound_t6_relaxed(ones, UNIT, SIMPSON, 3.0)
        self.assertAlmostEqual(report.value, 25 / 324, places=15)
        self.assertAlmostEqual(report.p, 1.5, places=15)

    def test_t7_reduces_to_t5_at_q_one(self):
        corners = corner_values(FunctionModel.from_text('exp(x*y)'), UNIT)
        self.assertAlmostEqual(bound_t7(corners, UNIT, SIMPSON, 1.0).value,
                               bound_t5(corners, UNIT, SIMPSON).value, places=15)

    def test_t7_values(self):
        report = bound_t7(corner_values(SQUARE_PRODUCT, UNIT, 2.0), UNIT, TRAPEZOID, 2.0)
        self.assertAlmostEqual(report.value, 1 / 8, places=15)
        ones = CornerData(1.0, 1.0, 1.0, 1.0)
        self.assertAlmostEqual(bound_t7(ones, UNIT, SIMPSON, 2.5).value, 25 / 1296, places=15)

    def test_scaling_with_area(self):
        corners = CornerData(0.5, 1.0, 2.0, 0.25)
        big = Rectangle(0.0, 2.0, 0.0, 4.0)
        for bound in (
            lambda r: bound_t5(corners, r, SIMPSON),
            lambda r: bound_t7(corners, r, SIMPSON, 2.0),
            lambda r: bound_t6(corners, r, SIMPSON, HolderExponents.from_q(2.0)),
        ):
            self.assertEqual(bound(big).value, 8 * bound(UNIT).value)

    def test_errors(self):
        with self.assertRaises(NegativeCorner):
            CornerData(-1.0, 0.0, 0.0, 0.0)
        with self.assertRaises(InvalidExponents):
            bound_t7(CornerData(1.0, 1.0, 1.0, 1.0), UNIT, SIMPSON, 0.5)
        with self.assertRaises(InvalidExponents):
            HolderExponents.from_q(1.0)
        with self.assertRaises(InvalidExponents):
            HolderExponents(2.0, 3.0)

    def test_report_invariants(self):
        with self.assertRaises(ValueError):
            BoundReport(Theorem.T5, 1.0, 0.5, q=2.0)
        with self.assertRaises(ValueError):
            BoundReport(Theorem.T6, 1.0, 0.5, q=2.0)
        with self.assertRaises(ValueError):
            BoundReport(Theorem.T7, -1.0, 0.5, q=2.0)


class CoefficientTests(SimpleTestCase):

    def test_holder_coefficient_sandwich(self):
        rng = np.random.default_rng(7)
        for p in np.exp(rng.uniform(1e-6, math.log(50.0), 200)):
            coefficient = holder_coefficient(p)
            self.assertGreater(coefficient, 1 / 16, p)
            self.assertLess(coefficient, 1 / 4, p)

    def test_exact_kernel_constant_is_below_the_holder_route(self):
        for lam in (0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0):
            for p in (1.5, 2.0, 3.0, 10.0):
                self.assertLessEqual(kernel_power_coefficient(RuleParams(lam), p),
                                     holder_coefficient(p) * (1 + 1e-15))

    def test_t7_never_exceeds_t6(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            corners = CornerData(*rng.uniform(0.0, 5.0, 4))
            q = float(rng.uniform(1.01, 5.0))
            params = RuleParams(float(rng.uniform()))
            t6 = bound_t6(corners, UNIT, params, HolderExponents.from_q(q)).value
            t7 = bound_t7(corners, UNIT, params, q).value
            self.assertLessEqual(t7, t6)


class SelectionTests(SimpleTestCase):

    def test_order_of_all_bounds(self):
        reports = all_bounds(SQUARE_PRODUCT, UNIT, TRAPEZOID, [1.0, 2.0])
        self.assertEqual(
            [(r.theorem.value, r.q) for r in reports],
            [('T5', None), ('T7', 1.0), ('T7', 2.0), ('T6', 2.0), ('T6_relaxed', 2.0)],
        )
        self.assertEqual(len(all_bounds(SQUARE_PRODUCT, UNIT, TRAPEZOID, [2.0], relaxed=False)), 3)

    def test_best_is_t5_for_square_product(self):
        best = best_bound(SQUARE_PRODUCT, UNIT, TRAPEZOID, [2.0])
        self.assertEqual(best.theorem, Theorem.T5)
        self.assertAlmostEqual(best.value, 0.0625, places=15)

    def test_empty_grid_leaves_t5(self):
        self.assertEqual(best_bound(SQUARE_PRODUCT, UNIT, SIMPSON, []).theorem, Theorem.T5)

    def test_ties_prefer_t5(self):
        # constant fxy makes T5 and every T7 equal
        best = best_bound(FunctionModel.from_text('x*y'), UNIT, SIMPSON, [2.0, 3.0])
        self.assertEqual(best.theorem, Theorem.T5)

    def test_separable_function_has_zero_bounds(self):
        f = FunctionModel.from_text('sin(x) + sin(y)')
        r = Rectangle(0.0, math.pi, 0.0, math.pi)
        self.assertTrue(all(report.value == 0.0 for report in all_bounds(f, r, SIMPSON, [1.0, 2.0])))


class SoundnessTests(SimpleTestCase):
    rectangles = [
        UNIT,
        Rectangle(0.0, 1.0, 0.0, 2.0),
        Rectangle(-1.0, 1.0, -1.0, 0.5),
        Rectangle(1.0, 2.0, 2.0, 3.0),
        Rectangle(-0.5, 0.25, -2.0, -1.0),
    ]
    lambdas = [0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0]
    q_grid = [1.0, 1.5, 2.0, 3.0]

    def test_bounds_hold_on_corpus(self):
        checked = 0
        for text in SMOOTH_CORPUS:
            f = FunctionModel.from_text(text)
            for r in self.rectangles:
                exact = integrate_2d(f, r)
                average = exact.value / r.area
                convex = {q: is_coordinate_convex(f.abs_fxy_power(q), r).passed for q in self.q_grid}
                for lam in self.lambdas:
                    params = RuleParams(lam)
                    breakdown = rule_breakdown(f, r, params)
                    actual = abs(average - breakdown.average)
                    slack = (10 * breakdown.line_error + 10 * exact.err_est / r.area
                             + 1e-12 * max(1.0, abs(average)))
                    for report in all_bounds(f, r, params, self.q_grid):
                        if not convex[1.0 if report.q is None else report.q]:
                            continue
                        checked += 1
                        self.assertLessEqual(actual, report.value + slack,
                                             (text, r, lam, report.theorem.value, report.q))
        self.assertGreater(checked, 1000)
