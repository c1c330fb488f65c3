import math

import numpy as np
from django.test import SimpleTestCase

from core.domain import Rectangle, RuleParams
from core.exceptions import DomainError, OutOfDomain
from exprmodel.corpus import SMOOTH_CORPUS
from exprmodel.function_model import FunctionModel
from oracle.quadrature import QuadConfig, integrate_1d, integrate_2d

from .kernels import abs_kernel_integral, kernel_abs_mass, kernel_K, kernel_M, lambda_factor
from .rule import (
    approximate_integral, identity_check, identity_residual, line_averages, line_term,
    point_term, rule_breakdown,
)

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)
RECTANGLES = [
    UNIT,
    Rectangle(0.0, 1.0, 0.0, 2.0),
    Rectangle(-1.0, 1.0, 0.0, 0.5),
    Rectangle(1.0, 2.0, 2.0, 3.0),
    Rectangle(-0.5, 0.25, -2.0, -1.0),
]
LAMBDAS = [0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0]


class KernelTests(SimpleTestCase):

    def test_values(self):
        r = Rectangle(2.0, 6.0, -1.0, 1.0)
        for lam in (0.0, 0.4, 1.0):
            self.assertAlmostEqual(kernel_K(2.0, r, RuleParams(lam)), -lam * 4 / 2)
            self.assertAlmostEqual(kernel_M(1.0, r, RuleParams(lam)), lam * 2 / 2)
        self.assertEqual(kernel_K(4.0, r, RuleParams.midpoint()), 2.0)
        self.assertEqual(kernel_K(0.25, UNIT, RuleParams.trapezoid()), -0.25)
        self.assertEqual(kernel_M(0.5, UNIT, RuleParams.trapezoid()), 0.0)
        self.assertEqual(kernel_M(1.5, Rectangle(0.0, 1.0, 0.0, 2.0), RuleParams(0.5)), 0.0)

    def test_vectorised(self):
        xs = np.array([0.0, 0.5, 1.0])
        np.testing.assert_allclose(kernel_K(xs, UNIT, RuleParams(0.0)), [0.0, 0.5, 0.0])

    def test_out_of_domain(self):
        with self.assertRaises(OutOfDomain):
            kernel_K(1.5, UNIT, RuleParams(0.5))
        with self.assertRaises(OutOfDomain):
            kernel_M(np.array([0.5, -0.1]), UNIT, RuleParams(0.5))

    def test_antisymmetry_and_zero_mean(self):
        r = Rectangle(-1.0, 3.0, 0.0, 1.0)
        for lam in LAMBDAS:
            params = RuleParams(lam)
            for u in np.linspace(0.1, 2.0, 7):
                self.assertAlmostEqual(
                    kernel_K(r.x_mid + u, r, params), -kernel_K(r.x_mid - u, r, params), places=13
                )
            left, _ = integrate_1d(lambda x: kernel_K(x, r, params), r.a, r.x_mid)
            right, _ = integrate_1d(lambda x: kernel_K(x, r, params), r.x_mid, r.b)
            self.assertAlmostEqual(left + right, 0.0, delta=1e-12)

    def test_abs_mass_constants(self):
        self.assertAlmostEqual(kernel_abs_mass(UNIT, RuleParams(0.0)), 1 / 16, places=15)
        self.assertAlmostEqual(kernel_abs_mass(UNIT, RuleParams(0.5)), 1 / 64, places=15)
        self.assertAlmostEqual(kernel_abs_mass(UNIT, RuleParams.simpson()), 25 / 1296, places=15)
        self.assertAlmostEqual(lambda_factor(RuleParams.simpson()), 25 / 81, places=15)

    def test_abs_integral_closed_form(self):
        cfg = QuadConfig(abs_tol=1e-13)
        r = Rectangle(0.0, 2.0, 0.0, 1.0)
        for lam in (0.0, 0.3, 1 / 3, 0.75, 1.0):
            params = RuleParams(lam)
            numeric = 0.0
            # integrate between the kernel's breakpoints and roots
            cuts = sorted({r.a, r.a + lam * r.width / 2, r.x_mid, r.b - lam * r.width / 2, r.b})
            for lo, hi in zip(cuts, cuts[1:]):
                numeric += integrate_1d(lambda x: np.abs(kernel_K(x, r, params)), lo, hi, cfg).value
            self.assertAlmostEqual(numeric, abs_kernel_integral(r.width, params), delta=1e-12)


class RuleTermTests(SimpleTestCase):

    def test_point_term_specialisations(self):
        f = FunctionModel.from_text('x^2*y^2 + 3*x')
        self.assertEqual(point_term(f, UNIT, RuleParams(0.0)), f(0.5, 0.5))
        corners = sum(f(x, y) for x, y in UNIT.corners()) / 4
        self.assertAlmostEqual(point_term(f, UNIT, RuleParams(1.0)), corners, places=15)
        self.assertEqual(point_term(FunctionModel.from_text('x^2*y^2'), UNIT, RuleParams(1.0)), 0.25)

    def test_line_term_examples(self):
        self.assertAlmostEqual(
            line_term(FunctionModel.from_text('x^2 + y^2'), UNIT, RuleParams(0.0)), 7 / 6, places=13
        )
        self.assertAlmostEqual(
            line_term(FunctionModel.from_text('x^2*y^2'), UNIT, RuleParams(1.0)), 1 / 3, places=13
        )

    def test_weight_consistency(self):
        one = FunctionModel.from_text('1')
        for r in RECTANGLES:
            for lam in LAMBDAS:
                params = RuleParams(lam)
                self.assertAlmostEqual(point_term(one, r, params), 1.0, places=14)
                self.assertAlmostEqual(line_term(one, r, params), 2.0, places=13)
                self.assertAlmostEqual(approximate_integral(one, r, params), 1.0, places=13)

    def test_nine_nodes_always_recorded(self):
        f = FunctionModel.from_text('exp(x*y)')
        for lam in (0.0, 1.0):
            breakdown = rule_breakdown(f, UNIT, RuleParams(lam))
            self.assertEqual(len(breakdown.nodes), 9)
            self.assertAlmostEqual(math.fsum(n.weight for n in breakdown.nodes), 1.0, places=15)

    def test_trapezoid_type_weights(self):
        breakdown = rule_breakdown(FunctionModel.from_text('x*y'), UNIT, RuleParams.trapezoid())
        weights = [n.weight for n in breakdown.nodes]
        self.assertEqual(weights, [0.0, 0.25, 0.25, 0.25, 0.25, 0.0, 0.0, 0.0, 0.0])
        lines = breakdown.lines
        expected = 0.5 * (lines.bottom + lines.top) + 0.5 * (lines.left + lines.right)
        self.assertAlmostEqual(breakdown.line_term, expected, places=15)

    def test_midpoint_type_weights(self):
        breakdown = rule_breakdown(FunctionModel.from_text('x*y'), UNIT, RuleParams.midpoint())
        self.assertEqual([n.weight for n in breakdown.nodes], [1.0] + [0.0] * 8)
        self.assertAlmostEqual(breakdown.line_term, breakdown.lines.mid_x + breakdown.lines.mid_y, places=15)

    def test_line_averages(self):
        lines = line_averages(FunctionModel.from_text('x + 2*y'), Rectangle(0.0, 2.0, 0.0, 1.0))
        self.assertAlmostEqual(lines.mid_y, 1 + 1, places=13)
        self.assertAlmostEqual(lines.mid_x, 1 + 1, places=13)
        self.assertAlmostEqual(lines.bottom, 1.0, places=13)
        self.assertAlmostEqual(lines.top, 3.0, places=13)
        self.assertAlmostEqual(lines.left, 1.0, places=13)
        self.assertAlmostEqual(lines.right, 3.0, places=13)

    def test_domain_error_propagates(self):
        with self.assertRaises(DomainError):
            approximate_integral(FunctionModel.from_text('log(x)'), UNIT, RuleParams(1.0))


class ApproximateIntegralTests(SimpleTestCase):

    def test_bilinear_exact_for_every_lambda(self):
        f = FunctionModel.from_text('x*y')
        for lam in LAMBDAS:
            self.assertAlmostEqual(approximate_integral(f, UNIT, RuleParams(lam)), 0.25, places=13)

    def test_trapezoid_type_on_square_product(self):
        f = FunctionModel.from_text('x^2*y^2')
        q = approximate_integral(f, UNIT, RuleParams(1.0))
        self.assertAlmostEqual(q, 1 / 12, places=13)
        self.assertAlmostEqual(1 / 9 - q, 1 / 36, places=13)

    def test_exactness_class(self):
        rng = np.random.default_rng(31)
        gs = ['sin(x)', 'exp(x)', 'x^3', 'cos(2*x)', 'x^5 - x', 'exp(-x)*3']
        hs = ['cos(y)', 'y^4', 'exp(y/2)', 'sin(3*y)', '2*y^2 - y']
        for _ in range(10):
            g, h = gs[rng.integers(len(gs))], hs[rng.integers(len(hs))]
            c = float(rng.uniform(-3, 3))
            f = FunctionModel.from_text(f'{g} + {h} + {c!r}*x*y')
            r = RECTANGLES[rng.integers(len(RECTANGLES))]
            params = RuleParams(float(rng.uniform(0, 1)))
            self.assertLessEqual(abs(identity_residual(f, r, params)), 1e-12, f.source_text)
            exact, _ = integrate_2d(f, r)
            self.assertAlmostEqual(approximate_integral(f, r, params), exact / r.area, delta=1e-12)


class IdentityTests(SimpleTestCase):

    def test_square_product(self):
        f = FunctionModel.from_text('x^2*y^2')
        for lam in (0.0, 1 / 3, 1.0):
            self.assertLessEqual(abs(identity_residual(f, UNIT, RuleParams(lam))), 1e-10)

    def test_exponential(self):
        f = FunctionModel.from_text('exp(x + y)')
        residual = identity_residual(f, Rectangle(0.0, 1.0, 0.0, 2.0), RuleParams(0.7))
        self.assertLessEqual(abs(residual), 1e-8)

    def test_zero_mixed_partial(self):
        f = FunctionModel.from_text('x + y')
        for r in RECTANGLES:
            self.assertLessEqual(abs(identity_residual(f, r, RuleParams(0.4))), 1e-12)

    def test_sides_match_known_error(self):
        check = identity_check(FunctionModel.from_text('x^2*y^2'), UNIT, RuleParams(1.0))
        self.assertAlmostEqual(check.rhs, 1 / 36, places=13)
        self.assertAlmostEqual(check.lhs, 1 / 36, places=12)

    def test_corpus(self):
        worst = 0.0
        for text in SMOOTH_CORPUS:
            f = FunctionModel.from_text(text)
            for r in RECTANGLES:
                for lam in LAMBDAS:
                    residual = abs(identity_residual(f, r, RuleParams(lam)))
                    worst = max(worst, residual)
                    self.assertLessEqual(residual, 1e-8, (text, r, lam))
        self.assertLessEqual(worst, 1e-8)
