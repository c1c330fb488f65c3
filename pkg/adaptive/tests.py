import time

from django.test import SimpleTestCase

from bounds.estimates import bound_t5, corner_values
from core.domain import Rectangle, RuleParams
from core.exceptions import BudgetExhausted, InvalidParameter
from exprmodel.corpus import SMOOTH_CORPUS
from exprmodel.function_model import FunctionModel
from oracle.quadrature import integrate_2d

from .certified import integrate_certified

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)
TRAPEZOID = RuleParams.trapezoid()


class CertifiedIntegrationTests(SimpleTestCase):

    def test_zero_mixed_partial_needs_one_panel(self):
        result = integrate_certified(FunctionModel.from_text('x^2 + y^2'), UNIT, TRAPEZOID, tol=1e-12)
        self.assertEqual(result.panels, 1)
        self.assertEqual(result.total_certificate, 0.0)
        self.assertAlmostEqual(result.integral, 2 / 3, places=12)
        self.assertTrue(result.hypothesis_checked)

    def test_square_product_coarse(self):
        result = integrate_certified(FunctionModel.from_text('x^2*y^2'), UNIT, TRAPEZOID, tol=1e-3)
        self.assertLessEqual(result.total_certificate, 1e-3)
        self.assertLessEqual(abs(result.integral - 1 / 9), 1e-3)
        self.assertGreater(result.panels, 1)

    def test_square_product_fine_and_deterministic(self):
        f = FunctionModel.from_text('x^2*y^2')
        started = time.perf_counter()
        first = integrate_certified(f, UNIT, TRAPEZOID, tol=1e-4)
        self.assertLess(time.perf_counter() - started, 5.0)
        self.assertLessEqual(abs(first.integral - 1 / 9), first.total_certificate)
        self.assertLessEqual(first.total_certificate, 1e-4)
        second = integrate_certified(f, UNIT, TRAPEZOID, tol=1e-4)
        self.assertEqual(first.panels, second.panels)
        self.assertEqual(first.integral, second.integral)
        self.assertEqual([p.rect for p in first.leaves], [p.rect for p in second.leaves])

    def test_total_certificate_is_area_weighted_sum(self):
        result = integrate_certified(FunctionModel.from_text('exp(x + y)'), UNIT, RuleParams(0.5), tol=1e-3)
        self.assertAlmostEqual(
            result.total_certificate,
            sum(p.certificate * p.rect.area for p in result.leaves),
            places=15,
        )
        self.assertEqual(result.panels, len(result.leaves))
        self.assertAlmostEqual(sum(p.rect.area for p in result.leaves), 1.0, places=14)

    def test_zero_tolerance_exhausts_budget(self):
        with self.assertRaises(BudgetExhausted) as ctx:
            integrate_certified(FunctionModel.from_text('x^2*y^2'), UNIT, TRAPEZOID, tol=0.0, max_depth=2)
        partial = ctx.exception.partial
        self.assertGreaterEqual(partial.panels, 4)
        self.assertGreater(partial.total_certificate, 0.0)
        self.assertTrue(all(p.depth <= 2 for p in partial.leaves))

    def test_panel_budget(self):
        with self.assertRaises(BudgetExhausted) as ctx:
            integrate_certified(FunctionModel.from_text('x^2*y^2'), UNIT, TRAPEZOID, tol=1e-9, max_panels=10)
        self.assertEqual(ctx.exception.partial.panels, 10)

    def test_invalid_tolerance(self):
        with self.assertRaises(InvalidParameter):
            integrate_certified(FunctionModel.from_text('x*y'), UNIT, TRAPEZOID, tol=-1.0)

    def test_hypothesis_failure_is_recorded(self):
        result = integrate_certified(FunctionModel.from_text('sin(x)*sin(y)'), UNIT, TRAPEZOID, tol=1e-2)
        self.assertFalse(result.hypothesis_checked)

    def test_quartering_reduces_certificates(self):
        params = RuleParams(0.3)
        for text in ('x^2*y^2', 'exp(x + y)', 'x^4*y^2'):
            f = FunctionModel.from_text(text)
            for r in (UNIT, Rectangle(0.5, 2.0, 1.0, 1.5)):
                parent = bound_t5(corner_values(f, r), r, params).value * r.area
                children = sum(
                    bound_t5(corner_values(f, q), q, params).value * q.area for q in r.quadrants()
                )
                self.assertLessEqual(children, parent * (1 + 1e-12))

    def test_certificate_soundness_on_corpus(self):
        checked = 0
        for text in SMOOTH_CORPUS:
            f = FunctionModel.from_text(text)
            result = integrate_certified(f, UNIT, RuleParams(1 / 3), tol=1e-2)
            if not result.hypothesis_checked:
                continue
            checked += 1
            exact, err = integrate_2d(f, UNIT)
            slack = result.total_certificate + 10 * result.line_error + err + 1e-12
            self.assertLessEqual(abs(result.integral - exact), slack, text)
        self.assertGreater(checked, 5)
