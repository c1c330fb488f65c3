import math

from django.test import SimpleTestCase, override_settings

from core.domain import Rectangle
from core.exceptions import DomainError, InvalidParameter
from exprmodel.corpus import SMOOTH_CORPUS
from exprmodel.function_model import FunctionModel
from exprmodel.parser import parse

from .convexity import is_coordinate_convex, midpoint_excess
from .hadamard import hadamard_chain

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)


class ConvexityTests(SimpleTestCase):

    def test_sum_of_squares_passes(self):
        for r in (UNIT, Rectangle(-3.0, 2.0, 10.0, 20.0)):
            report = is_coordinate_convex(parse('x^2 + y^2'), r)
            self.assertTrue(report.passed)
            self.assertIsNone(report.witness)
            self.assertEqual(report.grid_n, 33)

    def test_bilinear_passes(self):
        self.assertTrue(is_coordinate_convex(parse('x*y'), UNIT).passed)

    def test_sine_fails_on_x_axis(self):
        r = Rectangle(0.0, math.pi, 0.0, 1.0)
        report = is_coordinate_convex(parse('sin(x)'), r)
        self.assertFalse(report.passed)
        witness = report.witness
        self.assertEqual(witness.axis, 'x')
        self.assertEqual((witness.fixed_coord, witness.t1), (0.0, 0.0))
        step = math.pi / 32
        self.assertAlmostEqual(witness.t2, step, places=15)
        self.assertAlmostEqual(witness.violation, math.sin(step / 2) - math.sin(step) / 2, places=14)

    def test_concavity_in_y_reported_on_y_axis(self):
        report = is_coordinate_convex(parse('x^2 - y^2'), UNIT)
        self.assertEqual(report.witness.axis, 'y')

    def test_witness_reproduces(self):
        g = parse('cos(x)*exp(y) - x*y^3')
        report = is_coordinate_convex(g, Rectangle(-1.0, 1.0, -1.0, 1.0))
        self.assertFalse(report.passed)
        w = report.witness
        self.assertAlmostEqual(midpoint_excess(g, w.axis, w.fixed_coord, w.t1, w.t2), w.violation, delta=1e-12)
        self.assertGreater(w.violation, report.tol)

    def test_affine_invariance(self):
        r = Rectangle(0.0, math.pi, 0.0, 1.0)
        base = is_coordinate_convex(parse('sin(x)'), r).witness
        scaled = is_coordinate_convex(parse('3*sin(x) + 5'), r).witness
        self.assertEqual(base[:4], scaled[:4])
        self.assertTrue(is_coordinate_convex(parse('2*(x^2 + y^2) - 7'), UNIT).passed)

    def test_abs_of_mixed_partial(self):
        model = FunctionModel.from_text('x^2*y^2')
        self.assertTrue(is_coordinate_convex(model.abs_fxy, UNIT).passed)
        self.assertTrue(is_coordinate_convex(model.abs_fxy_power(2), UNIT).passed)

    @override_settings(CUBATURE={'CONVEXITY_GRID_N': 5})
    def test_grid_from_settings(self):
        self.assertEqual(is_coordinate_convex(parse('x'), UNIT).grid_n, 5)

    def test_invalid_arguments(self):
        with self.assertRaises(InvalidParameter):
            is_coordinate_convex(parse('x'), UNIT, grid_n=2)
        with self.assertRaises(InvalidParameter):
            is_coordinate_convex(parse('x'), UNIT, tol=-1.0)

    def test_domain_error_propagates(self):
        with self.assertRaises(DomainError):
            is_coordinate_convex(parse('log(x)'), UNIT)


class HadamardChainTests(SimpleTestCase):

    def test_sum_of_squares(self):
        chain = hadamard_chain(FunctionModel.from_text('x^2 + y^2'), UNIT)
        for value, expected in zip(chain.values, (0.5, 7 / 12, 2 / 3, 5 / 6, 1.0)):
            self.assertAlmostEqual(value, expected, places=12)
        self.assertTrue(chain.is_monotone())
        self.assertIsNone(chain.first_decrease())

    def test_equality_cases(self):
        for text, expected in (('3', 3.0), ('x*y', 0.25)):
            chain = hadamard_chain(FunctionModel.from_text(text), UNIT)
            for value in chain.values:
                self.assertAlmostEqual(value, expected, delta=1e-12)
            self.assertTrue(chain.is_monotone())

    def test_concave_function_breaks_chain(self):
        chain = hadamard_chain(FunctionModel.from_text('-x^2'), UNIT)
        self.assertFalse(chain.is_monotone())
        self.assertEqual(chain.first_decrease(), 1)

    def test_monotone_for_convex_corpus_entries(self):
        rectangles = [UNIT, Rectangle(-1.0, 1.0, 0.0, 0.5), Rectangle(1.0, 2.0, 2.0, 3.0)]
        checked = 0
        for text in SMOOTH_CORPUS:
            model = FunctionModel.from_text(text)
            for r in rectangles:
                if not is_coordinate_convex(model.f, r).passed:
                    continue
                checked += 1
                self.assertTrue(hadamard_chain(model, r).is_monotone(), (text, r))
        self.assertGreater(checked, 10)
