import math

from django.test import SimpleTestCase

from .domain import CornerData, HolderExponents, Rectangle, RuleParams, validate_rectangle
from .exceptions import (
    CubatureError, DegenerateRectangle, InvalidExponents, InvalidParameter,
    NegativeCorner, NonFiniteBound,
)


class RectangleTests(SimpleTestCase):

    def test_unit_square(self):
        r = validate_rectangle(0, 1, 0, 1)
        self.assertEqual(r, Rectangle(0.0, 1.0, 0.0, 1.0))
        self.assertEqual(r.area, 1.0)
        self.assertEqual((r.x_mid, r.y_mid), (0.5, 0.5))

    def test_degenerate_rejected(self):
        with self.assertRaises(DegenerateRectangle):
            validate_rectangle(1, 1, 0, 2)
        with self.assertRaises(DegenerateRectangle):
            validate_rectangle(0, 2, 3, 1)

    def test_non_finite_rejected(self):
        for bounds in [(0, math.inf, 0, 1), (0, 1, -math.inf, 1), (math.nan, 1, 0, 1)]:
            with self.assertRaises(NonFiniteBound):
                validate_rectangle(*bounds)

    def test_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            validate_rectangle(2, 1, 0, 1)
        with self.assertRaises(CubatureError):
            validate_rectangle(2, 1, 0, 1)

    def test_construction_total_over_valid_inputs(self):
        for a, b, c, d in [(-1e6, 1e6, -3, -2), (0.1, 0.1000001, 5, 7), (-2, -1, 10, 11)]:
            r = validate_rectangle(a, b, c, d)
            self.assertGreater(r.area, 0)

    def test_quadrants_tile_parent(self):
        r = validate_rectangle(0, 2, 1, 5)
        quads = r.quadrants()
        self.assertEqual(len(quads), 4)
        self.assertAlmostEqual(sum(q.area for q in quads), r.area)
        self.assertEqual(quads[0], Rectangle(0, 1, 1, 3))
        self.assertEqual(quads[-1], Rectangle(1, 2, 3, 5))


class RuleParamsTests(SimpleTestCase):

    def test_boundaries_accepted(self):
        self.assertEqual(RuleParams(0.0).lam, 0.0)
        self.assertEqual(RuleParams(1.0).lam, 1.0)

    def test_out_of_range_rejected(self):
        for lam in (-1e-9, 1.0000001, math.nan):
            with self.assertRaises(InvalidParameter):
                RuleParams(lam)

    def test_named_rules(self):
        self.assertEqual(RuleParams.named('midpoint').lam, 0.0)
        self.assertEqual(RuleParams.named('simpson').lam, 1.0 / 3.0)
        self.assertEqual(RuleParams.named('trapezoid').lam, 1.0)
        with self.assertRaises(InvalidParameter):
            RuleParams.named('gauss')


class HolderExponentsTests(SimpleTestCase):

    def test_conjugate_pair(self):
        he = HolderExponents(2.0, 2.0)
        self.assertEqual((he.p, he.q), (2.0, 2.0))
        he = HolderExponents.from_q(3.0)
        self.assertAlmostEqual(he.p, 1.5)

    def test_non_conjugate_rejected(self):
        with self.assertRaises(InvalidExponents):
            HolderExponents(2.0, 3.0)

    def test_p_must_exceed_one(self):
        with self.assertRaises(InvalidExponents):
            HolderExponents(1.0, math.inf)
        with self.assertRaises(InvalidExponents):
            HolderExponents.from_q(1.0)


class CornerDataTests(SimpleTestCase):

    def test_mean_and_order(self):
        corners = CornerData(0.0, 0.0, 0.0, 4.0)
        self.assertEqual(list(corners), [0.0, 0.0, 0.0, 4.0])
        self.assertEqual(corners.mean(), 1.0)

    def test_negative_rejected(self):
        with self.assertRaises(NegativeCorner):
            CornerData(1.0, -0.5, 0.0, 0.0)
