import math
import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import (
    DomainError, ExpressionSyntaxError, NotDifferentiable, UnknownIdentifier,
)

from .calculus import differentiate, differentiate_xy, evaluate
from .corpus import SMOOTH_CORPUS, load_corpus, random_tree
from .function_model import FunctionModel
from .nodes import ZERO, Add, Func, Mul, Neg, Num, Pow, Sub, Var, to_text
from .parser import parse


class ParserTests(SimpleTestCase):

    def test_product(self):
        self.assertEqual(parse('x*y'), Mul(Var('x'), Var('y')))

    def test_precedence_and_associativity(self):
        self.assertEqual(parse('x - y - 1'), Sub(Sub(Var('x'), Var('y')), Num(1.0)))
        self.assertEqual(parse('-x^2'), Neg(Pow(Var('x'), Num(2.0))))
        self.assertEqual(
            parse('x^2*y^2'), Mul(Pow(Var('x'), Num(2.0)), Pow(Var('y'), Num(2.0)))
        )

    def test_error_offset(self):
        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse('x^*y')
        self.assertEqual(ctx.exception.offset, 2)

    def test_unknown_identifier(self):
        with self.assertRaises(UnknownIdentifier) as ctx:
            parse('x + z')
        self.assertEqual(ctx.exception.name, 'z')
        self.assertEqual(ctx.exception.offset, 4)

    def test_empty_and_unbalanced(self):
        for text in ['', '   ', '(x + y', 'x +', 'sin x']:
            with self.assertRaises(ExpressionSyntaxError):
                parse(text)

    def test_power_rule(self):
        parse('x^3')
        parse('2^x')
        parse('exp(x)^y')
        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse('x^y')
        self.assertEqual(ctx.exception.offset, 1)
        with self.assertRaises(ExpressionSyntaxError):
            parse('x^0.5')

    def test_round_trip_of_generated_trees(self):
        rng = np.random.default_rng(20240611)
        for _ in range(300):
            tree = random_tree(rng, depth=4, smooth=False)
            self.assertEqual(parse(to_text(tree)), tree, to_text(tree))

    def test_corpus_parses(self):
        for text in SMOOTH_CORPUS:
            parse(text)
        self.assertGreaterEqual(len(SMOOTH_CORPUS), 20)


class EvaluateTests(SimpleTestCase):

    def test_scalar(self):
        self.assertEqual(evaluate(parse('x^2*y^2'), 2.0, 3.0), 36.0)
        self.assertAlmostEqual(evaluate(parse('sin(pi*x) + e'), 0.5, 0.0), 1 + math.e)

    def test_broadcasting(self):
        xs = np.linspace(0, 1, 5)
        values = evaluate(parse('x*y'), xs[:, None], xs[None, :])
        self.assertEqual(values.shape, (5, 5))
        np.testing.assert_allclose(values, np.outer(xs, xs))

    def test_domain_errors(self):
        with self.assertRaises(DomainError) as ctx:
            evaluate(parse('log(x)'), 0.0, 1.0)
        self.assertEqual(ctx.exception.point, (0.0, 1.0))
        with self.assertRaises(DomainError):
            evaluate(parse('1/(x - y)'), 1.0, 1.0)
        with self.assertRaises(DomainError):
            evaluate(parse('sqrt(x)'), np.array([1.0, -1.0]), 0.0)
        with self.assertRaises(ArithmeticError):
            evaluate(parse('exp(exp(x))'), 10.0, 0.0)


class DifferentiationTests(SimpleTestCase):

    def test_bilinear(self):
        self.assertEqual(differentiate_xy(parse('x*y')), Num(1.0))

    def test_single_variable_terms_vanish(self):
        self.assertEqual(differentiate_xy(parse('x^2 + y^2')), ZERO)
        self.assertEqual(differentiate_xy(parse('abs(x) + y^2')), ZERO)
        self.assertEqual(differentiate(parse('x^3'), 'y'), ZERO)

    def test_polynomial(self):
        fxy = differentiate_xy(parse('x^2*y^2'))
        for x, y in [(0.5, 0.5), (1.0, 2.0), (-1.5, 0.25)]:
            self.assertAlmostEqual(evaluate(fxy, x, y), 4 * x * y, places=12)

    def test_exponential_against_closed_form(self):
        fxy = differentiate_xy(parse('exp(x*y)'))
        for x, y in [(0.0, 0.0), (0.3, -0.7), (1.0, 1.0)]:
            expected = math.exp(x * y) * (1 + x * y)
            self.assertAlmostEqual(evaluate(fxy, x, y), expected, places=12)

    def test_abs_of_mixed_argument_rejected(self):
        for text in ['abs(x*y)', 'x*abs(y)']:
            with self.assertRaises(NotDifferentiable):
                differentiate_xy(parse(text))

    def test_clairaut_on_corpus(self):
        rng = np.random.default_rng(7)
        xs, ys = rng.uniform(-1, 1, 50), rng.uniform(-1, 1, 50)
        for text in SMOOTH_CORPUS:
            model = FunctionModel.from_text(text)
            np.testing.assert_allclose(
                evaluate(model.fxy, xs, ys),
                evaluate(model.fyx, xs, ys),
                rtol=1e-10, atol=1e-10, err_msg=text,
            )

    def test_folding_keeps_trees_small(self):
        self.assertEqual(differentiate(parse('3*x'), 'x'), Num(3.0))
        self.assertEqual(differentiate(parse('sin(y)'), 'y'), Func('cos', Var('y')))


class FunctionModelTests(SimpleTestCase):

    def test_from_text(self):
        model = FunctionModel.from_text('x^2*y^2')
        self.assertEqual(model.source_text, 'x^2*y^2')
        self.assertEqual(model(1.0, 2.0), 4.0)
        self.assertAlmostEqual(model.evaluate_fxy(1.0, 2.0), 8.0)

    def test_abs_power(self):
        model = FunctionModel.from_text('x*y')
        self.assertEqual(model.abs_fxy_power(1), Func('abs', Num(1.0)))
        self.assertEqual(evaluate(model.abs_fxy_power(3), 0.0, 0.0), 1.0)

    def test_mixed_partial_matches_finite_differences(self):
        rng = np.random.default_rng(12345)
        for text in SMOOTH_CORPUS:
            model = FunctionModel.from_text(text)
            points = rng.uniform(-1, 1, size=(20, 2))
            self.assertEqual(model.check_mixed_partial(points), [], text)

    def test_finite_difference_acceptance_sample(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 200:
            tree = random_tree(rng, depth=3, smooth=True)
            model = FunctionModel.from_expr(tree)
            point = rng.uniform(-1, 1, size=2)
            if abs(model(*point)) > 1e6:
                continue
            self.assertEqual(model.check_mixed_partial([point]), [], to_text(tree))
            checked += 1

    def test_exponential_against_finite_differences(self):
        rng = np.random.default_rng(99)
        model = FunctionModel.from_text('exp(x*y)')
        points = rng.uniform(-1, 1, size=(20, 2))
        self.assertEqual(model.check_mixed_partial(points, step=1e-4, rel_tol=1e-6), [])

    def test_wrong_derivative_is_reported(self):
        model = FunctionModel.from_text('x*y')
        broken = FunctionModel(model.f, Add(model.fxy, Num(1.0)), model.source_text)
        self.assertEqual(len(broken.check_mixed_partial([(0.1, 0.2), (0.3, 0.4)])), 2)


class CorpusFileTests(SimpleTestCase):

    def test_load_skips_comments(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'corpus.txt')
            with open(path, 'w') as fh:
                fh.write('# smooth\nx*y\n\n  exp(x + y)  \n')
            self.assertEqual(load_corpus(path), ['x*y', 'exp(x + y)'])
