import json
import math
import os
import tempfile
from contextlib import redirect_stdout
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from cubature_toolkit.cli import main

from .models import RunLog
from .serializers import RunRecordSerializer, render_record


def run(*args):
    out, err = StringIO(), StringIO()
    call_command(*args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


def run_json(*args):
    out, _ = run(*args, '--json')
    return json.loads(out)


class IntegrateCommandTests(SimpleTestCase):

    def test_bilinear_is_exact(self):
        record = run_json('integrate', '-f', 'x*y', '-r', '0,1,0,1', '--lambda', '0.5')
        self.assertEqual(record['command'], 'integrate')
        self.assertEqual(record['inputs']['rect'], [0.0, 1.0, 0.0, 1.0])
        self.assertEqual(record['inputs']['lambda'], 0.5)
        self.assertAlmostEqual(record['outputs']['average'], 0.25, places=12)
        self.assertEqual(len(record['outputs']['nodes']), 9)
        self.assertIn('best_bound', record['outputs'])

    def test_certified_square_product(self):
        record = run_json('integrate', '-f', 'x^2*y^2', '-r', '0,1,0,1', '--lambda', '1',
                          '--certify', '--tol', '1e-3')
        certified = record['outputs']['certified']
        self.assertLessEqual(certified['total_certificate'], 1e-3)
        self.assertLessEqual(abs(certified['integral'] - 1 / 9), 1e-3)
        self.assertTrue(certified['hypothesis_checked'])
        self.assertNotIn('exhausted', certified)

    def test_oracle_fills_actual_error(self):
        record = run_json('integrate', '-f', 'x^2*y^2', '--lambda', '1', '--oracle')
        outputs = record['outputs']
        self.assertAlmostEqual(outputs['true_integral'], 1 / 9, places=12)
        self.assertAlmostEqual(outputs['actual_error'], 1 / 36, places=12)
        self.assertEqual(outputs['best_bound']['theorem'], 'T5')
        self.assertFalse(outputs['best_bound']['violated'])

    def test_human_output(self):
        out, _ = run('integrate', '-f', 'x*y', '--lambda-named', 'simpson')
        self.assertIn('rule average   0.25', out)
        self.assertIn('best bound', out)

    def test_syntax_error_exits_one(self):
        with self.assertRaises(CommandError) as ctx:
            run('integrate', '-f', 'x^')
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('ExpressionSyntaxError', str(ctx.exception))

    def test_bad_inputs_exit_one(self):
        for args in (
            ('-f', 'x*y', '-r', '1,0,0,1'),
            ('-f', 'x*y', '-r', '0,1,0'),
            ('-f', 'x*y', '--lambda', '1.5'),
            ('-f', 'x*y', '--quad-nodes', '12'),
            ('-f', 'log(x)', '-r', '0,1,0,1'),
        ):
            with self.assertRaises(CommandError) as ctx:
                run('integrate', *args)
            self.assertEqual(ctx.exception.returncode, 1, args)

    def test_negative_rectangle(self):
        record = run_json('integrate', '-f', 'x^2 + y^2', '-r=-1,1,0,1', '--lambda', '0')
        self.assertEqual(record['inputs']['rect'], [-1.0, 1.0, 0.0, 1.0])
        self.assertAlmostEqual(record['outputs']['integral'], 2 / 3 + 2 / 3, places=12)

    def test_budget_exhaustion_is_reported(self):
        record = run_json('integrate', '-f', 'x^2*y^2', '--certify', '--tol', '0', '--panel-depth', '1')
        self.assertIn('exhausted', record['outputs']['certified'])
        with self.assertRaises(CommandError) as ctx:
            run('integrate', '-f', 'x^2*y^2', '--certify', '--tol', '0', '--panel-depth', '1', '--strict')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_tol_sets_the_quadrature_tolerance(self):
        args = ('integrate', '-f', 'sin(60*x)*y', '--lambda', '0.5', '--oracle')
        tight = run_json(*args)['outputs']
        loose = run_json(*args, '--tol', '1e-2')['outputs']
        self.assertGreater(loose['line_error'], tight['line_error'])
        self.assertAlmostEqual(loose['true_integral'], tight['true_integral'], delta=1e-2)
        self.assertAlmostEqual(tight['true_integral'], (1 - math.cos(60)) / 120, places=12)

    def test_negative_tol_exits_one(self):
        with self.assertRaises(CommandError) as ctx:
            run('bounds', '-f', 'x^2*y^2', '--tol=-1')
        self.assertEqual(ctx.exception.returncode, 1)

    def test_strict_flags_failed_hypothesis(self):
        run('integrate', '-f', 'sin(x)*sin(y)')
        with self.assertRaises(CommandError) as ctx:
            run('integrate', '-f', 'sin(x)*sin(y)', '--strict')
        self.assertEqual(ctx.exception.returncode, 2)


class VerifyIdentityCommandTests(SimpleTestCase):

    def test_two_rows_for_two_lambdas(self):
        record = run_json('verify_identity', '-f', 'exp(x*y)', '--lambda-grid', '0,1')
        rows = record['outputs']['residuals']
        self.assertEqual([row['lambda'] for row in rows], [0.0, 1.0])
        self.assertLessEqual(record['outputs']['max_residual'], 1e-8)
        self.assertEqual(record['outputs']['status'], 'PASS')
        self.assertEqual(record['inputs']['lambda_grid'], [0.0, 1.0])
        self.assertNotIn('lambda', record['inputs'])

    def test_default_lambdas_and_separable_function(self):
        record = run_json('verify_identity', '-f', 'x^2 + y^2')
        self.assertEqual(len(record['outputs']['residuals']), 4)
        self.assertLessEqual(record['outputs']['max_residual'], 1e-12)

    def test_corpus_entry(self):
        record = run_json('verify_identity', '-f', 'exp(x)*sin(y)', '-r', '0,1,0,2')
        self.assertLessEqual(record['outputs']['max_residual'], 1e-8)

    def test_evaluation_failure_exits_one(self):
        with self.assertRaises(CommandError) as ctx:
            run('verify_identity', '-f', 'sqrt(x)', '-r=-1,1,0,1')
        self.assertEqual(ctx.exception.returncode, 1)


class BoundsCommandTests(SimpleTestCase):

    def test_square_product_table(self):
        record = run_json('bounds', '-f', 'x^2*y^2', '--lambda', '1', '--q-grid', '1,2')
        rows = record['outputs']['bounds']
        t5 = rows[0]
        self.assertEqual(t5['theorem'], 'T5')
        self.assertAlmostEqual(t5['value'], 0.0625, places=15)
        self.assertAlmostEqual(t5['actual_error'], 1 / 36, places=12)
        self.assertAlmostEqual(t5['ratio'], 4 / 9, places=10)
        self.assertEqual(t5['hypothesis'], 'OK')
        self.assertEqual([row['theorem'] for row in rows], ['T5', 'T7', 'T7', 'T6', 'T6_relaxed'])
        self.assertFalse(any(row['violated'] for row in rows))
        self.assertEqual(record['inputs']['q_grid'], [1.0, 2.0])

    def test_lambda_sweep_multiplies_rows(self):
        single = run_json('bounds', '-f', 'exp(x + y)', '--q-grid', '2')
        sweep = run_json('bounds', '-f', 'exp(x + y)', '--q-grid', '2', '--lambda-grid', '0,0.33333333,1')
        self.assertEqual(len(sweep['outputs']['bounds']), 3 * len(single['outputs']['bounds']))
        self.assertEqual(sorted({row['lambda'] for row in sweep['outputs']['bounds']}), [0.0, 0.33333333, 1.0])

    def test_separable_function_has_zero_bounds(self):
        record = run_json('bounds', '-f', 'sin(x) + sin(y)', f'-r=0,{math.pi},0,{math.pi}')
        for row in record['outputs']['bounds']:
            self.assertEqual(row['value'], 0.0)
            self.assertLess(row['actual_error'], 1e-12)
            self.assertNotIn('ratio', row)
            self.assertFalse(row['violated'])

    def test_unsound_rows_are_labelled(self):
        record = run_json('bounds', '-f', 'sin(x)*sin(y)', '--q-grid', '2')
        labels = {row['hypothesis'] for row in record['outputs']['bounds']}
        self.assertIn('UNSOUND-HYPOTHESIS', labels)
        with self.assertRaises(CommandError) as ctx:
            run('bounds', '-f', 'sin(x)*sin(y)', '--q-grid', '2', '--strict')
        self.assertEqual(ctx.exception.returncode, 2)


class HadamardCommandTests(SimpleTestCase):

    def test_sum_of_squares(self):
        record = run_json('hadamard', '-f', 'x^2 + y^2')
        chain = record['outputs']['chain']
        for value, expected in zip(chain['values'], (0.5, 7 / 12, 2 / 3, 5 / 6, 1.0)):
            self.assertAlmostEqual(value, expected, places=12)
        self.assertTrue(chain['monotone'])
        self.assertEqual(record['outputs']['status'], 'PASS')
        self.assertTrue(record['outputs']['convexity'][0]['passed'])

    def test_constant(self):
        out, _ = run('hadamard', '-f', '3')
        self.assertEqual(out.count(' 3\n'), 5)
        self.assertIn('PASS', out)

    def test_concave_function(self):
        record = run_json('hadamard', '--function=-x^2')
        self.assertFalse(record['outputs']['convexity'][0]['passed'])
        self.assertEqual(record['outputs']['status'], 'FAIL')
        self.assertEqual(record['outputs']['chain']['first_decrease'], 1)
        with self.assertRaises(CommandError) as ctx:
            run('hadamard', '--function=-x^2', '--strict')
        self.assertEqual(ctx.exception.returncode, 2)


class ConvexityCheckCommandTests(SimpleTestCase):

    def test_targets_and_witness(self):
        record = run_json('convexity_check', '-f', 'sin(x)*sin(y)', '--q-grid', '1,2')
        rows = record['outputs']['convexity']
        self.assertEqual([row['target'] for row in rows], ['f', 'abs_fxy', 'abs_fxy^2'])
        self.assertEqual(record['outputs']['status'], 'FAIL')
        failed = [row for row in rows if not row['passed']]
        self.assertTrue(failed)
        self.assertIn(failed[0]['witness']['axis'], ('x', 'y'))

    def test_grid_size_and_strict(self):
        record = run_json('convexity_check', '-f', 'x^2*y^2', '--grid-n', '9', '--q-grid', '2')
        self.assertTrue(all(row['grid_n'] == 9 for row in record['outputs']['convexity']))
        self.assertEqual(record['outputs']['status'], 'PASS')
        with self.assertRaises(CommandError) as ctx:
            run('convexity_check', '--function=-x^2', '--strict')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_grid_too_small(self):
        with self.assertRaises(CommandError) as ctx:
            run('convexity_check', '-f', 'x', '--grid-n', '2')
        self.assertEqual(ctx.exception.returncode, 1)

    def test_tol_is_refused(self):
        with self.assertRaises(CommandError) as ctx:
            run('convexity_check', '-f', 'x', '--tol', '1e-3')
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('--tol', str(ctx.exception))


class RunRecordTests(SimpleTestCase):

    def test_round_trip(self):
        out, _ = run('bounds', '-f', 'exp(x*y)', '--json')
        record = json.loads(out)
        serializer = RunRecordSerializer(data=record)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(render_record(record).decode('utf-8'), out.strip())

    def test_unknown_keys_are_rejected(self):
        record = run_json('integrate', '-f', 'x*y')
        for broken in (
            {**record, 'extra': 1},
            {**record, 'inputs': {**record['inputs'], 'colour': 'red'}},
            {**record, 'outputs': {**record['outputs'], 'estimate': 1.0}},
        ):
            self.assertFalse(RunRecordSerializer(data=broken).is_valid())

    def test_deterministic_apart_from_timings(self):
        args = ('integrate', '-f', 'exp(x*y)', '--certify', '--tol', '1e-3', '--oracle')
        first, second = run_json(*args), run_json(*args)
        first.pop('timings_ms')
        second.pop('timings_ms')
        self.assertEqual(first, second)

    def test_corpus_emits_json_lines(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'corpus.txt')
            with open(path, 'w') as handle:
                handle.write('# smoke corpus\nx*y\n\nexp(x + y)\nx^\n')
            out, err = StringIO(), StringIO()
            with self.assertRaises(CommandError) as ctx:
                call_command('verify_identity', '--corpus', path, '--json', stdout=out, stderr=err)
        self.assertEqual(ctx.exception.returncode, 1)
        records = [json.loads(line) for line in out.getvalue().splitlines()]
        self.assertEqual([r['inputs']['expression'] for r in records], ['x*y', 'exp(x + y)', 'x^'])
        self.assertEqual(records[0]['outputs']['status'], 'PASS')
        self.assertIn('error', records[2]['outputs'])

    def test_missing_corpus_file(self):
        with self.assertRaises(CommandError) as ctx:
            run('integrate', '--corpus', '/nonexistent/corpus.txt')
        self.assertEqual(ctx.exception.returncode, 1)


class RunLogTests(TestCase):

    def test_save_stores_the_record(self):
        run('integrate', '-f', 'x*y', '--save')
        log = RunLog.objects.get()
        self.assertEqual(log.command, 'integrate')
        self.assertEqual(log.expression, 'x*y')
        self.assertEqual(log.exit_status, 0)
        self.assertAlmostEqual(log.outputs['average'], 0.25, places=12)

    def test_failed_runs_are_saved_with_their_status(self):
        with self.assertRaises(CommandError):
            run('hadamard', '--function=-x^2', '--strict', '--save')
        self.assertEqual(RunLog.objects.get().exit_status, 2)


class ConsoleEntryPointTests(SimpleTestCase):

    def test_hyphenated_subcommand(self):
        out = StringIO()
        with redirect_stdout(out):
            main(['cubature', 'verify-identity', '-f', 'x*y', '--lambda-grid', '0.5', '--json'])
        record = json.loads(out.getvalue())
        self.assertEqual(record['command'], 'verify_identity')
        self.assertEqual(len(record['outputs']['residuals']), 1)
