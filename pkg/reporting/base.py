"""
Shared plumbing of the management commands: common flags, input parsing,
the run-record envelope, human/JSON output, ``--save`` and exit codes.

Exit codes: 0 ok, 1 input or evaluation error, 2 hypothesis or chain
failure (some commands only under ``--strict``).
"""
import argparse
import logging
import math
import sys
import time
from dataclasses import replace
from functools import partial
from typing import List, Tuple

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from core.conf import cubature_setting
from core.domain import Rectangle, RuleParams, validate_rectangle
from core.exceptions import CubatureError, InvalidParameter
from cubature_toolkit import __version__
from exprmodel.corpus import load_corpus
from exprmodel.function_model import FunctionModel
from oracle.quadrature import MIN_ABS_TOL, QuadConfig

from .models import RunLog
from .serializers import render_record

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2


def parse_float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def parse_rect(text: str) -> Rectangle:
    values = parse_float_list(text)
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"expected a,b,c,d, got {text!r}")
    try:
        return validate_rectangle(*values)
    except CubatureError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def fmt(value: float) -> str:
    """Human-readable number with 6 significant digits."""
    return f"{value:.6g}"


def _usage_error(parser, message):
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        parser.exit(EXIT_INPUT, f"{parser.prog}: error: {message}\n")
    raise CommandError(f"Error: {message}", returncode=EXIT_INPUT)


class CubatureCommand(BaseCommand):
    """
    Base class of the toolkit commands. Subclasses implement ``run`` and
    ``describe``; ``run`` returns the outputs dict and an exit status.
    """
    uses_lambda = True
    # share of --tol given to the reference quadrature; None refuses the flag
    tol_fraction = 1.0

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # bad flags are input errors (exit 1), not argparse's exit 2
        parser.error = partial(_usage_error, parser)
        return parser

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('-f', '--function', dest='expression', help='Expression in x and y')
        source.add_argument('--corpus', help='File with one expression per line')
        parser.add_argument('-r', '--rect', type=parse_rect, default=Rectangle(0.0, 1.0, 0.0, 1.0),
                            help='Rectangle a,b,c,d (use -r=... when a is negative)')
        if self.uses_lambda:
            lam = parser.add_mutually_exclusive_group()
            lam.add_argument('--lambda', dest='lam', type=float, help='Rule parameter in [0, 1]')
            lam.add_argument('--lambda-named', choices=['midpoint', 'simpson', 'trapezoid'])
        parser.add_argument('--json', action='store_true', help='Emit the run record as JSON')
        parser.add_argument('--strict', action='store_true', help='Exit 2 on hypothesis failures')
        parser.add_argument('--tol', type=float, help='Reporting tolerance; also the absolute tolerance of the quadrature')
        parser.add_argument('--max-depth', type=int, help='Maximum bisection depth of the quadrature')
        parser.add_argument('--quad-nodes', type=int, choices=[8, 16, 32], help='Gauss-Legendre nodes per panel')
        parser.add_argument('--save', action='store_true', help='Store the run record in the RunLog table')

    # input helpers

    def rule_params(self, options) -> RuleParams:
        if options.get('lambda_named'):
            return RuleParams.named(options['lambda_named'])
        lam = options.get('lam')
        return RuleParams(1.0 / 3.0 if lam is None else lam)

    def quad_config(self, options) -> QuadConfig:
        """
        Default QuadConfig with the command-line overrides. ``--tol`` sets the
        absolute tolerance to ``tol_fraction * tol``; commands with
        ``tol_fraction = None`` do no quadrature and refuse the flag.
        """
        cfg = QuadConfig.from_settings()
        overrides = {}
        tol = options.get('tol')
        if tol is not None:
            if self.tol_fraction is None:
                raise CubatureError(f"--tol has no meaning for {self.command_name}")
            if not (math.isfinite(tol) and tol >= 0):
                raise InvalidParameter('tol', tol, 'a finite real >= 0')
            overrides['abs_tol'] = max(self.tol_fraction * tol, MIN_ABS_TOL)
        if options.get('max_depth') is not None:
            overrides['max_depth'] = options['max_depth']
        if options.get('quad_nodes') is not None:
            overrides['nodes_per_panel'] = options['quad_nodes']
        return replace(cfg, **overrides) if overrides else cfg

    def q_grid(self, options) -> List[float]:
        grid = options.get('q_grid')
        return list(grid) if grid is not None else [float(q) for q in cubature_setting('Q_GRID')]

    def base_inputs(self, text: str, r: Rectangle, params, options) -> dict:
        inputs = {'expression': text, 'rect': r.as_list()}
        if params is not None:
            inputs['lambda'] = params.lam
        for key in ('tol', 'max_depth', 'quad_nodes'):
            if options.get(key) is not None:
                inputs[key] = options[key]
        return inputs

    # subclass hooks

    def run(self, model: FunctionModel, r: Rectangle, params, cfg: QuadConfig,
            options) -> Tuple[dict, dict, int]:
        """Return (extra inputs, outputs, exit status)."""
        raise NotImplementedError

    def describe(self, record: dict) -> List[str]:
        raise NotImplementedError

    # driver

    def handle(self, *args, **options):
        try:
            params = self.rule_params(options) if self.uses_lambda else None
            cfg = self.quad_config(options)
        except CubatureError as exc:
            raise CommandError(str(exc), returncode=EXIT_INPUT)
        r = options['rect']
        corpus = options.get('corpus')
        if corpus:
            try:
                expressions = load_corpus(corpus)
            except OSError as exc:
                raise CommandError(f"cannot read corpus: {exc}", returncode=EXIT_INPUT)
        else:
            expressions = [options['expression']]

        worst = EXIT_OK
        for text in expressions:
            record, status = self.run_one(text, r, params, cfg, options, in_corpus=bool(corpus))
            self.emit(record, options)
            if options.get('save'):
                RunLog.from_record(record, status)
            worst = max(worst, status)
        if worst != EXIT_OK:
            reason = 'input error' if worst == EXIT_INPUT else 'hypothesis or chain failure'
            raise CommandError(reason, returncode=worst)

    def run_one(self, text, r, params, cfg, options, in_corpus=False):
        started = time.perf_counter()
        inputs = self.base_inputs(text, r, params, options)
        try:
            model = FunctionModel.from_text(text)
            extra, outputs, status = self.run(model, r, params, cfg, options)
        except CubatureError as exc:
            if not in_corpus:
                raise CommandError(f"{type(exc).__name__}: {exc}", returncode=EXIT_INPUT)
            extra, outputs, status = {}, {'error': f"{type(exc).__name__}: {exc}"}, EXIT_INPUT
        inputs.update(extra)
        elapsed = (time.perf_counter() - started) * 1000.0
        logger.info('%s %r finished in %.1f ms with status %d', self.command_name, text, elapsed, status)
        record = {
            'command': self.command_name,
            'inputs': inputs,
            'outputs': outputs,
            'timings_ms': elapsed,
            'version': __version__,
        }
        return record, status

    def emit(self, record: dict, options):
        if options.get('json'):
            try:
                self.stdout.write(render_record(record).decode('utf-8'))
            except ValidationError as exc:
                raise CommandError(f"run record failed validation: {exc.detail}", returncode=EXIT_INPUT)
            return
        if 'error' in record['outputs']:
            self.stderr.write(f"{record['inputs']['expression']}: {record['outputs']['error']}")
            return
        for line in self.describe(record):
            self.stdout.write(line)

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]
