from core.conf import cubature_setting
from core.domain import RuleParams
from cubature.rule import identity_check

from reporting.base import EXIT_HYPOTHESIS, EXIT_OK, CubatureCommand, fmt, parse_float_list

DEFAULT_IDENTITY_TOL = 1e-8


class Command(CubatureCommand):
    help = 'Evaluate both sides of the kernel identity for a list of lambda values'
    uses_lambda = False
    tol_fraction = 0.01

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--lambda-grid', type=parse_float_list,
                            help='Comma-separated lambda values (default from settings)')

    def run(self, model, r, params, cfg, options):
        grid = options.get('lambda_grid')
        if grid is None:
            grid = [float(lam) for lam in cubature_setting('IDENTITY_LAMBDAS')]
        tol = options['tol'] if options.get('tol') is not None else DEFAULT_IDENTITY_TOL
        rows = []
        for lam in grid:
            check = identity_check(model, r, RuleParams(lam), cfg)
            rows.append({
                'lambda': check.lam,
                'lhs': check.lhs,
                'rhs': check.rhs,
                'residual': check.residual,
                'err_est': check.err_est,
            })
        worst = max(abs(row['residual']) for row in rows) if rows else 0.0
        passed = worst <= tol
        outputs = {'residuals': rows, 'max_residual': worst, 'status': 'PASS' if passed else 'FAIL'}
        status = EXIT_OK if passed or not options.get('strict') else EXIT_HYPOTHESIS
        return {'lambda_grid': list(grid)}, outputs, status

    def describe(self, record):
        inputs, out = record['inputs'], record['outputs']
        lines = [f"f = {inputs['expression']} on {inputs['rect']}"]
        for row in out['residuals']:
            lines.append(
                f"  lambda={fmt(row['lambda'])}  lhs={fmt(row['lhs'])}  rhs={fmt(row['rhs'])}"
                f"  residual={row['residual']:.3e}"
            )
        lines.append(f"  max |residual| {out['max_residual']:.3e}  {out['status']}")
        return lines
