from bounds.estimates import all_bounds
from core.domain import RuleParams
from cubature.rule import rule_breakdown
from oracle.quadrature import integrate_2d

from reporting.base import EXIT_HYPOTHESIS, EXIT_OK, CubatureCommand, fmt, parse_float_list
from reporting.rows import bound_row, error_slack


class Command(CubatureCommand):
    help = 'Tabulate every bound against the actual rule error'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--lambda-grid', type=parse_float_list,
                            help='Comma-separated lambda values (default: the --lambda value)')
        parser.add_argument('--q-grid', type=parse_float_list, help='q values for the T6/T7 bounds')

    def run(self, model, r, params, cfg, options):
        q_grid = self.q_grid(options)
        lambdas = options.get('lambda_grid') or [params.lam]
        exact = integrate_2d(model, r, cfg)
        average = exact.value / r.area
        cache = {}
        rows = []
        for lam in lambdas:
            rule_params = RuleParams(lam)
            breakdown = rule_breakdown(model, r, rule_params, cfg)
            actual = abs(average - breakdown.average)
            slack = error_slack(exact, r.area, breakdown.line_error)
            for report in all_bounds(model, r, rule_params, q_grid):
                rows.append(bound_row(report, model, r, cache, actual, slack))
        violated = any(row['violated'] for row in rows)
        unsound = any(row['hypothesis'] != 'OK' for row in rows)
        if violated or (unsound and options.get('strict')):
            status = EXIT_HYPOTHESIS
        else:
            status = EXIT_OK
        outputs = {'true_integral': exact.value, 'bounds': rows}
        extra = {'q_grid': q_grid}
        if options.get('lambda_grid'):
            extra['lambda_grid'] = list(lambdas)
        return extra, outputs, status

    def describe(self, record):
        inputs, out = record['inputs'], record['outputs']
        lines = [
            f"f = {inputs['expression']} on {inputs['rect']}, true integral {fmt(out['true_integral'])}",
            f"  {'lambda':>8} {'theorem':<11} {'q':>6} {'bound':>12} {'error':>12} {'ratio':>9}  hypothesis",
        ]
        for row in out['bounds']:
            q = fmt(row['q']) if 'q' in row else '-'
            ratio = fmt(row['ratio']) if 'ratio' in row else '-'
            flag = '  VIOLATED' if row['violated'] else ''
            lines.append(
                f"  {fmt(row['lambda']):>8} {row['theorem']:<11} {q:>6} {fmt(row['value']):>12}"
                f" {fmt(row['actual_error']):>12} {ratio:>9}  {row['hypothesis']}{flag}"
            )
        return lines
