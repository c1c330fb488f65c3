from adaptive.certified import integrate_certified
from bounds.estimates import best_bound
from core.exceptions import BudgetExhausted
from cubature.rule import rule_breakdown
from oracle.quadrature import integrate_2d

from reporting.base import EXIT_HYPOTHESIS, EXIT_OK, CubatureCommand, fmt, parse_float_list
from reporting.rows import bound_row, error_slack, hypothesis_holds

DEFAULT_CERTIFY_TOL = 1e-6


class Command(CubatureCommand):
    help = 'Apply the lambda-family rule on a rectangle, with its best a-priori bound'
    tol_fraction = 0.01

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--q-grid', type=parse_float_list, help='q values for the T6/T7 bounds')
        parser.add_argument('--oracle', action='store_true', help='Also compute the reference integral')
        parser.add_argument('--certify', action='store_true',
                            help='Certified adaptive integration to --tol (default 1e-6)')
        parser.add_argument('--panel-depth', type=int, help='Maximum quartering depth under --certify')

    def run(self, model, r, params, cfg, options):
        q_grid = self.q_grid(options)
        breakdown = rule_breakdown(model, r, params, cfg)
        outputs = {
            'average': breakdown.average,
            'integral': breakdown.integral,
            'line_error': breakdown.line_error,
            'nodes': [node._asdict() for node in breakdown.nodes],
            'lines': breakdown.lines._asdict(),
        }
        cache = {}
        best = best_bound(model, r, params, q_grid)
        failed = not hypothesis_holds(model, r, best.theorem, best.q, cache)
        slack = 0.0
        if options.get('oracle'):
            exact = integrate_2d(model, r, cfg)
            outputs['true_integral'] = exact.value
            outputs['actual_error'] = abs(exact.value / r.area - breakdown.average)
            slack = error_slack(exact, r.area, breakdown.line_error)
        outputs['best_bound'] = bound_row(best, model, r, cache, outputs.get('actual_error'), slack)

        if options.get('certify'):
            tol = options['tol'] if options.get('tol') is not None else DEFAULT_CERTIFY_TOL
            try:
                result = integrate_certified(model, r, params, tol, options.get('panel_depth'), cfg)
                exhausted = None
            except BudgetExhausted as exc:
                result, exhausted = exc.partial, str(exc)
            certified = {
                'integral': result.integral,
                'total_certificate': result.total_certificate,
                'panels': result.panels,
                'hypothesis_checked': result.hypothesis_checked,
                'line_error': result.line_error,
            }
            if exhausted:
                certified['exhausted'] = exhausted
            outputs['certified'] = certified
            failed = failed or not result.hypothesis_checked or exhausted is not None

        if outputs['best_bound'].get('violated'):
            status = EXIT_HYPOTHESIS
        else:
            status = EXIT_HYPOTHESIS if failed and options.get('strict') else EXIT_OK
        return {'q_grid': q_grid}, outputs, status

    def describe(self, record):
        inputs, out = record['inputs'], record['outputs']
        lines = [
            f"f = {inputs['expression']} on {inputs['rect']}, lambda = {fmt(inputs['lambda'])}",
            f"  rule average   {fmt(out['average'])}",
            f"  rule integral  {fmt(out['integral'])}",
        ]
        if 'true_integral' in out:
            lines.append(f"  true integral  {fmt(out['true_integral'])}  (error {fmt(out['actual_error'])})")
        best = out['best_bound']
        label = best['theorem'] + (f" q={fmt(best['q'])}" if 'q' in best else '')
        lines.append(f"  best bound     {fmt(best['value'])}  [{label}, {best['hypothesis']}]")
        if 'certified' in out:
            cert = out['certified']
            lines.append(
                f"  certified      {fmt(cert['integral'])} +/- {fmt(cert['total_certificate'])}"
                f"  ({cert['panels']} panels{'' if cert['hypothesis_checked'] else ', advisory'})"
            )
            if 'exhausted' in cert:
                lines.append(f"  budget exhausted: {cert['exhausted']}")
        return lines
