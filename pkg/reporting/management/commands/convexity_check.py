from verify.convexity import is_coordinate_convex

from reporting.base import EXIT_HYPOTHESIS, EXIT_OK, CubatureCommand, fmt, parse_float_list
from reporting.rows import convexity_row


class Command(CubatureCommand):
    help = 'Grid check of convexity on the co-ordinates for f, |fxy| and |fxy|^q'
    uses_lambda = False
    tol_fraction = None

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--grid-n', type=int, help='Lattice points per axis (>= 3)')
        parser.add_argument('--conv-tol', type=float, help='Relative tolerance of the midpoint test')
        parser.add_argument('--q-grid', type=parse_float_list, help='Powers q of |fxy| to check')

    def run(self, model, r, params, cfg, options):
        q_grid = self.q_grid(options)
        grid_n, tol = options.get('grid_n'), options.get('conv_tol')
        targets = [('f', model.f), ('abs_fxy', model.abs_fxy)]
        targets += [(f'abs_fxy^{q:g}', model.abs_fxy_power(q)) for q in q_grid if q != 1]
        rows = [convexity_row(name, is_coordinate_convex(g, r, grid_n, tol)) for name, g in targets]
        passed = all(row['passed'] for row in rows)
        outputs = {'convexity': rows, 'status': 'PASS' if passed else 'FAIL'}
        status = EXIT_HYPOTHESIS if not passed and options.get('strict') else EXIT_OK
        extra = {'q_grid': q_grid}
        if grid_n is not None:
            extra['grid_n'] = grid_n
        return extra, outputs, status

    def describe(self, record):
        inputs, out = record['inputs'], record['outputs']
        lines = [f"f = {inputs['expression']} on {inputs['rect']}"]
        for row in out['convexity']:
            verdict = 'convex' if row['passed'] else 'NOT convex'
            lines.append(f"  {row['target']:<12} {verdict}")
            witness = row['witness']
            if witness:
                lines.append(
                    f"    along {witness['axis']} at {fmt(witness['fixed_coord'])}:"
                    f" t1={fmt(witness['t1'])} t2={fmt(witness['t2'])} excess={witness['violation']:.3e}"
                )
        return lines
