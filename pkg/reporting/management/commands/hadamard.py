from verify.convexity import is_coordinate_convex
from verify.hadamard import hadamard_chain

from reporting.base import EXIT_HYPOTHESIS, EXIT_OK, CubatureCommand, fmt
from reporting.rows import convexity_row


class Command(CubatureCommand):
    help = 'Check the five-term Hadamard chain of a co-ordinated convex function'
    uses_lambda = False

    def run(self, model, r, params, cfg, options):
        convexity = is_coordinate_convex(model.f, r)
        chain = hadamard_chain(model, r, cfg)
        monotone = chain.is_monotone()
        outputs = {
            'convexity': [convexity_row('f', convexity)],
            'chain': {
                'values': list(chain.values),
                'err_est': chain.err_est,
                'monotone': monotone,
                'first_decrease': chain.first_decrease(),
            },
            'status': 'PASS' if monotone else 'FAIL',
        }
        # a broken chain under a passing convexity check is a real failure;
        # otherwise only --strict turns a failed hypothesis into exit 2
        if convexity.passed and not monotone:
            status = EXIT_HYPOTHESIS
        elif not convexity.passed and options.get('strict'):
            status = EXIT_HYPOTHESIS
        else:
            status = EXIT_OK
        return {}, outputs, status

    def describe(self, record):
        inputs, out = record['inputs'], record['outputs']
        convexity, chain = out['convexity'][0], out['chain']
        lines = [f"f = {inputs['expression']} on {inputs['rect']}"]
        lines.append(f"  convex on the co-ordinates: {'yes' if convexity['passed'] else 'no'}")
        labels = ('centre', 'midlines', 'average', 'edges', 'corners')
        for label, value in zip(labels, chain['values']):
            lines.append(f"  {label:<9} {fmt(value)}")
        if chain['monotone']:
            lines.append('  chain monotone  PASS')
        else:
            lines.append(f"  chain decreases at step {chain['first_decrease']}  FAIL")
        return lines
