"""
Console entry point.

``cubature verify-identity -f "exp(x*y)"`` runs the ``verify_identity``
management command; subcommand names are accepted with hyphens or underscores.
"""
import os
import sys

SUBCOMMANDS = ('integrate', 'verify-identity', 'bounds', 'hadamard', 'convexity-check')


def main(argv=None):
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'cubature_toolkit.settings')
    from django.core.management import execute_from_command_line

    argv = list(sys.argv if argv is None else argv)
    if len(argv) > 1 and argv[1] in SUBCOMMANDS:
        argv[1] = argv[1].replace('-', '_')
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
