"""Command-line interface.

    pychen verify --family p1k --m 2 --k 0 --radius pi/4 --checks table1,chen2
    pychen atlas --family p1k,p2 --m 3 --out atlas.csv

Exit codes: 0 every record passes, 1 some record fails, 2 bad
configuration, 3 the output cannot be written.
"""

import argparse
import sys

from . import __version__
from .atlas import emit_atlas
from .config import FORMATS, RunConfig, split_list
from .diagnostics import set_quiet
from .errors import ConfigError, SpecError
from .suite import run_suite

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _int_list(text):
    try:
        return [int(item) for item in split_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _add_common(parser):
    parser.add_argument('--config', help="key = value file; flags override its values")
    parser.add_argument('--family', type=split_list, help="families, e.g. p1k,p2,h3")
    parser.add_argument('--m', type=_int_list, help="quaternionic dimensions, e.g. 2,3")
    parser.add_argument('--k', type=_int_list, help="core dimensions of P1k/H1k tubes (default: all)")
    parser.add_argument('--radius', type=split_list,
                        help="radii: numbers, angle expressions such as pi/4 or '30 deg', or auto:two-type, "
                             "auto:minimal, auto:mass-symmetric, auto:one-type")
    parser.add_argument('--seed', type=int, help="seed of the sample points (default 0)")
    parser.add_argument('--out', help="output file (default: standard output)")
    parser.add_argument('--quiet', action='store_true', help="no progress messages")


def build_parser():
    parser = argparse.ArgumentParser(prog='pychen', description="Chen-type verification of model hypersurfaces "
                                                                 "of quaternionic space forms.")
    parser.add_argument('--version', action='version', version=f"pychen {__version__}")
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', help="run named checks and write a report")
    _add_common(verify)
    verify.add_argument('--checks', type=split_list, help="checks to run (default: all)")
    verify.add_argument('--fd-step', type=float, help="step of the Laplacian oracle (default 1e-3)")
    verify.add_argument('--samples', type=int, help="chart points per check (default 10)")
    verify.add_argument('--format', choices=FORMATS, help="report format (default json)")

    atlas = commands.add_parser('atlas', help="write the classification atlas as CSV")
    _add_common(atlas)
    return parser


def config_from_args(args):
    """
    The RunConfig of parsed arguments, on top of ``--config`` if given.

    :raises ConfigError: on inconsistent settings.
    """
    overrides = {
        'families': args.family,
        'ms': args.m,
        'ks': args.k,
        'radii': args.radius,
        'checks': getattr(args, 'checks', None),
        'fd_step': getattr(args, 'fd_step', None),
        'seed': args.seed,
        'format': getattr(args, 'format', None),
        'out': args.out,
        'samples': getattr(args, 'samples', None),
        'quiet': args.quiet or None,
    }
    if args.config:
        return RunConfig.from_file(args.config, **overrides)
    return RunConfig.from_values({}, **overrides)


def _emit(text, path):
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    """Entry point; returns the exit code."""
    args = build_parser().parse_args(argv)
    set_quiet(args.quiet)
    try:
        config = config_from_args(args)
        if args.command == 'atlas':
            text = emit_atlas(config)
            if not config.out:
                sys.stdout.write(text)
            return EXIT_PASS
        report = run_suite(config)
        _emit(report.render(config.format), config.out)
    except (ConfigError, SpecError) as err:
        print(f"pychen: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"pychen: cannot write output: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
