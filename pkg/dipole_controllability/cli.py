# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Command line front end: check, classify4, sweep and model subcommands.

Exit codes: 0 ok, 2 parse error, 3 soundness disagreement (or table
mismatch), 4 domain or range error.
"""
import argparse
import logging
import sys

from .base import InvalidToleranceException, Tolerances
from .classifier4 import NotFourLevelException
from .file_utils import getUniqueFileName
from .model_zoo import MODEL_NAMES, InvalidModelParamsException, ModelParams, makeModel
from .report import ReportFormat, ReportWriterFactory, buildReport, reconstructTable
from .serialization import SpecFileLoadException, SpecFileSerializer
from .sweep import InvalidSweepParamsException, runSweep
from .system_model import InvalidSpecException

logger = logging.getLogger(__name__)


class ExitCode:
    """
    Process exit codes.
    """
    OK = 0
    PARSE_ERROR = 2
    DISAGREEMENT = 3
    DOMAIN_ERROR = 4


#Models whose size argument is l rather than N
_COMPOSITE_MODELS = ('coupled_oscillators', 'alternating_odd', 'coupled_two_level')


def _floatList(text):
    try:
        return [float(value) for value in text.split(',') if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected comma separated reals, got %r' % text)


def _addToleranceFlags(parser):
    parser.add_argument('--eps-param', type=float, default=None, help='Relative tolerance for scalar equalities')
    parser.add_argument('--eps-rank', type=float, default=None, help='Residual threshold for closure rank decisions')


def _buildParser():
    parser = argparse.ArgumentParser(prog='dipole-controllability',
                                     description='Controllability checks for N-level dipole systems')
    parser.add_argument('--debug', action='store_true', help='Enable debugging')
    subparsers = parser.add_subparsers(dest='command', required=True)

    check = subparsers.add_parser('check', help='Run the controllability criteria on a spec file')
    check.add_argument('input', metavar='filename', help='Spec file')
    check.add_argument('--oracle', action='store_true', help='Also compute the Lie closure and compare')
    check.add_argument('--json', action='store_true', help='Json output')
    _addToleranceFlags(check)

    classify = subparsers.add_parser('classify4', help='Four-level case classification')
    classify.add_argument('input', metavar='filename', nargs='?', help='Spec file with N = 4')
    classify.add_argument('--table', action='store_true', help='Reconstruct the four-level table against the oracle')
    classify.add_argument('--oracle', action='store_true', help='Also compute the Lie closure and compare')
    classify.add_argument('--json', action='store_true', help='Json output')
    _addToleranceFlags(classify)

    sweep = subparsers.add_parser('sweep', help='Seeded random soundness sweep')
    sweep.add_argument('--count', type=int, default=200, help='Number of random specs')
    sweep.add_argument('--nmin', type=int, default=2, help='Smallest number of levels')
    sweep.add_argument('--nmax', type=int, default=6, help='Largest number of levels')
    sweep.add_argument('--seed', type=int, default=0, help='Random seed')
    sweep.add_argument('--workers', type=int, default=1, help='Worker threads')
    sweep.add_argument('--json', action='store_true', help='Json output')
    _addToleranceFlags(sweep)

    model = subparsers.add_parser('model', help='Generate a spec file for a physical model')
    model.add_argument('name', nargs='?', choices=MODEL_NAMES, help='Model name')
    model.add_argument('--list', action='store_true', help='List model names')
    model.add_argument('--n', type=int, default=None, help='Number of levels')
    model.add_argument('--ell', type=int, default=None,
                       help='Size l of the composite models (N = 2l, or 2l + 1 for alternating_odd)')
    model.add_argument('--b', type=float, default=None, help='Morse anharmonicity B')
    model.add_argument('--c', type=float, default=None, help='Box energy scale C')
    model.add_argument('--z', type=float, default=None, help='Atomic number Z')
    model.add_argument('--mu', type=float, default=None, help='Oscillator spacing')
    model.add_argument('--delta', type=float, default=None, help='Coupled oscillator offset')
    model.add_argument('--variant', choices=('d1', 'd2'), default=None, help='Coupled oscillator dipole pattern')
    model.add_argument('--d', type=float, default=None, help='Coupled oscillator bridge dipole')
    model.add_argument('--dipoles', type=_floatList, default=None, help='Comma separated dipoles')
    model.add_argument('--ground-energy', type=float, default=None, help='Ground level energy')
    model.add_argument('--mirrored', action='store_true', default=None, help='Mirrored alternating pattern')
    model.add_argument('--seed', type=int, default=None, help='Seed for free spacings')
    model.add_argument('--emit', metavar='path', default=None, help='Write the spec file here (default: stdout)')
    model.add_argument('--keep-existing', action='store_true',
                       help='Write to a new file name instead of overwriting --emit')
    return parser


def _loadSpec(path, args):
    with open(path, 'r') as fp:
        spec, fileTolerances = SpecFileSerializer().load(fp)
    return spec, Tolerances.resolve(args.eps_param, args.eps_rank, fileTolerances)


def _writer(args, out):
    return ReportWriterFactory.createReportWriter(ReportFormat.JSON if args.json else ReportFormat.TEXT, out)


def _cmdCheck(args, out):
    spec, tolerances = _loadSpec(args.input, args)
    report = buildReport(spec, tolerances, args.oracle)
    _writer(args, out).writeReport(report)
    return ExitCode.DISAGREEMENT if report.getAgreement() is False else ExitCode.OK


def _cmdClassify4(args, out):
    tolerances = Tolerances.resolve(args.eps_param, args.eps_rank)
    if args.table:
        checks = reconstructTable(tolerances)
        _writer(args, out).writeTable(checks)
        return ExitCode.OK if all(c.isOk() for c in checks) else ExitCode.DISAGREEMENT
    spec, tolerances = _loadSpec(args.input, args)
    if spec.getN() != 4:
        raise NotFourLevelException('The four-level classification needs N = 4, got N = %d' % spec.getN())
    report = buildReport(spec, tolerances, args.oracle)
    _writer(args, out).writeReport(report)
    return ExitCode.DISAGREEMENT if report.getAgreement() is False else ExitCode.OK


def _cmdSweep(args, out):
    tolerances = Tolerances.resolve(args.eps_param, args.eps_rank)
    summary = runSweep(args.count, args.nmin, args.nmax, args.seed, args.workers, tolerances)
    _writer(args, out).writeSweep(summary)
    return ExitCode.DISAGREEMENT if summary.getDisagreements() else ExitCode.OK


def _cmdModel(args, out):
    if args.list:
        for name in MODEL_NAMES:
            out.write('%s\n' % name)
        return ExitCode.OK
    if args.name is None:
        raise InvalidModelParamsException('A model name is required (see --list)')
    size = args.ell if args.name in _COMPOSITE_MODELS else args.n
    if size is None:
        raise InvalidModelParamsException('Model %s needs %s' % (args.name,
                                                                  '--ell' if args.name in _COMPOSITE_MODELS else '--n'))
    params = ModelParams(args.name, size, B=args.b, C=args.c, Z=args.z, mu=args.mu, delta=args.delta,
                         variant=args.variant, d=args.d, dipoles=args.dipoles, groundEnergy=args.ground_energy,
                         mirrored=args.mirrored, seed=args.seed)
    spec = makeModel(params)
    serializer = SpecFileSerializer()
    if args.emit is None:
        serializer.dump(spec, out)
        return ExitCode.OK
    path = getUniqueFileName(args.emit) if args.keep_existing else args.emit
    with open(path, 'w') as fp:
        serializer.dump(spec, fp)
    logger.info('Wrote %s spec (N = %d) to %s', args.name, spec.getN(), path)
    return ExitCode.OK


_COMMANDS = {
    'check': _cmdCheck,
    'classify4': _cmdClassify4,
    'sweep': _cmdSweep,
    'model': _cmdModel,
}


##
# @param argv Command line arguments (sys.argv[1:] when None).
# @param out Output stream (sys.stdout when None).
# @return The process exit code.
def main(argv=None, out=None):
    out = out or sys.stdout
    parser = _buildParser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else ExitCode.PARSE_ERROR

    if args.debug:
        logging.basicConfig(level=logging.DEBUG)
    else:
        logging.basicConfig(level=logging.INFO)

    if args.command == 'classify4' and not args.table and args.input is None:
        sys.stderr.write('classify4: a spec file or --table is required\n')
        return ExitCode.PARSE_ERROR

    try:
        return _COMMANDS[args.command](args, out)
    except SpecFileLoadException as e:
        logger.error('Cannot load spec file: %s', e)
        return ExitCode.PARSE_ERROR
    except (NotFourLevelException, InvalidModelParamsException, InvalidSweepParamsException,
            InvalidToleranceException, InvalidSpecException) as e:
        logger.error('%s', e)
        return ExitCode.DOMAIN_ERROR
    except OSError as e:
        logger.error('%s', e)
        return ExitCode.PARSE_ERROR if args.command in ('check', 'classify4') else ExitCode.DOMAIN_ERROR


if __name__ == '__main__':
    sys.exit(main())
