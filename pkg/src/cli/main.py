# Command-line front end: argument parsing and the mapping from errors to exit codes.

import argparse
import json
import logging

from config import DEFAULT_FUEL, DEFAULT_SEED, DEFAULT_SIM_STEPS, DEFAULT_SYSTEM, DEFAULT_TRIALS
from core import ParseError, RevisosError

from .commands import COMMAND_TABLE, EXIT_FAILURE, EXIT_INPUT
from .settings import CliConfig

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='revisos', description='Check, run, invert and prove reversible isos')
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', help='Type-check every definition of a file')
    check.add_argument('path', metavar='FILE', help='Source file (.iso)')
    check.add_argument('--json', action='store_true', help='Print a JSON report instead of one line per definition')

    run = commands.add_parser('run', help='Evaluate a term')
    run.add_argument('path', metavar='FILE', help='Source file (.iso)')
    run.add_argument('-e', '--expr', type=str, help='Term to evaluate (defaults to the file\'s main)')
    run.add_argument('--fuel', type=int, default=DEFAULT_FUEL, help='Maximum number of rewriting steps')
    run.add_argument('--system', choices=('main', 'explicit'), default=DEFAULT_SYSTEM, help='Rewriting system')
    run.add_argument('--trace', action='store_true', help='Print every step as a JSON line')
    run.add_argument('--backward', action='store_true', help='Apply the inverse of the applied iso')
    run.add_argument('--json', action='store_true', help='Print the result as JSON')
    run.add_argument('-o', '--output', type=str, help='Write the trace to this file')

    invert = commands.add_parser('invert', help='Print the inverse of every definition')
    invert.add_argument('path', metavar='FILE', help='Source file (.iso)')
    invert.add_argument('--name', type=str, help='Only invert this definition')
    invert.add_argument('-o', '--output', type=str, help='Write the inverse source to this file')

    rpp = commands.add_parser('rpp', help='Evaluate, compile or test an RPP program')
    rpp.add_argument('action', choices=('eval', 'compile', 'test'))
    rpp.add_argument('path', metavar='PROG', help='RPP program text, e.g. "It[S]"')
    rpp.add_argument('args', metavar='ARGS', type=int, nargs='*', help='Integer arguments')
    rpp.add_argument('--trials', type=int, default=DEFAULT_TRIALS, help='Random inputs for test')
    rpp.add_argument('--seed', type=int, default=DEFAULT_SEED, help='Seed for test')
    rpp.add_argument('--fuel', type=int, default=DEFAULT_FUEL, help='Step budget per run of the compiled iso')
    rpp.add_argument('-o', '--output', type=str, help='Write the compiled source to this file')

    proof = commands.add_parser('proof', help='Extract, validate or simulate proofs')
    proof.add_argument('action', choices=('extract', 'validate', 'simulate'))
    proof.add_argument('path', metavar='FILE', help='Source file (.iso)')
    proof.add_argument('--name', type=str, help='Definition to use (defaults to the last one)')
    proof.add_argument('-e', '--expr', type=str, help='Term to simulate (defaults to the file\'s main)')
    proof.add_argument('--steps', type=int, default=DEFAULT_SIM_STEPS, help='Step bound for simulate')
    proof.add_argument('--raw', action='store_true', help='Keep the exchange rules in extracted proofs')
    proof.add_argument('--depth', type=int, default=0, help='Unfold extracted proofs this many times')
    proof.add_argument('--json', action='store_true', help='Print JSON reports')
    proof.add_argument('-o', '--output', type=str, help='Write the JSON result to this file')
    return parser


def _report(e: RevisosError, path: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps({'file': path, 'error': e.to_dict()}, indent=2))
    elif isinstance(e, ParseError) and e.line is not None:
        column = f'{e.column}:' if e.column is not None else ''
        print(f'{path}:{e.line}:{column} error: {e}')
    else:
        print(f'{path}: error: {e}')


def main(argv: list[str] | None = None) -> int:
    '''Run one revisos command and return its exit code.'''
    args = build_parser().parse_args(argv)
    try:
        config = CliConfig.from_namespace(args)
    except ValueError as e:
        logger.error('Invalid options: %s', e)
        return EXIT_FAILURE
    logger.debug('Running %s', config.to_dict())
    try:
        return COMMAND_TABLE[config.command](config)
    except ParseError as e:
        logger.error('Cannot parse %s: %s', config.path, e)
        _report(e, config.path, config.json)
        return EXIT_INPUT
    except OSError as e:
        logger.error('Cannot read or write a file for %s: %s', config.path, e)
        return EXIT_INPUT
    except RevisosError as e:
        logger.error('%s failed: %s', config.command, e)
        _report(e, config.path, config.json)
        return EXIT_FAILURE
