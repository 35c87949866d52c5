# The subcommands of revisos. Each one takes a CliConfig, prints its result and returns
# an exit code; errors are left to cli.main to report.

import json
import logging
import random
from pathlib import Path
from typing import Any

from config import RPP_INPUT_RANGE
from core import App, Fix, Iso, ODFailure, RevisosError, StructuralRecursionError, Term, TypeCheckError
from evaluation import EvalConfig, apply_iso, evaluate, run_backward
from invert import invert
from parser import Definition, SourceFile, parse_file, pretty, pretty_definition
from proofs import Derivation, check_validity, dump_proof, extract_proof, simulate, unfold
from rpp import RppFun, compile_rpp, compile_source, decode_tuple, encode_tuple, parse_rpp, rpp_eval
from typecheck import EMPTY_ISO_CTX, RecInfo, check_structural_recursion, elaborate, type_iso

from .settings import CliConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_FUEL = 2
EXIT_INPUT = 3


def _load(config: CliConfig) -> SourceFile:
    source = parse_file(config.path)
    logger.info('Loaded %s', config.path)
    return source


def _definition(source: SourceFile, config: CliConfig) -> Definition:
    return source.get(config.name) if config.name else source.last


def _term(source: SourceFile, config: CliConfig) -> Term:
    if config.expr is not None:
        return source.parse_term(config.expr)
    if source.main is None:
        raise RevisosError(f'{source.filename} has no main; pass an expression with -e')
    return source.main


def _emit(text: str, output: str | None) -> None:
    '''Print text, or write it to output when one is given.'''
    if output is None:
        print(text, end='' if text.endswith('\n') else '\n')
        return
    Path(output).write_text(text if text.endswith('\n') else text + '\n', encoding='utf-8')
    logger.info('Wrote %s', output)


def _dumps(data: Any) -> str:
    return json.dumps(data, indent=2)

# check


def check_definition(d: Definition) -> dict[str, Any]:
    '''Type d and find its recursion witness.'''
    report: dict[str, Any] = {'name': d.name, 'type': pretty(d.iso_type), 'line': d.line}
    try:
        type_iso(EMPTY_ISO_CTX, d.iso, d.iso_type)
    except TypeCheckError as e:
        logger.debug('%s failed to check: %s', d.name, e)
        report.update(ok=False, od='failed' if isinstance(e, ODFailure) else None, recursion=None,
                      error=e.to_dict())
        return report
    witness = check_structural_recursion(d.iso, d.iso_type) if isinstance(d.iso, Fix) else None
    report.update(ok=True, od='ok', recursion=witness.to_dict() if isinstance(witness, RecInfo) else None)
    return report


def _check_line(filename: str, report: dict[str, Any]) -> str:
    if not report['ok']:
        return f'{filename}:{report["line"]}: error: {report["name"]}: {report["error"]["message"]}'
    recursion = report['recursion']
    shape = 'non-recursive' if recursion is None else f'decreasing on argument {recursion["index"]}'
    return f'{report["name"]} :: {report["type"]}, OD ok, {shape}'


def cmd_check(config: CliConfig) -> int:
    source = _load(config)
    reports = [check_definition(d) for d in source.definitions]
    ok = all(r['ok'] for r in reports)
    if config.json:
        _emit(_dumps({'file': source.filename, 'ok': ok, 'definitions': reports}), config.output)
    else:
        _emit('\n'.join(_check_line(source.filename, r) for r in reports), config.output)
    if not ok:
        failed = [r['name'] for r in reports if not r['ok']]
        logger.error('%s: %d definition(s) failed to check: %s', source.filename, len(failed), ', '.join(failed))
        return EXIT_FAILURE
    return EXIT_OK

# run


def cmd_run(config: CliConfig) -> int:
    source = _load(config)
    t = _term(source, config)
    if config.backward:
        if not isinstance(t, App):
            raise RevisosError(f'--backward needs an iso application, got {pretty(t)}')
        t = App(invert(t.iso), t.arg)
    t, result_type = elaborate(t, check_recursion=False)
    logger.info('Running %s : %s', pretty(t), pretty(result_type))
    result = evaluate(t, EvalConfig(fuel=config.fuel, trace=config.trace, system=config.system))
    if config.trace:
        _emit(result.trace.to_json_lines(), config.output)
    if config.json:
        print(_dumps(result.to_dict()))
    elif not result.exhausted:
        print(pretty(result.term))
    if result.exhausted:
        if not config.json:
            print(f'fuel exhausted after {result.steps} steps')
        logger.error('Fuel exhausted after %d steps; the last term was %s', result.steps, pretty(result.term))
        return EXIT_FUEL
    return EXIT_OK

# invert


def cmd_invert(config: CliConfig) -> int:
    source = _load(config)
    definitions = [source.get(config.name)] if config.name else source.definitions
    blocks = [pretty_definition(Definition(d.name, invert(d.iso), d.iso_type.flip(), d.line)) for d in definitions]
    _emit('\n\n'.join(blocks), config.output)
    return EXIT_OK

# rpp


def rpp_trial(iso: Iso, f: RppFun, xs: list[int], config: CliConfig) -> str | None:
    '''Compare the compiled iso with the oracle on xs, both ways; None when they agree.'''
    expected = rpp_eval(f, xs)
    eval_config = EvalConfig(fuel=config.fuel, system=config.system)
    forward = apply_iso(iso, encode_tuple(xs), eval_config)
    if forward.exhausted:
        return f'{xs}: fuel exhausted after {forward.steps} steps'
    got = decode_tuple(forward.value, f.arity)
    if got != expected:
        return f'{xs}: oracle gives {list(expected)}, the iso gives {list(got)}'
    backward = run_backward(iso, encode_tuple(expected), eval_config)
    if backward.exhausted:
        return f'{xs}: fuel exhausted after {backward.steps} steps backwards'
    back = decode_tuple(backward.value, f.arity)
    if list(back) != list(xs):
        return f'{xs}: the inverse iso gives {list(back)} on {list(expected)}'
    return None


def cmd_rpp(config: CliConfig) -> int:
    f = parse_rpp(config.path)
    if config.action == 'eval':
        print(' '.join(str(n) for n in rpp_eval(f, config.args)))
        return EXIT_OK
    if config.action == 'compile':
        _emit(compile_source(f, args=config.args or None), config.output)
        return EXIT_OK

    iso = compile_rpp(f)
    rng = random.Random(config.seed)
    low, high = RPP_INPUT_RANGE
    failures = []
    for _ in range(config.trials):
        xs = [rng.randint(low, high) for _ in range(f.arity)]
        problem = rpp_trial(iso, f, xs, config)
        if problem is not None:
            failures.append(problem)
            print(f'disagreement on {problem}')
    print(f'{config.trials - len(failures)}/{config.trials} trials agree for {f}')
    if failures:
        logger.error('%d of %d trials disagree for %s', len(failures), config.trials, f)
        return EXIT_FAILURE
    return EXIT_OK

# proof


def extract(d: Definition, raw: bool = False) -> tuple[Derivation, RecInfo | None]:
    '''The proof of d, with its recursion witness when d is structurally recursive.'''
    try:
        proof = extract_proof(d.iso, raw=raw)
    except StructuralRecursionError as e:
        logger.warning('%s: %s; extracting it anyway', d.name, e)
        return extract_proof(d.iso, raw=raw, check_recursion=False), None
    witness = check_structural_recursion(d.iso, d.iso_type) if isinstance(d.iso, Fix) else None
    return proof, witness if isinstance(witness, RecInfo) else None


def cmd_proof(config: CliConfig) -> int:
    source = _load(config)
    if config.action == 'simulate':
        return _simulate(source, config)

    d = _definition(source, config)
    proof, witness = extract(d, raw=config.raw)
    if config.action == 'extract':
        if config.depth:
            proof = unfold(proof, config.depth)
        _emit(dump_proof(proof), config.output)
        return EXIT_OK

    result = check_validity(proof, witness)
    valid = result.to_dict()['valid']
    if config.json or config.output:
        _emit(_dumps({'name': d.name, **result.to_dict()}), config.output)
    elif valid:
        loops = '; '.join(f'loop {w.label} decreasing on argument {w.index}, recurring {w.recurring}'
                          for w in result.loops)
        print(f'{d.name}: valid' + (f' ({loops})' if loops else ''))
    else:
        print(f'{d.name}: invalid: {result.reason}')
    if not valid:
        logger.error('%s is not a valid proof: %s', d.name, result.reason)
        return EXIT_FAILURE
    return EXIT_OK


def _simulate(source: SourceFile, config: CliConfig) -> int:
    t = _term(source, config)
    report = simulate(t, config.steps)
    logger.info('Simulated %d steps with %d cut steps', len(report.checkpoints), report.cut_steps)
    if config.json or config.output:
        _emit(_dumps(report.to_dict()), config.output)
    else:
        for c in report.checkpoints:
            print(f'step {c.step}: {c.rule} ({c.cut_steps} cut steps)')
        status = 'agreed' if report.agreed else f'diverged at {report.divergence}'
        final = pretty(report.term) if report.finished else f'{pretty(report.term)} (step bound reached)'
        print(f'{status}; {final}')
    if not report.agreed:
        logger.error('Simulation diverged: %s', report.divergence)
        return EXIT_FAILURE
    return EXIT_OK


COMMAND_TABLE = {
    'check': cmd_check,
    'run': cmd_run,
    'invert': cmd_invert,
    'rpp': cmd_rpp,
    'proof': cmd_proof,
}
