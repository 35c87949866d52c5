# Tests for the revisos command line, run in-process

import json

import pytest

from cli import EXIT_FAILURE, EXIT_FUEL, EXIT_INPUT, EXIT_OK, CliConfig, build_parser, main
from config import CORPUS_DIR, GOLDEN_DIR
from parser import parse_file, parse_value, pretty_definition
from rpp import decode_tuple


def corpus(filename):
    return str(CORPUS_DIR / filename)


# Runs the command line and returns its exit code with what it printed
def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_config_validation():
    assert CliConfig('check', 'x.iso').fuel > 0
    with pytest.raises(ValueError):
        CliConfig('run', 'x.iso', fuel=0)
    with pytest.raises(ValueError):
        CliConfig('rpp', 'S', action='test', trials=0)
    with pytest.raises(ValueError):
        CliConfig('proof', 'x.iso', action='compile')
    config = CliConfig('run', 'x.iso', expr='swap ()', fuel=7)
    assert CliConfig.from_dict(config.to_dict()) == config


def test_parser_defaults():
    args = build_parser().parse_args(['rpp', 'eval', 'It[S]', '2', '-3'])
    config = CliConfig.from_namespace(args)
    assert config.action == 'eval'
    assert config.args == [2, -3]


def test_check_finite_iso(capsys):
    code, out = run_cli(capsys, 'check', corpus('iso1.iso'))
    assert code == EXIT_OK
    assert out.strip().endswith('OD ok, non-recursive')


def test_check_map(capsys):
    code, out = run_cli(capsys, 'check', corpus('map_swap.iso'))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith('swap :: ')
    assert lines[1].startswith('map_swap :: ')
    assert lines[1].endswith('decreasing on argument 1')


def test_check_cantor(capsys):
    code, out = run_cli(capsys, 'check', corpus('cantor.iso'))
    assert code == EXIT_FAILURE
    assert 'not structurally recursive' in out
    assert out.splitlines()[0].startswith('step :: ')


def test_check_json(capsys):
    code, out = run_cli(capsys, 'check', corpus('cantor.iso'), '--json')
    assert code == EXIT_FAILURE
    report = json.loads(out)
    assert not report['ok']
    step, cantor = report['definitions']
    assert step['ok'] and step['od'] == 'ok'
    assert cantor['error']['kind'] == 'StructuralRecursionError'


def test_check_od_remark(capsys):
    code, out = run_cli(capsys, 'check', corpus('od_remark.iso'))
    assert code == EXIT_FAILURE
    assert 'error:' in out


def test_check_missing_file(capsys):
    code, _ = run_cli(capsys, 'check', corpus('no_such_file.iso'))
    assert code == EXIT_INPUT


def test_check_syntax_error(capsys, tmp_path):
    path = tmp_path / 'broken.iso'
    path.write_text('def broken :: 1 <-> 1 =\n  { () <-> \n', encoding='utf-8')
    code, out = run_cli(capsys, 'check', path)
    assert code == EXIT_INPUT
    assert out.startswith(f'{path}:')
    assert 'error:' in out


def test_run_swap(capsys):
    code, out = run_cli(capsys, 'run', corpus('swap.iso'))
    assert code == EXIT_OK
    assert parse_value(out.strip()) == parse_value('(injl (), ())')


def test_run_expression(capsys):
    code, out = run_cli(capsys, 'run', corpus('swap.iso'), '-e', 'swap_mixed ((), injr ())', '--system', 'explicit')
    assert code == EXIT_OK
    assert parse_value(out.strip()) == parse_value('(injr (), ())')


def test_run_backward(capsys):
    code, out = run_cli(capsys, 'run', corpus('swap.iso'), '-e', 'swap_mixed (injl (), ())', '--backward')
    assert code == EXIT_OK
    assert parse_value(out.strip()) == parse_value('((), injl ())')


def test_run_trace(capsys):
    code, out = run_cli(capsys, 'run', corpus('swap.iso'), '--trace')
    assert code == EXIT_OK
    *steps, value = out.splitlines()
    entries = [json.loads(line) for line in steps]
    assert [e['step'] for e in entries] == list(range(1, len(entries) + 1))
    assert entries[-1]['term'] == value


def test_run_loop_exhausts_fuel(capsys):
    code, out = run_cli(capsys, 'run', corpus('loop.iso'), '--fuel', 50)
    assert code == EXIT_FUEL
    assert 'fuel exhausted after 50 steps' in out


def test_run_without_main(capsys, tmp_path):
    path = tmp_path / 'lib.iso'
    path.write_text('def ident :: 1 <-> 1 = { x <-> x }\n', encoding='utf-8')
    code, _ = run_cli(capsys, 'run', path)
    assert code == EXIT_FAILURE


def test_run_compiled_successor(capsys, tmp_path):
    path = tmp_path / 'succ.iso'
    assert run_cli(capsys, 'rpp', 'compile', 'S', 0, '-o', path) == (EXIT_OK, '')
    code, out = run_cli(capsys, 'run', path)
    assert code == EXIT_OK
    assert decode_tuple(parse_value(out.strip()), 1) == (1,)


def test_invert(capsys):
    code, out = run_cli(capsys, 'invert', corpus('swap.iso'), '--name', 'swap')
    assert code == EXIT_OK
    assert '(y, x) <-> (x, y)' in out


def test_invert_checks_and_round_trips(capsys, tmp_path):
    inverse = tmp_path / 'map_inverse.iso'
    assert run_cli(capsys, 'invert', corpus('map_swap.iso'), '-o', inverse)[0] == EXIT_OK
    assert run_cli(capsys, 'check', inverse)[0] == EXIT_OK
    code, out = run_cli(capsys, 'invert', inverse)
    assert code == EXIT_OK
    original = parse_file(corpus('map_swap.iso'))
    assert out == '\n\n'.join(pretty_definition(d) for d in original.definitions) + '\n'


def test_rpp_eval(capsys):
    assert run_cli(capsys, 'rpp', 'eval', 'It[S]', 2, 3) == (EXIT_OK, '5 3\n')
    assert run_cli(capsys, 'rpp', 'eval', 'Sign || P', -4, 0) == (EXIT_OK, '4 -1\n')


def test_rpp_arity_mismatch(capsys):
    code, _ = run_cli(capsys, 'rpp', 'eval', 'Swap', 1)
    assert code == EXIT_FAILURE


def test_rpp_malformed(capsys):
    code, _ = run_cli(capsys, 'rpp', 'eval', 'It[', 1)
    assert code == EXIT_FAILURE


def test_rpp_compile(capsys):
    code, out = run_cli(capsys, 'rpp', 'compile', 'Swap')
    assert code == EXIT_OK
    assert '{ (x, y) <-> (y, x) }' in out
    assert 'main' not in out


def test_rpp_test(capsys):
    code, out = run_cli(capsys, 'rpp', 'test', 'If[S,Id,P]', '--trials', 20, '--seed', 3)
    assert code == EXIT_OK
    assert out.strip().startswith('20/20 trials agree')


def test_rpp_test_is_deterministic(capsys):
    first = run_cli(capsys, 'rpp', 'test', 'S ; Swap', '--trials', 5)
    second = run_cli(capsys, 'rpp', 'test', 'S ; Swap', '--trials', 5)
    assert first == second


def test_proof_extract_golden(capsys, tmp_path):
    out_path = tmp_path / 'swap.json'
    code, _ = run_cli(capsys, 'proof', 'extract', corpus('swap.iso'), '--name', 'swap_mixed', '-o', out_path)
    assert code == EXIT_OK
    expected = json.loads((GOLDEN_DIR / 'swap.json').read_text(encoding='utf-8'))
    assert json.loads(out_path.read_text(encoding='utf-8')) == expected


def test_proof_extract_raw_and_unfolded(capsys):
    code, raw = run_cli(capsys, 'proof', 'extract', corpus('swap.iso'), '--name', 'swap_mixed', '--raw')
    assert code == EXIT_OK
    assert '"ex"' in raw
    code, unfolded = run_cli(capsys, 'proof', 'extract', corpus('map_swap.iso'), '--depth', 1)
    assert code == EXIT_OK
    _, folded = run_cli(capsys, 'proof', 'extract', corpus('map_swap.iso'))
    assert len(unfolded) > len(folded)


def test_proof_validate(capsys):
    code, out = run_cli(capsys, 'proof', 'validate', corpus('map_swap.iso'))
    assert code == EXIT_OK
    assert out.startswith('map_swap: valid (loop f decreasing on argument 1')
    code, out = run_cli(capsys, 'proof', 'validate', corpus('map_swap.iso'), '--json')
    assert code == EXIT_OK
    report = json.loads(out)
    assert report['valid']
    assert report['loops'][0]['index'] == 1


def test_proof_validate_invalid(capsys):
    code, out = run_cli(capsys, 'proof', 'validate', corpus('loop.iso'))
    assert code == EXIT_FAILURE
    assert out.startswith('loop: invalid:')
    code, _ = run_cli(capsys, 'proof', 'validate', corpus('cantor.iso'))
    assert code == EXIT_FAILURE


def test_proof_simulate(capsys):
    code, out = run_cli(capsys, 'proof', 'simulate', corpus('swap.iso'), '-e', 'swap_mixed ((), injl ())')
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == 'step 1: beta-IsoApp (1 cut steps)'
    assert lines[-1].startswith('agreed; ')
    code, out = run_cli(capsys, 'proof', 'simulate', corpus('map_swap.iso'), '--json')
    assert code == EXIT_OK
    report = json.loads(out)
    assert report['agreed'] and report['finished']


def test_proof_simulate_step_bound(capsys):
    code, out = run_cli(capsys, 'proof', 'simulate', corpus('swap.iso'), '--steps', 2)
    assert code == EXIT_OK
    assert out.splitlines()[-1].endswith('(step bound reached)')
