# Tests for cuts.py: cut reduction and simulation of the explicit system

import random

from config import CORPUS_DIR
from core import App, Unit, closed_values, random_value, value_to_term
from evaluation import EvalConfig, evaluate
from parser import parse_file, parse_term, parse_value
from proofs import (Address, Derivation, Formula, NoRedex, Sequent, compose_inverse_proof, cut_step,
                    equal_modulo_addresses, extract_proof, floor, is_closed_value_proof, pos_term, reduce_cut,
                    simulate, supply_after, unroll, well_formed)

ONE = Unit()
# Corpus definitions that type-check, as (file, definition) pairs
CORPUS_ISOS = [('iso1.iso', 'iso1'), ('swap.iso', 'swap'), ('swap.iso', 'swap_mixed'), ('nat_succ.iso', 'succ'),
               ('map_swap.iso', 'swap'), ('map_swap.iso', 'map_swap')]


def corpus_source(filename):
    return parse_file(CORPUS_DIR / filename)


# Every argument of fold depth up to 3 for each corpus definition, then seeded random
# arguments of depth up to 4 until there are count pairs
def corpus_pairs(count, seed=0):
    definitions = [corpus_source(filename).get(name) for filename, name in CORPUS_ISOS]
    pairs = [(d, v) for d in definitions for v in closed_values(d.iso_type.lhs, 3)]
    rng = random.Random(seed)
    while len(pairs) < count:
        d = rng.choice(definitions)
        pairs.append((d, random_value(d.iso_type.lhs, rng, 4)))
    return pairs[:count]


# Applies cut_step until nothing is left to reduce, failing after limit steps
def normalize(d, limit=200):
    for _ in range(limit):
        well_formed(d)
        reduct = cut_step(d)
        if isinstance(reduct, NoRedex):
            return d, reduct
        d = reduct
    raise AssertionError(f'no normal form after {limit} cut steps')


def test_axiom_cut():
    unit = Derivation('one', Sequent([], [], Formula(ONE, Address(0))))
    axiom = Derivation('id', Sequent([Formula(ONE, Address(0))], [], Formula(ONE, Address(1))))
    cut = Derivation('cut', Sequent([], [], Formula(ONE, Address(1))), [unit, axiom])
    assert cut_step(cut) == Derivation('one', Sequent([], [], Formula(ONE, Address(1))))


def test_principal_tensor_par():
    d = floor(pos_term(parse_term('let (a, b) = ((), ()) in (b, a)')))
    reduct = cut_step(d)
    assert reduct.rule == 'cut'
    assert reduct.premises[0].rule == 'one'
    assert reduct.premises[1].rule == 'cut'
    assert reduct.premises[1].premises[1].rule == 'tensor'
    well_formed(reduct)


def test_cut_free_has_no_redex():
    d = extract_proof(corpus_source('iso1.iso').get('iso1').iso)
    assert cut_step(d) == NoRedex('the derivation is cut-free')


def test_normalize_application():
    source = corpus_source('swap.iso')
    d, stop = normalize(floor(pos_term(source.main)))
    assert stop.reason == 'the derivation is cut-free'
    expected_type = source.get('swap_mixed').iso_type.rhs
    value = pos_term(parse_term('(injl (), ())'), expected=expected_type)
    assert is_closed_value_proof(d)
    assert equal_modulo_addresses(d, value)


def test_normalize_successor():
    source = corpus_source('nat_succ.iso')
    d, _ = normalize(floor(pos_term(source.main)))
    result = evaluate(source.main).value
    assert equal_modulo_addresses(d, pos_term(value_to_term(result), expected=source.get('succ').iso_type.rhs))


def test_unroll():
    d = extract_proof(corpus_source('map_swap.iso').get('map_swap').iso)
    unrolled = unroll(d, supply_after(d))
    assert unrolled.label is None
    labels = [node.label for _, node in unrolled.nodes() if node.label]
    assert labels == ['f']
    well_formed(unrolled)


def test_unroll_at_cut():
    cut = floor(pos_term(corpus_source('map_swap.iso').main))
    reduct = reduce_cut(cut, supply_after(cut))
    assert reduct.premises[0] == cut.premises[0]
    assert reduct.premises[1].label is None
    assert reduct.premises[1].rule == 'nu'


def test_simulate_swap():
    source = corpus_source('swap.iso')
    report = simulate(source.main)
    assert report.agreed, report.divergence
    assert report.finished
    assert report.value == parse_value('(injl (), ())')
    assert [c.rule for c in report.checkpoints] == [
        'beta-IsoApp', 'elet-pair-left', 'elet-pair-right', 'elet-var', 'elet-var']
    assert [c.cut_steps for c in report.checkpoints] == [1, 1, 1, 1, 1]
    assert is_closed_value_proof(report.proof)
    assert report.to_dict()['cut_steps'] == 5


def test_simulate_corpus():
    for filename in ('iso1.iso', 'nat_succ.iso', 'map_swap.iso'):
        source = corpus_source(filename)
        report = simulate(source.main)
        assert report.agreed, (filename, report.divergence)
        assert report.finished
        assert report.value == evaluate(source.main, EvalConfig(system='explicit')).value
        assert is_closed_value_proof(report.proof)


def test_simulate_corpus_arguments():
    pairs = corpus_pairs(50)
    assert len(pairs) == 50
    for definition, v in pairs:
        t = App(definition.iso, value_to_term(v))
        report = simulate(t)
        assert report.agreed, (definition.name, v, report.divergence)
        assert report.finished
        assert report.value == evaluate(t, EvalConfig(system='explicit')).value
        assert is_closed_value_proof(report.proof)


def test_simulate_recursion_unrolls():
    report = simulate(corpus_source('map_swap.iso').main)
    rules = [c.rule for c in report.checkpoints]
    assert rules.count('beta-IsoRec') == 3
    unrolls = [c.cut_steps for c in report.checkpoints if c.rule == 'beta-IsoRec']
    assert unrolls == [1, 1, 1]


def test_simulate_without_splitting():
    report = simulate(parse_term('let (a, b) = ((), ()) in (b, a)'), split_lets=False)
    assert report.agreed, report.divergence
    assert report.checkpoints[0].rule == 'beta-LetE'
    assert report.value == parse_value('((), ())')


def test_simulate_step_bound():
    report = simulate(corpus_source('swap.iso').main, steps=2)
    assert report.agreed
    assert not report.finished
    assert len(report.checkpoints) == 2
    assert report.value is None


def test_compose_inverse():
    source = corpus_source('swap.iso')
    iso = source.get('swap_mixed').iso
    v = parse_value('((), injr ())')
    report = compose_inverse_proof(iso, v)
    assert report.agreed, report.divergence
    assert report.value == v
    expected = pos_term(value_to_term(v), expected=source.get('swap_mixed').iso_type.lhs)
    assert equal_modulo_addresses(report.proof, expected)


def test_compose_inverse_recursive():
    source = corpus_source('map_swap.iso')
    definition = source.get('map_swap')
    v = parse_value('fold injr (((), injl ()), fold injl ())')
    report = compose_inverse_proof(definition.iso, v)
    assert report.agreed, report.divergence
    assert report.value == v
    assert equal_modulo_addresses(report.proof, pos_term(value_to_term(v), expected=definition.iso_type.lhs))


def test_compose_inverse_corpus_arguments():
    pairs = random.Random(1).sample(corpus_pairs(50), 20)
    for definition, v in pairs:
        report = compose_inverse_proof(definition.iso, v)
        assert report.agreed, (definition.name, v, report.divergence)
        assert report.finished
        assert report.value == v
        expected = pos_term(value_to_term(v), expected=definition.iso_type.lhs)
        assert equal_modulo_addresses(report.proof, expected)
