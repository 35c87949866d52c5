# Tests for invert.py

import random

from config import CORPUS_DIR
from core import Clause, Clauses, IsoVar, Let, PVar, Val, iso_annotation
from parser import parse_file, parse_iso, parse_value, random_iso
from typecheck import EMPTY_ISO_CTX, type_iso
from invert import invert

WELL_TYPED = ['swap.iso', 'iso1.iso', 'map_swap.iso', 'nat_succ.iso', 'loop.iso']


def corpus_definitions():
    for name in WELL_TYPED:
        yield from parse_file(CORPUS_DIR / name).definitions


def test_swap():
    assert invert(parse_iso('{ (x, y) <-> (y, x) }')) == parse_iso('{ (y, x) <-> (x, y) }')


def test_let_chain_reversed():
    iso = parse_iso('{ (a, b) <-> let c = f a in let (d, e) = g (c, b) in (e, d) }')
    assert invert(iso) == parse_iso('{ (e, d) <-> let (c, b) = g (d, e) in let a = f c in (a, b) }')


def test_map_dual():
    source = parse_file(CORPUS_DIR / 'map_swap.iso')
    swap = source.get('swap').iso
    dual = invert(source.get('map_swap').iso)
    nil, cons = dual.body.clauses
    assert nil == Clause(parse_value('fold injl ()'), Val(parse_value('fold injl ()')))
    assert cons.lhs == parse_value("fold injr (h', t')")
    assert cons.rhs == Let(PVar('t'), IsoVar('f'), PVar("t'"),
                           Let(PVar('h'), invert(swap), PVar("h'"), Val(parse_value('fold injr (h, t)'))))
    assert dual.annotation == source.get('map_swap').iso_type.flip()
    assert isinstance(dual.body, Clauses)


def test_involution_on_corpus():
    for definition in corpus_definitions():
        assert invert(invert(definition.iso)) == definition.iso


def test_involution_on_random_isos():
    rng = random.Random(42)
    for _ in range(500):
        iso = random_iso(rng, 3)
        assert invert(invert(iso)) == iso


def test_type_flip():
    for definition in corpus_definitions():
        check = definition.name != 'loop'
        iso_type = type_iso(EMPTY_ISO_CTX, definition.iso, check_recursion=check)
        assert type_iso(EMPTY_ISO_CTX, invert(definition.iso), check_recursion=check) == iso_type.flip()
        assert iso_annotation(invert(definition.iso)) == iso_type.flip()
