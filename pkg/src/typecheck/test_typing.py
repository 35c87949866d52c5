# Tests for typing.py and recursion.py

import pytest

from config import CORPUS_DIR
from core import (NAT, App, Fix, Fold, InjL, IsoType, IsoVar, LetT, LinearityError, Pair, PairT, Prod, PVar,
                  StructuralRecursionError, Sum, TypeCheckError, Unit, UnitT, UnitV, VarT, VarV, type_unfold)
from parser import parse, parse_file, parse_iso, parse_term, parse_type
from typecheck import (CLOSED, EMPTY_ISO_CTX, IsoCtx, NotRecursive, RecInfo, check_structural_recursion,
                       elaborate, type_iso, type_term, type_value)

B = Sum(Unit(), Unit())
SWAP = parse_iso('({ (a, b) <-> (b, a) } :: (1 + 1) * 1 <-> 1 * (1 + 1))')


def corpus_iso(filename, name):
    return parse_file(CORPUS_DIR / filename).get(name).iso


# Asserts that iso is rejected with the given error and message fragment
def assert_rejected(iso, error, fragment):
    with pytest.raises(error) as info:
        type_iso(EMPTY_ISO_CTX, iso)
    assert fragment in str(info.value)


def test_type_value():
    ctx = type_value(Pair(VarV('x'), Fold(VarV('y'))), Prod(Unit(), NAT))
    assert ctx == {'x': Unit(), 'y': type_unfold(NAT)}
    assert type_value(UnitV(), Unit()) == {}


def test_type_value_errors():
    with pytest.raises(TypeCheckError):
        type_value(InjL(UnitV()), Prod(Unit(), Unit()))
    with pytest.raises(LinearityError):
        type_value(Pair(VarV('x'), VarV('x')), Prod(Unit(), Unit()))


def test_type_term_application():
    t = App(SWAP, PairT(VarT('x'), UnitT()))
    assert type_term({'x': B}, EMPTY_ISO_CTX, t) == Prod(Unit(), B)


def test_type_term_pair():
    assert type_term({'x': B, 'y': NAT}, EMPTY_ISO_CTX, PairT(VarT('x'), VarT('y'))) == Prod(B, NAT)


def test_linearity():
    with pytest.raises(LinearityError):
        type_term({'x': B}, EMPTY_ISO_CTX, PairT(VarT('x'), VarT('x')))
    with pytest.raises(LinearityError):
        type_term({'x': B, 'y': B}, EMPTY_ISO_CTX, VarT('x'))
    with pytest.raises(LinearityError):
        type_term({}, EMPTY_ISO_CTX, VarT('x'))


def test_iso_variables():
    with pytest.raises(TypeCheckError):
        type_term({}, EMPTY_ISO_CTX, App(IsoVar('f'), UnitT()))
    ctx = IsoCtx().bind('f', IsoType(Unit(), B))
    assert type_term({}, ctx, App(IsoVar('f'), UnitT())) == B


def test_injections_need_expected_type():
    with pytest.raises(TypeCheckError):
        type_term({}, EMPTY_ISO_CTX, parse_term('injl ()'))
    assert type_term({}, EMPTY_ISO_CTX, parse_term('injl ()'), B) == B
    with pytest.raises(TypeCheckError):
        type_term({}, EMPTY_ISO_CTX, parse_term('injl ()'), Unit())


def test_let_term():
    t = parse_term('let (a, b) = (x, ()) in (b, a)')
    assert type_term({'x': NAT}, EMPTY_ISO_CTX, t) == Prod(Unit(), NAT)
    with pytest.raises(LinearityError):
        type_term({'x': NAT}, EMPTY_ISO_CTX, parse_term('let (a, b) = (x, ()) in a'))


def test_elaborate_records_bound_types():
    iso = corpus_iso('swap.iso', 'swap_mixed')
    t = LetT(PVar('p'), App(iso, PairT(UnitT(), VarT('b'))), VarT('p'))
    elaborated, a = elaborate(LetT(PVar('b'), parse_term('injl ()'), t, B))
    assert a == Prod(B, Unit())
    assert elaborated.body.bound_type == Prod(B, Unit())


def test_iso1():
    assert type_iso(EMPTY_ISO_CTX, corpus_iso('iso1.iso', 'iso1')) == IsoType(parse_type('1 + (1 + 1)'),
                                                                               parse_type('1 + (1 + 1)'))


def test_successor():
    z = parse_type('1 + ((mu X. 1 + X) + (mu X. 1 + X))')
    assert type_iso(EMPTY_ISO_CTX, corpus_iso('nat_succ.iso', 'succ')) == IsoType(z, z)


def test_corpus_types():
    for name in ['swap.iso', 'iso1.iso', 'map_swap.iso', 'nat_succ.iso']:
        source = parse_file(CORPUS_DIR / name)
        for definition in source.definitions:
            assert type_iso(EMPTY_ISO_CTX, definition.iso) == definition.iso_type, definition.name


def test_swap_mismatch():
    iso = parse_iso('({ (a, b) <-> (a, b) } :: 1 * (1 + 1) <-> (1 + 1) * 1)')
    assert_rejected(iso, TypeCheckError, 'clause 1')


def test_unused_clause_variable():
    iso = parse_iso('({ (a, b) <-> a } :: 1 * 1 <-> 1)')
    assert_rejected(iso, LinearityError, "'b'")


def test_non_exhaustive_rejected():
    iso = parse_iso('({ injl () <-> () } :: 1 + 1 <-> 1)')
    assert_rejected(iso, TypeCheckError, 'no value covers')


def test_remark_rejected():
    assert_rejected(corpus_iso('od_remark.iso', 'remark'), TypeCheckError, 'neither decomposition')


def test_structural_recursion_of_map():
    iso = corpus_iso('map_swap.iso', 'map_swap')
    info = check_structural_recursion(iso)
    assert info == RecInfo(1, 1, [CLOSED, 't'])
    assert info.to_dict() == {'index': 1, 'arity': 1, 'focus': [CLOSED, 't']}


def test_loop_not_structurally_recursive():
    iso = corpus_iso('loop.iso', 'loop')
    with pytest.raises(StructuralRecursionError):
        check_structural_recursion(iso)
    assert_rejected(iso, StructuralRecursionError, 'not structurally recursive')
    assert type_iso(EMPTY_ISO_CTX, iso, check_recursion=False) == IsoType(Unit(), Unit())


def test_cantor_not_structurally_recursive():
    assert_rejected(corpus_iso('cantor.iso', 'cantor'), StructuralRecursionError, 'not structurally recursive')


def test_call_on_whole_argument_rejected():
    iso = parse_iso('(fix f. { x <-> let y = f x in y } :: mu X. 1 + X <-> mu X. 1 + X)')
    assert_rejected(iso, StructuralRecursionError, 'strict subterm')


def test_recursion_on_first_of_two_components():
    iso = parse_iso('(fix f. { (fold injl (), y) <-> (fold injl (), y) '
                    "| (fold injr n, y) <-> let (n', y') = f (n, y) in (fold injr n', y') } "
                    ':: (mu X. 1 + X) * (1 + 1) <-> (mu X. 1 + X) * (1 + 1))')
    assert check_structural_recursion(iso) == RecInfo(1, 2, [CLOSED, 'n'])
    assert type_iso(EMPTY_ISO_CTX, iso) == IsoType(Prod(NAT, B), Prod(NAT, B))


def test_fix_without_call():
    iso = parse_iso('(fix f. { x <-> x } :: 1 <-> 1)')
    assert check_structural_recursion(iso) == NotRecursive('f')
    assert type_iso(EMPTY_ISO_CTX, iso) == IsoType(Unit(), Unit())


def test_inline_iso_may_not_call_fix_variable():
    iso = parse_iso('(fix f. { fold injl () <-> fold injl () '
                    '| fold injr n <-> let m = ({ k <-> let j = f k in j } :: mu X. 1 + X <-> mu X. 1 + X) n '
                    'in fold injr m } :: mu X. 1 + X <-> mu X. 1 + X)')
    assert_rejected(iso, StructuralRecursionError, 'inside another iso')
    # without the recursion check the call is typed against the enclosing fix
    assert type_iso(EMPTY_ISO_CTX, iso, check_recursion=False) == IsoType(NAT, NAT)


def test_program_main_types():
    source = parse('def id :: 1 + 1 <-> 1 + 1 = { x <-> x }\nmain = id injr ()')
    assert elaborate(source.main)[1] == B
