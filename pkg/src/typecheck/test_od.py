# Tests for od.py

import random

import pytest

from config import CORPUS_DIR
from core import (NAT, Fix, Fold, InjL, InjR, ODFailure, Pair, Prod, Subst, Sum, Unit, UnitV, VarV, apply_subst,
                  closed_values, list_type, match_value, type_unfold, val_of_expr, value_vars)
from parser import parse_file, parse_type
from typecheck import check_od, match_unique, od_holds

B = Sum(Unit(), Unit())
# Exhaustive sweeps stop at this fold depth and at types with at most this many closed values
SWEEP_DEPTH = 5
SWEEP_CAP = 200
# Corpus files whose clause sets all pass check_od
OD_CORPUS = ['iso1.iso', 'swap.iso', 'nat_succ.iso', 'map_swap.iso']


# Asserts that every closed value of type a up to depth matches exactly one of vs
def assert_matches_once(a, vs, depth=SWEEP_DEPTH):
    values = closed_values(a, depth)
    assert len(values) <= SWEEP_CAP, a
    for v in values:
        i, s = match_unique(vs, v)
        assert apply_subst(s, vs[i]) == v


# Replaces one variable of one value by a one-step case split at its type,
# keeping the set exhaustive and non-overlapping
def split_once(rng, clauses, counter):
    i = rng.randrange(len(clauses))
    value, ctx = clauses[i]
    if not ctx:
        return clauses
    name = rng.choice(sorted(ctx))
    a = ctx.pop(name)

    def fresh():
        counter[0] += 1
        return f'x{counter[0]}'

    if isinstance(a, Unit):
        replacements = [(UnitV(), {})]
    elif isinstance(a, Sum):
        left, right = fresh(), fresh()
        replacements = [(InjL(VarV(left)), {left: a.left}), (InjR(VarV(right)), {right: a.right})]
    elif isinstance(a, Prod):
        left, right = fresh(), fresh()
        replacements = [(Pair(VarV(left), VarV(right)), {left: a.left, right: a.right})]
    else:
        inner = fresh()
        replacements = [(Fold(VarV(inner)), {inner: type_unfold(a)})]
    result = clauses[:i] + clauses[i + 1:]
    for v, new in replacements:
        result.append((apply_subst(Subst(((name, v),)), value), ctx | new))
    return result


def test_unit_and_sum():
    assert check_od(B, [InjL(UnitV()), InjR(UnitV())]).rule == 'sum'
    assert check_od(Unit(), [UnitV()]).rule == 'unit'


def test_single_variable_covers_anything():
    assert check_od(NAT, [VarV('x')]).rule == 'var'
    assert check_od(Prod(B, NAT), [VarV('x')]).size() == 1


def test_missing_case():
    with pytest.raises(ODFailure) as info:
        check_od(B, [InjL(UnitV())])
    assert info.value.type == Unit()
    assert info.value.values == []


def test_overlap():
    assert not od_holds(B, [VarV('x'), InjL(UnitV())])
    assert not od_holds(Unit(), [UnitV(), UnitV()])


def test_product_left_then_right():
    vs = [Pair(VarV('x'), InjL(UnitV())), Pair(VarV('y'), InjR(UnitV()))]
    derivation = check_od(Prod(B, B), vs)
    assert derivation.rule == 'prod-right'
    vs = [Pair(InjL(UnitV()), VarV('x')), Pair(InjR(UnitV()), VarV('y'))]
    assert check_od(Prod(B, B), vs).rule == 'prod-left'


def test_closed_components_group():
    vs = [Pair(InjL(UnitV()), InjL(UnitV())), Pair(InjL(UnitV()), InjR(UnitV())), Pair(InjR(UnitV()), VarV('z'))]
    derivation = check_od(Prod(B, B), vs)
    assert derivation.rule == 'prod-left'
    # one premise for the first components, then one per group
    assert len(derivation.premises) == 3


def test_remark_rejected():
    source = parse_file(CORPUS_DIR / 'od_remark.iso')
    iso = source.get('remark').iso
    a = parse_type('((1 + 1) + 1) * (1 + 1)')
    lhs = [c.lhs for c in iso.clauses]
    assert not od_holds(a, lhs)
    # the set is nonetheless exhaustive and non-overlapping
    for v in closed_values(a, 0):
        assert sum(1 for p in lhs if match_value(p, v) is not None) == 1


def test_iso1_match():
    iso = parse_file(CORPUS_DIR / 'iso1.iso').get('iso1').iso
    lhs = [c.lhs for c in iso.clauses]
    a = parse_type('1 + (1 + 1)')
    check_od(a, lhs)
    assert match_unique(lhs, InjR(InjL(UnitV()))) == (1, Subst((('b', UnitV()),)))
    assert len(closed_values(a, 0)) == 3
    assert_matches_once(a, lhs, 0)


def test_match_unique_example():
    assert match_unique([InjL(VarV('x')), InjR(VarV('y'))], InjR(UnitV())) == (1, Subst((('y', UnitV()),)))


def test_match_unique_rejects_open_value():
    with pytest.raises(ValueError):
        match_unique([VarV('x')], VarV('y'))


def test_soundness_on_generated_sets():
    rng = random.Random(7)
    types = [Prod(B, Sum(Unit(), B)), Sum(Prod(B, B), Unit()), NAT, Prod(NAT, B), list_type(B)]
    for a in types:
        for _ in range(40):
            counter = [0]
            clauses = [(VarV('x0'), {'x0': a})]
            for _ in range(rng.randint(0, 6)):
                clauses = split_once(rng, clauses, counter)
            vs = [v for v, _ in clauses]
            assert all(len(value_vars(v)) == len(set(value_vars(v))) for v in vs)
            if od_holds(a, vs):
                assert_matches_once(a, vs)


def test_soundness_on_corpus_clause_sets():
    checked = 0
    for filename in OD_CORPUS:
        for definition in parse_file(CORPUS_DIR / filename).definitions:
            clauses = definition.iso.body.clauses if isinstance(definition.iso, Fix) else definition.iso.clauses
            sides = [(definition.iso_type.lhs, [c.lhs for c in clauses]),
                     (definition.iso_type.rhs, [val_of_expr(c.rhs) for c in clauses])]
            for a, vs in sides:
                check_od(a, vs)
                assert_matches_once(a, vs)
                checked += 1
    assert checked == 12


def test_generated_sets_mostly_pass():
    rng = random.Random(11)
    a = Prod(Sum(Unit(), B), B)
    passed = 0
    for _ in range(50):
        counter = [0]
        clauses = [(VarV('x0'), {'x0': a})]
        for _ in range(rng.randint(1, 5)):
            clauses = split_once(rng, clauses, counter)
        passed += od_holds(a, [v for v, _ in clauses])
    assert passed > 0


def test_derivation_to_dict():
    d = check_od(B, [InjL(UnitV()), InjR(UnitV())]).to_dict()
    assert d['rule'] == 'sum'
    assert d['type'] == '1 + 1'
    assert [p['rule'] for p in d['premises']] == ['unit', 'unit']
