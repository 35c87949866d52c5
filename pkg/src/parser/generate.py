# Random syntactically well-formed isos, types and terms for round-trip checks.
# The output is not meant to type-check.

import random

from core import (App, BaseType, Clause, Clauses, Expr, Fix, Fold, FoldT, InjL, InjLT, InjR, InjRT, Iso,
                  IsoType, IsoVar, Let, LetT, Mu, NameSupply, Pair, PairT, PPair, Prod, PVar, Sum, Term, TVar, Unit,
                  UnitT, UnitV, Val, Value, VarT, VarV, annotate)

NAMES = ['x', 'y', 'z', 'a', 'b', 'c', 'h', 't', "x'", 'n']
ISO_NAMES = ['f', 'g', 'k']


def random_type(rng: random.Random, depth: int = 3, binders: tuple[str, ...] = ()) -> BaseType:
    if depth <= 0 or rng.random() < 0.25:
        if binders and rng.random() < 0.5:
            return TVar(rng.choice(binders))
        return Unit()
    kind = rng.choice(['sum', 'prod', 'mu'])
    if kind == 'mu':
        binder = rng.choice(['X', 'Y'])
        return Mu(binder, random_type(rng, depth - 1, binders + (binder,)))
    left = random_type(rng, depth - 1, binders)
    right = random_type(rng, depth - 1, binders)
    return Sum(left, right) if kind == 'sum' else Prod(left, right)


def random_open_value(rng: random.Random, names: NameSupply, depth: int = 3) -> Value:
    '''A random open value whose variables are drawn from names.'''
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.6:
            return VarV(names.fresh(rng.choice(NAMES)))
        return UnitV()
    kind = rng.choice(['injl', 'injr', 'fold', 'pair'])
    if kind == 'pair':
        return Pair(random_open_value(rng, names, depth - 1), random_open_value(rng, names, depth - 1))
    return {'injl': InjL, 'injr': InjR, 'fold': Fold}[kind](random_open_value(rng, names, depth - 1))


def random_pattern(rng: random.Random, names: NameSupply, depth: int = 2):
    if depth <= 0 or rng.random() < 0.5:
        return PVar(names.fresh(rng.choice(NAMES)))
    return PPair(random_pattern(rng, names, depth - 1), random_pattern(rng, names, depth - 1))


def random_expr(rng: random.Random, names: NameSupply, depth: int, iso_vars: tuple[str, ...]) -> Expr:
    if depth <= 0 or rng.random() < 0.4:
        return Val(random_open_value(rng, names, 2))
    arg = random_pattern(rng, names, 1)
    pattern = random_pattern(rng, names, 1)
    return Let(pattern, random_iso(rng, depth - 1, iso_vars), arg, random_expr(rng, names, depth - 1, iso_vars))


def random_iso(rng: random.Random, depth: int = 2, iso_vars: tuple[str, ...] = ()) -> Iso:
    '''A random iso over clause sets, fixpoints, iso-variables and annotations.'''
    roll = rng.random()
    if iso_vars and (depth <= 0 or roll < 0.2):
        return IsoVar(rng.choice(iso_vars))
    if depth > 0 and roll < 0.35:
        var = rng.choice(ISO_NAMES)
        return Fix(var, random_iso(rng, depth - 1, iso_vars + (var,)))
    clauses = []
    for _ in range(rng.randint(1, 3)):
        names = NameSupply()
        clauses.append(Clause(random_open_value(rng, names, 2), random_expr(rng, names, depth, iso_vars)))
    iso = Clauses(clauses)
    if rng.random() < 0.3:
        iso = annotate(iso, IsoType(random_type(rng), random_type(rng)))
    return iso


def random_term(rng: random.Random, depth: int = 3) -> Term:
    return _random_term(rng, depth, NameSupply())


def _random_term(rng: random.Random, depth: int, names: NameSupply) -> Term:
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return VarT(names.fresh(rng.choice(NAMES)))
        return UnitT()
    kind = rng.choice(['injl', 'injr', 'fold', 'pair', 'app', 'let'])
    if kind == 'pair':
        return PairT(_random_term(rng, depth - 1, names), _random_term(rng, depth - 1, names))
    if kind == 'app':
        return App(random_iso(rng, 1), _random_term(rng, depth - 1, names))
    if kind == 'let':
        pattern = random_pattern(rng, names, 1)
        return LetT(pattern, _random_term(rng, depth - 1, names), _random_term(rng, depth - 1, names))
    return {'injl': InjLT, 'injr': InjRT, 'fold': FoldT}[kind](_random_term(rng, depth - 1, names))
