# Substitutions of values for term variables, and of isos for iso-variables.

from __future__ import annotations

from typing import Iterator

from attrs import field, frozen

from .errors import MatchError
from .syntax import (App, Clause, Clauses, Expr, Fix, Fold, FoldT, InjL, InjLT, InjR, InjRT, Iso,
                     IsoVar, Let, LetT, Pair, PairT, Pattern, PPair, PVar, Term, UnitT, UnitV,
                     Val, Value, VarT, VarV, pattern_vars, value_to_pattern, value_to_term)


@frozen
class Subst:
    '''
    A finite mapping from term variables to values, kept in binding order.
    :param tuple pairs: (name, value) pairs with pairwise distinct names
    '''
    pairs: tuple[tuple[str, Value], ...] = field(converter=tuple, default=())

    def __attrs_post_init__(self) -> None:
        names = [name for name, _ in self.pairs]
        if len(names) != len(set(names)):
            raise MatchError(f'substitution binds a variable twice: {names}')

    @classmethod
    def of(cls, mapping: dict[str, Value]) -> 'Subst':
        return cls(tuple(mapping.items()))

    @property
    def support(self) -> list[str]:
        return [name for name, _ in self.pairs]

    @property
    def mapping(self) -> dict[str, Value]:
        return dict(self.pairs)

    def get(self, name: str) -> Value | None:
        for key, value in self.pairs:
            if key == name:
                return value
        return None

    def union(self, other: 'Subst') -> 'Subst':
        overlap = set(self.support) & set(other.support)
        if overlap:
            raise MatchError(f'overlapping supports: {sorted(overlap)}')
        return Subst(self.pairs + other.pairs)

    def without(self, names: set[str] | list[str]) -> 'Subst':
        names = set(names)
        return Subst(tuple((k, v) for k, v in self.pairs if k not in names))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[str, Value]]:
        return iter(self.pairs)


EMPTY = Subst()


def _subst_value(s: Subst, v: Value) -> Value:
    if isinstance(v, VarV):
        found = s.get(v.name)
        return v if found is None else found
    if isinstance(v, InjL):
        return InjL(_subst_value(s, v.value))
    if isinstance(v, InjR):
        return InjR(_subst_value(s, v.value))
    if isinstance(v, Fold):
        return Fold(_subst_value(s, v.value))
    if isinstance(v, Pair):
        return Pair(_subst_value(s, v.left), _subst_value(s, v.right))
    return v


def _subst_term(s: Subst, t: Term) -> Term:
    if not len(s):
        return t
    if isinstance(t, VarT):
        found = s.get(t.name)
        return t if found is None else value_to_term(found)
    if isinstance(t, InjLT):
        return InjLT(_subst_term(s, t.term))
    if isinstance(t, InjRT):
        return InjRT(_subst_term(s, t.term))
    if isinstance(t, FoldT):
        return FoldT(_subst_term(s, t.term))
    if isinstance(t, PairT):
        return PairT(_subst_term(s, t.left), _subst_term(s, t.right))
    if isinstance(t, App):
        return App(t.iso, _subst_term(s, t.arg))
    if isinstance(t, LetT):
        inner = s.without(pattern_vars(t.pattern))
        return LetT(t.pattern, _subst_term(s, t.bound), _subst_term(inner, t.body), t.bound_type)
    return t


def _subst_pattern(s: Subst, p: Pattern) -> Pattern:
    v = _subst_value(s, _as_value(p))
    result = value_to_pattern(v)
    if result is None:
        raise ValueError('substitution leaves pattern syntax; convert the expression with expr_to_term first')
    return result


def _as_value(p: Pattern) -> Value:
    if isinstance(p, PVar):
        return VarV(p.name)
    return Pair(_as_value(p.left), _as_value(p.right))


def _subst_expr(s: Subst, e: Expr) -> Expr:
    if isinstance(e, Val):
        return Val(_subst_value(s, e.value))
    inner = s.without(pattern_vars(e.pattern))
    return Let(e.pattern, e.iso, _subst_pattern(s, e.arg), _subst_expr(inner, e.body))


def apply_subst(s: Subst, x: Value | Term | Expr) -> Value | Term | Expr:
    '''Homomorphic replacement; isos are left untouched and let patterns shadow.'''
    if isinstance(x, (UnitV, VarV, InjL, InjR, Pair, Fold)):
        return _subst_value(s, x)
    if isinstance(x, (Val, Let)):
        return _subst_expr(s, x)
    return _subst_term(s, x)


def subst_iso(x: Iso | Expr | Term, name: str, repl: Iso) -> Iso | Expr | Term:
    '''Replace the free iso-variable name by repl everywhere in x.'''
    if isinstance(x, IsoVar):
        return repl if x.name == name else x
    if isinstance(x, Fix):
        if x.var == name:
            return x
        return Fix(x.var, subst_iso(x.body, name, repl), x.annotation)
    if isinstance(x, Clauses):
        return Clauses(tuple(Clause(c.lhs, subst_iso(c.rhs, name, repl)) for c in x.clauses), x.annotation)
    if isinstance(x, Let):
        return Let(x.pattern, subst_iso(x.iso, name, repl), x.arg, subst_iso(x.body, name, repl))
    if isinstance(x, Val):
        return x
    if isinstance(x, App):
        return App(subst_iso(x.iso, name, repl), subst_iso(x.arg, name, repl))
    if isinstance(x, LetT):
        return LetT(x.pattern, subst_iso(x.bound, name, repl), subst_iso(x.body, name, repl), x.bound_type)
    if isinstance(x, (InjLT, InjRT, FoldT)):
        return type(x)(subst_iso(x.term, name, repl))
    if isinstance(x, PairT):
        return PairT(subst_iso(x.left, name, repl), subst_iso(x.right, name, repl))
    return x
