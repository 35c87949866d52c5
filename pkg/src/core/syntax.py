# Abstract syntax of values, patterns, expressions, isos and terms.
# Nodes are immutable; every rewrite builds a new tree.

from __future__ import annotations

from typing import Iterator

from attrs import evolve, field, frozen

from .types import BaseType, IsoType

# Values


@frozen
class UnitV:
    pass


@frozen
class VarV:
    name: str


@frozen
class InjL:
    value: Value


@frozen
class InjR:
    value: Value


@frozen
class Pair:
    left: Value
    right: Value


@frozen
class Fold:
    value: Value


Value = UnitV | VarV | InjL | InjR | Pair | Fold

# Patterns


@frozen
class PVar:
    name: str


@frozen
class PPair:
    left: Pattern
    right: Pattern


Pattern = PVar | PPair

# Expressions


@frozen
class Val:
    value: Value


@frozen
class Let:
    '''let pattern = iso arg in body'''
    pattern: Pattern
    iso: Iso
    arg: Pattern
    body: Expr


Expr = Val | Let

# Isos


@frozen
class Clause:
    lhs: Value
    rhs: Expr


@frozen
class Clauses:
    '''
    A clause set { v1 <-> e1 | ... | vn <-> en }.
    :param tuple clauses: the clauses, in source order
    :param IsoType annotation: declared type, when known
    '''
    clauses: tuple[Clause, ...] = field(converter=tuple)
    annotation: IsoType | None = None

    def __attrs_post_init__(self) -> None:
        if not self.clauses:
            raise ValueError('a clause set needs at least one clause')


@frozen
class Fix:
    var: str
    body: Iso
    annotation: IsoType | None = None


@frozen
class IsoVar:
    name: str


Iso = Clauses | Fix | IsoVar

# Terms


@frozen
class UnitT:
    pass


@frozen
class VarT:
    name: str


@frozen
class InjLT:
    term: Term


@frozen
class InjRT:
    term: Term


@frozen
class PairT:
    left: Term
    right: Term


@frozen
class FoldT:
    term: Term


@frozen
class App:
    iso: Iso
    arg: Term


@frozen
class LetT:
    '''
    let pattern = bound in body. bound_type records the type of bound when it is known;
    it takes no part in equality and is never printed.
    '''
    pattern: Pattern
    bound: Term
    body: Term
    bound_type: BaseType | None = field(default=None, eq=False)


Term = UnitT | VarT | InjLT | InjRT | PairT | FoldT | App | LetT


def iso_annotation(iso: Iso) -> IsoType | None:
    if isinstance(iso, (Clauses, Fix)):
        return iso.annotation
    return None


def annotate(iso: Iso, iso_type: IsoType) -> Iso:
    '''Attach iso_type to a fix and to the clause set under it.'''
    if isinstance(iso, Fix):
        return Fix(iso.var, annotate(iso.body, iso_type), iso_type)
    if isinstance(iso, Clauses):
        return evolve(iso, annotation=iso_type)
    return iso

# Conversions


def value_to_term(v: Value) -> Term:
    if isinstance(v, UnitV):
        return UnitT()
    if isinstance(v, VarV):
        return VarT(v.name)
    if isinstance(v, InjL):
        return InjLT(value_to_term(v.value))
    if isinstance(v, InjR):
        return InjRT(value_to_term(v.value))
    if isinstance(v, Pair):
        return PairT(value_to_term(v.left), value_to_term(v.right))
    if isinstance(v, Fold):
        return FoldT(value_to_term(v.value))
    raise TypeError(f'not a value: {v!r}')


def term_to_value(t: Term) -> Value | None:
    '''The value a term denotes syntactically, or None if it is not value-shaped.'''
    if isinstance(t, UnitT):
        return UnitV()
    if isinstance(t, VarT):
        return VarV(t.name)
    if isinstance(t, (InjLT, InjRT, FoldT)):
        inner = term_to_value(t.term)
        if inner is None:
            return None
        return {InjLT: InjL, InjRT: InjR, FoldT: Fold}[type(t)](inner)
    if isinstance(t, PairT):
        left = term_to_value(t.left)
        right = term_to_value(t.right)
        if left is None or right is None:
            return None
        return Pair(left, right)
    return None


def is_closed_value_term(t: Term) -> bool:
    if isinstance(t, UnitT):
        return True
    if isinstance(t, (InjLT, InjRT, FoldT)):
        return is_closed_value_term(t.term)
    if isinstance(t, PairT):
        return is_closed_value_term(t.left) and is_closed_value_term(t.right)
    return False


def is_closed_value(v: Value) -> bool:
    return not value_vars(v)


def pattern_vars(p: Pattern) -> list[str]:
    '''Variables of a pattern, left to right.'''
    if isinstance(p, PVar):
        return [p.name]
    return pattern_vars(p.left) + pattern_vars(p.right)


def value_vars(v: Value) -> list[str]:
    '''Variables of a value, left to right.'''
    if isinstance(v, VarV):
        return [v.name]
    if isinstance(v, (InjL, InjR, Fold)):
        return value_vars(v.value)
    if isinstance(v, Pair):
        return value_vars(v.left) + value_vars(v.right)
    return []


def pattern_to_value(p: Pattern) -> Value:
    if isinstance(p, PVar):
        return VarV(p.name)
    return Pair(pattern_to_value(p.left), pattern_to_value(p.right))


def value_to_pattern(v: Value) -> Pattern | None:
    if isinstance(v, VarV):
        return PVar(v.name)
    if isinstance(v, Pair):
        left, right = value_to_pattern(v.left), value_to_pattern(v.right)
        if left is None or right is None:
            return None
        return PPair(left, right)
    return None


def pattern_to_term(p: Pattern) -> Term:
    return value_to_term(pattern_to_value(p))


def val_of_expr(e: Expr) -> Value:
    while isinstance(e, Let):
        e = e.body
    return e.value


def let_chain(e: Expr) -> list[Let]:
    '''The Let layers of an expression, outermost first.'''
    chain = []
    while isinstance(e, Let):
        chain.append(e)
        e = e.body
    return chain


def build_lets(chain: list[tuple[Pattern, Iso, Pattern]], value: Value) -> Expr:
    result: Expr = Val(value)
    for pattern, iso, arg in reversed(chain):
        result = Let(pattern, iso, arg, result)
    return result


def expr_to_term(e: Expr) -> Term:
    if isinstance(e, Val):
        return value_to_term(e.value)
    annotation = iso_annotation(e.iso)
    return LetT(e.pattern, App(e.iso, pattern_to_term(e.arg)), expr_to_term(e.body),
                bound_type=annotation.rhs if annotation else None)

# Tuples


def tuple_value(values: list[Value]) -> Value:
    result = values[-1]
    for v in reversed(values[:-1]):
        result = Pair(v, result)
    return result


def tuple_pattern(names: list[str]) -> Pattern:
    result: Pattern = PVar(names[-1])
    for name in reversed(names[:-1]):
        result = PPair(PVar(name), result)
    return result


def tuple_term(terms: list[Term]) -> Term:
    result = terms[-1]
    for t in reversed(terms[:-1]):
        result = PairT(t, result)
    return result


def split_tuple(v: Value, m: int) -> list[Value] | None:
    '''Split a value along a right-nested spine of width m; None if it is not m-tuple shaped.'''
    parts = []
    for _ in range(m - 1):
        if not isinstance(v, Pair):
            return None
        parts.append(v.left)
        v = v.right
    parts.append(v)
    return parts


def split_tuple_pattern(p: Pattern, m: int) -> list[Pattern] | None:
    parts = []
    for _ in range(m - 1):
        if not isinstance(p, PPair):
            return None
        parts.append(p.left)
        p = p.right
    parts.append(p)
    return parts

# Free variables


def free_term_vars(x: Value | Pattern | Expr | Term) -> set[str]:
    '''Free term variables; let binds its pattern in its body.'''
    if isinstance(x, (UnitV, UnitT)):
        return set()
    if isinstance(x, (VarV, VarT, PVar)):
        return {x.name}
    if isinstance(x, (InjL, InjR, Fold)):
        return free_term_vars(x.value)
    if isinstance(x, (InjLT, InjRT, FoldT)):
        return free_term_vars(x.term)
    if isinstance(x, (Pair, PairT, PPair)):
        return free_term_vars(x.left) | free_term_vars(x.right)
    if isinstance(x, Val):
        return free_term_vars(x.value)
    if isinstance(x, Let):
        return free_term_vars(x.arg) | (free_term_vars(x.body) - set(pattern_vars(x.pattern)))
    if isinstance(x, App):
        return free_term_vars(x.arg)
    if isinstance(x, LetT):
        return free_term_vars(x.bound) | (free_term_vars(x.body) - set(pattern_vars(x.pattern)))
    raise TypeError(f'no free variables for {x!r}')


def free_iso_vars(x: Iso | Expr | Term) -> set[str]:
    if isinstance(x, IsoVar):
        return {x.name}
    if isinstance(x, Fix):
        return free_iso_vars(x.body) - {x.var}
    if isinstance(x, Clauses):
        result: set[str] = set()
        for clause in x.clauses:
            result |= free_iso_vars(clause.rhs)
        return result
    if isinstance(x, Let):
        return free_iso_vars(x.iso) | free_iso_vars(x.body)
    if isinstance(x, App):
        return free_iso_vars(x.iso) | free_iso_vars(x.arg)
    if isinstance(x, LetT):
        return free_iso_vars(x.bound) | free_iso_vars(x.body)
    if isinstance(x, (InjLT, InjRT, FoldT)):
        return free_iso_vars(x.term)
    if isinstance(x, PairT):
        return free_iso_vars(x.left) | free_iso_vars(x.right)
    return set()

# Positions inside terms


def term_children(t: Term) -> list[Term]:
    if isinstance(t, (InjLT, InjRT, FoldT)):
        return [t.term]
    if isinstance(t, PairT):
        return [t.left, t.right]
    if isinstance(t, App):
        return [t.arg]
    if isinstance(t, LetT):
        return [t.bound, t.body]
    return []


def with_child(t: Term, index: int, child: Term) -> Term:
    if isinstance(t, (InjLT, InjRT, FoldT)):
        return evolve(t, term=child)
    if isinstance(t, PairT):
        return evolve(t, left=child) if index == 0 else evolve(t, right=child)
    if isinstance(t, App):
        return evolve(t, arg=child)
    if isinstance(t, LetT):
        return evolve(t, bound=child) if index == 0 else evolve(t, body=child)
    raise IndexError(f'{type(t).__name__} has no child {index}')


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for index in path:
        t = term_children(t)[index]
    return t


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    child = term_children(t)[path[0]]
    return with_child(t, path[0], replace_at(child, path[1:], new))


def iter_isos(x: Iso | Expr | Term) -> Iterator[Iso]:
    '''Every iso occurring in x, outermost first.'''
    if isinstance(x, (Clauses, Fix, IsoVar)):
        yield x
        if isinstance(x, Fix):
            yield from iter_isos(x.body)
        elif isinstance(x, Clauses):
            for clause in x.clauses:
                yield from iter_isos(clause.rhs)
    elif isinstance(x, Let):
        yield from iter_isos(x.iso)
        yield from iter_isos(x.body)
    elif isinstance(x, App):
        yield from iter_isos(x.iso)
        yield from iter_isos(x.arg)
    else:
        for child in term_children(x) if not isinstance(x, Val) else []:
            yield from iter_isos(child)
