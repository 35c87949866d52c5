# Linear typing of values, terms, expressions and isos.
# Terms are checked bidirectionally: injections and folds need an expected type,
# everything else can also be inferred. Every context binding is consumed exactly once.

import logging

from attrs import frozen

from core import (App, BaseType, Clauses, Expr, Fix, Fold, FoldT, InjL, InjLT, InjR, InjRT, Iso,
                  IsoType, IsoVar, Let, LetT, LinearityError, Mu, Pair, PairT, Prod, Sum, Term, TypeCheckError,
                  Unit, UnitT, UnitV, Val, Value, VarT, VarV, free_iso_vars, free_term_vars, is_closed_type,
                  pattern_to_value, pattern_vars, type_unfold, val_of_expr)
from parser import pretty

from .od import check_od
from .recursion import check_structural_recursion

logger = logging.getLogger(__name__)

TermCtx = dict[str, BaseType]


@frozen
class IsoCtx:
    '''
    The iso-variable context: empty, or a single binding f : A <-> B.
    :param str name: the bound iso-variable
    :param IsoType iso_type: its type
    '''
    name: str | None = None
    iso_type: IsoType | None = None

    def bind(self, name: str, iso_type: IsoType) -> 'IsoCtx':
        return IsoCtx(name, iso_type)

    def lookup(self, name: str) -> IsoType:
        if name != self.name or self.iso_type is None:
            raise TypeCheckError(f'unknown iso-variable {name!r}')
        return self.iso_type


EMPTY_ISO_CTX = IsoCtx()


def _mismatch(what: str, expected: BaseType) -> TypeCheckError:
    return TypeCheckError(f'{what} does not have type {pretty(expected)}')


def type_value(v: Value, a: BaseType) -> TermCtx:
    '''The unique context under which v has type a.'''
    if isinstance(v, VarV):
        return {v.name: a}
    if isinstance(v, UnitV):
        if not isinstance(a, Unit):
            raise _mismatch('()', a)
        return {}
    if isinstance(v, InjL):
        if not isinstance(a, Sum):
            raise _mismatch(pretty(v), a)
        return type_value(v.value, a.left)
    if isinstance(v, InjR):
        if not isinstance(a, Sum):
            raise _mismatch(pretty(v), a)
        return type_value(v.value, a.right)
    if isinstance(v, Fold):
        if not isinstance(a, Mu):
            raise _mismatch(pretty(v), a)
        return type_value(v.value, type_unfold(a))
    if isinstance(v, Pair):
        if not isinstance(a, Prod):
            raise _mismatch(pretty(v), a)
        left = type_value(v.left, a.left)
        right = type_value(v.right, a.right)
        twice = set(left) & set(right)
        if twice:
            raise LinearityError(f'variable {sorted(twice)[0]!r} is used twice in {pretty(v)}')
        return left | right
    raise TypeCheckError(f'not a value: {v!r}')


def _restrict(ctx: TermCtx, names: set[str], where) -> TermCtx:
    missing = names - set(ctx)
    if missing:
        raise LinearityError(f'variable {sorted(missing)[0]!r} is unbound or already used in {pretty(where)}')
    return {name: ctx[name] for name in names}


def _all_used(ctx: TermCtx, used: set[str], where) -> None:
    unused = set(ctx) - used
    if unused:
        raise LinearityError(f'variable {sorted(unused)[0]!r} is never used in {pretty(where)}')


def _disjoint(first: set[str], second: set[str], where) -> None:
    twice = first & second
    if twice:
        raise LinearityError(f'variable {sorted(twice)[0]!r} is used twice in {pretty(where)}')


@frozen
class _Checker:
    '''Typing judgements under a fixed iso context.'''
    isoctx: IsoCtx
    check_recursion: bool = True

    # Terms

    def infer(self, ctx: TermCtx, t: Term) -> tuple[Term, BaseType]:
        _all_used(ctx, free_term_vars(t), t)
        if isinstance(t, UnitT):
            return t, Unit()
        if isinstance(t, VarT):
            return t, _restrict(ctx, {t.name}, t)[t.name]
        if isinstance(t, PairT):
            left_ctx, right_ctx = self._split(ctx, t.left, t.right, t)
            left, a = self.infer(left_ctx, t.left)
            right, b = self.infer(right_ctx, t.right)
            return PairT(left, right), Prod(a, b)
        if isinstance(t, App):
            iso_type = self.iso(t.iso)
            arg = self.check(ctx, t.arg, iso_type.lhs)
            return App(t.iso, arg), iso_type.rhs
        if isinstance(t, LetT):
            return self._let(ctx, t, None)
        raise TypeCheckError(f'cannot infer the type of {pretty(t)}; it needs an expected type')

    def check(self, ctx: TermCtx, t: Term, expected: BaseType) -> Term:
        _all_used(ctx, free_term_vars(t), t)
        if isinstance(t, InjLT):
            if not isinstance(expected, Sum):
                raise _mismatch(pretty(t), expected)
            return InjLT(self.check(ctx, t.term, expected.left))
        if isinstance(t, InjRT):
            if not isinstance(expected, Sum):
                raise _mismatch(pretty(t), expected)
            return InjRT(self.check(ctx, t.term, expected.right))
        if isinstance(t, FoldT):
            if not isinstance(expected, Mu):
                raise _mismatch(pretty(t), expected)
            return FoldT(self.check(ctx, t.term, type_unfold(expected)))
        if isinstance(t, PairT):
            if not isinstance(expected, Prod):
                raise _mismatch(pretty(t), expected)
            left_ctx, right_ctx = self._split(ctx, t.left, t.right, t)
            return PairT(self.check(left_ctx, t.left, expected.left),
                         self.check(right_ctx, t.right, expected.right))
        if isinstance(t, LetT):
            return self._let(ctx, t, expected)[0]
        elaborated, actual = self.infer(ctx, t)
        if actual != expected:
            raise TypeCheckError(f'{pretty(t)} has type {pretty(actual)}, expected {pretty(expected)}')
        return elaborated

    def _split(self, ctx: TermCtx, first: Term, second: Term, where) -> tuple[TermCtx, TermCtx]:
        first_free, second_free = free_term_vars(first), free_term_vars(second)
        _disjoint(first_free, second_free, where)
        return _restrict(ctx, first_free, where), _restrict(ctx, second_free, where)

    def _let(self, ctx: TermCtx, t: LetT, expected: BaseType | None) -> tuple[Term, BaseType]:
        bound_free = free_term_vars(t.bound)
        body_free = free_term_vars(t.body) - set(pattern_vars(t.pattern))
        _disjoint(bound_free, body_free, t)
        bound_ctx = _restrict(ctx, bound_free, t)
        if t.bound_type is not None:
            bound, a = self.check(bound_ctx, t.bound, t.bound_type), t.bound_type
        elif isinstance(t.bound, (InjLT, InjRT, FoldT)):
            raise TypeCheckError(f'cannot infer type of let-bound term {pretty(t.bound)}')
        else:
            bound, a = self.infer(bound_ctx, t.bound)
        inner = _restrict(ctx, body_free, t) | type_value(pattern_to_value(t.pattern), a)
        if expected is None:
            body, result = self.infer(inner, t.body)
        else:
            body, result = self.check(inner, t.body, expected), expected
        return LetT(t.pattern, bound, body, a), result

    # Expressions

    def check_expr(self, ctx: TermCtx, e: Expr, expected: BaseType) -> None:
        if isinstance(e, Val):
            actual = type_value(e.value, expected)
            _all_used(ctx, set(actual), e)
            _restrict(ctx, set(actual), e)
            for name, a in actual.items():
                if ctx[name] != a:
                    raise TypeCheckError(f'variable {name!r} has type {pretty(ctx[name])}, used at {pretty(a)}')
            return
        arg_free = set(pattern_vars(e.arg))
        body_free = free_term_vars(e.body) - set(pattern_vars(e.pattern))
        _disjoint(arg_free, body_free, e)
        _all_used(ctx, arg_free | body_free, e)
        iso_type = self.iso(e.iso)
        self.check_expr(_restrict(ctx, arg_free, e), Val(pattern_to_value(e.arg)), iso_type.lhs)
        inner = _restrict(ctx, body_free, e) | type_value(pattern_to_value(e.pattern), iso_type.rhs)
        self.check_expr(inner, e.body, expected)

    # Isos

    def iso(self, iso: Iso, expected: IsoType | None = None) -> IsoType:
        if isinstance(iso, IsoVar):
            found = self.isoctx.lookup(iso.name)
            if expected is not None and found != expected:
                raise TypeCheckError(f'{iso.name} has type {pretty(found)}, expected {pretty(expected)}')
            return found
        if self.isoctx.name is not None and self.isoctx.name in free_iso_vars(iso):
            if self.check_recursion:
                raise TypeCheckError(f'inline iso refers to the recursive iso-variable {self.isoctx.name!r}; '
                                     'only direct calls may')
            return _Checker(self.isoctx, False).closed_iso(iso, expected)
        return _Checker(EMPTY_ISO_CTX, self.check_recursion).closed_iso(iso, expected)

    def closed_iso(self, iso: Iso, expected: IsoType | None) -> IsoType:
        iso_type = _declared_type(iso, expected)
        if isinstance(iso, Fix):
            if not isinstance(iso.body, Clauses):
                raise TypeCheckError(f'the body of fix {iso.var} must be a clause set')
            if self.check_recursion:
                check_structural_recursion(iso, iso_type)
            _Checker(IsoCtx(iso.var, iso_type), self.check_recursion).clauses(iso.body, iso_type)
            return iso_type
        if isinstance(iso, IsoVar):
            return self.iso(iso, expected)
        self.clauses(iso, iso_type)
        return iso_type

    def clauses(self, iso: Clauses, iso_type: IsoType) -> None:
        a, b = iso_type.lhs, iso_type.rhs
        for i, clause in enumerate(iso.clauses):
            try:
                ctx = type_value(clause.lhs, a)
                self.check_expr(ctx, clause.rhs, b)
            except TypeCheckError as e:
                if e.clause is not None:
                    raise
                raise type(e)(str(e), clause=i) from e
        check_od(a, [c.lhs for c in iso.clauses])
        check_od(b, [val_of_expr(c.rhs) for c in iso.clauses])


def _declared_type(iso: Iso, expected: IsoType | None) -> IsoType:
    declared = iso.annotation if isinstance(iso, (Clauses, Fix)) else None
    if declared is None and isinstance(iso, Fix) and isinstance(iso.body, Clauses):
        declared = iso.body.annotation
    if declared is None:
        declared = expected
    if declared is None:
        raise TypeCheckError('an iso needs a type annotation')
    if expected is not None and declared != expected:
        raise TypeCheckError(f'iso annotated {pretty(declared)} used at {pretty(expected)}')
    if not (is_closed_type(declared.lhs) and is_closed_type(declared.rhs)):
        raise TypeCheckError(f'iso type {pretty(declared)} is not closed')
    return declared


def type_term(ctx: TermCtx, isoctx: IsoCtx, t: Term | Expr, expected: BaseType | None = None) -> BaseType:
    '''Type t under ctx; with an expected type t is checked against it.'''
    checker = _Checker(isoctx)
    if isinstance(t, (Val, Let)):
        if expected is None:
            raise TypeCheckError('expressions are checked against an expected type')
        checker.check_expr(dict(ctx), t, expected)
        return expected
    if expected is None:
        return checker.infer(dict(ctx), t)[1]
    checker.check(dict(ctx), t, expected)
    return expected


def elaborate(t: Term, expected: BaseType | None = None, check_recursion: bool = True) -> tuple[Term, BaseType]:
    '''Type a closed term and record the type of every let-bound subterm.'''
    checker = _Checker(EMPTY_ISO_CTX, check_recursion)
    if expected is None:
        return checker.infer({}, t)
    return checker.check({}, t, expected), expected


def type_iso(isoctx: IsoCtx, iso: Iso, expected: IsoType | None = None, check_recursion: bool = True) -> IsoType:
    '''The type of iso, checking OD on both sides of every clause set and structural recursion.'''
    iso_type = _Checker(isoctx, check_recursion).iso(iso, expected) if isinstance(iso, IsoVar) \
        else _Checker(isoctx, check_recursion).closed_iso(iso, expected)
    logger.debug('Typed iso at %s', pretty(iso_type))
    return iso_type
