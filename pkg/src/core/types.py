# Base types: 1, A + B, A * B, mu X. A and type variables.
# Equality and hashing are alpha-equality, computed on a nameless key.

from __future__ import annotations

from typing import Any

from attrs import frozen

from .errors import TypeCheckError


class BaseType:
    '''Common base of every type node. Compared up to renaming of mu binders.'''

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BaseType):
            return NotImplemented
        return nameless(self) == nameless(other)

    def __hash__(self) -> int:
        return hash(nameless(self))


@frozen(eq=False)
class Unit(BaseType):
    pass


@frozen(eq=False)
class Sum(BaseType):
    left: BaseType
    right: BaseType


@frozen(eq=False)
class Prod(BaseType):
    left: BaseType
    right: BaseType


@frozen(eq=False)
class Mu(BaseType):
    binder: str
    body: BaseType


@frozen(eq=False)
class TVar(BaseType):
    name: str


@frozen
class IsoType:
    '''
    The type A <-> B of an iso.
    :param BaseType lhs: input type
    :param BaseType rhs: output type
    '''
    lhs: BaseType
    rhs: BaseType

    def flip(self) -> 'IsoType':
        return IsoType(self.rhs, self.lhs)


def nameless(t: BaseType, env: tuple[str, ...] = ()) -> tuple[Any, ...]:
    '''De Bruijn style key of a type; bound variables become indices.'''
    if isinstance(t, Unit):
        return ('1',)
    if isinstance(t, Sum):
        return ('+', nameless(t.left, env), nameless(t.right, env))
    if isinstance(t, Prod):
        return ('*', nameless(t.left, env), nameless(t.right, env))
    if isinstance(t, Mu):
        return ('mu', nameless(t.body, (t.binder,) + env))
    if isinstance(t, TVar):
        if t.name in env:
            return ('bv', env.index(t.name))
        return ('fv', t.name)
    raise TypeError(f'not a type: {t!r}')


def free_type_vars(t: BaseType) -> set[str]:
    if isinstance(t, Unit):
        return set()
    if isinstance(t, (Sum, Prod)):
        return free_type_vars(t.left) | free_type_vars(t.right)
    if isinstance(t, Mu):
        return free_type_vars(t.body) - {t.binder}
    return {t.name}


def is_closed_type(t: BaseType) -> bool:
    return not free_type_vars(t)


def substitute_type(t: BaseType, name: str, repl: BaseType) -> BaseType:
    '''Capture-avoiding t[name <- repl].'''
    if isinstance(t, Unit):
        return t
    if isinstance(t, TVar):
        return repl if t.name == name else t
    if isinstance(t, Sum):
        return Sum(substitute_type(t.left, name, repl), substitute_type(t.right, name, repl))
    if isinstance(t, Prod):
        return Prod(substitute_type(t.left, name, repl), substitute_type(t.right, name, repl))
    if t.binder == name:
        return t
    binder, body = t.binder, t.body
    repl_free = free_type_vars(repl)
    if binder in repl_free:
        taken = repl_free | free_type_vars(body) | {name}
        fresh = binder
        while fresh in taken:
            fresh += "'"
        body = substitute_type(body, binder, TVar(fresh))
        binder = fresh
    return Mu(binder, substitute_type(body, name, repl))


def type_unfold(t: BaseType) -> BaseType:
    '''mu X. A  ->  A[X <- mu X. A]'''
    if not isinstance(t, Mu):
        raise TypeCheckError(f'cannot unfold non-inductive type {t!r}')
    return substitute_type(t.body, t.binder, t)


def tensor(types: list[BaseType]) -> BaseType:
    '''Right-nested product A1 * (A2 * (... * An)).'''
    if not types:
        raise ValueError('empty tensor')
    result = types[-1]
    for a in reversed(types[:-1]):
        result = Prod(a, result)
    return result


def tensor_spine(t: BaseType) -> list[BaseType]:
    '''Components of the right-nested product spine; a non-product is a 1-element spine.'''
    spine = []
    while isinstance(t, Prod):
        spine.append(t.left)
        t = t.right
    spine.append(t)
    return spine


def power(t: BaseType, k: int) -> BaseType:
    return tensor([t] * k)


# Common types
UNIT = Unit()
NAT = Mu('X', Sum(Unit(), TVar('X')))


def list_type(a: BaseType) -> BaseType:
    '''[A] = mu X. 1 + A * X'''
    binder = 'X'
    while binder in free_type_vars(a):
        binder += "'"
    return Mu(binder, Sum(Unit(), Prod(a, TVar(binder))))
