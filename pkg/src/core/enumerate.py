# Bounded enumeration and random generation of closed values.
# depth bounds the number of nested folds on any path of a value.

import math
import random
from functools import lru_cache

from .errors import TypeCheckError
from .syntax import Fold, InjL, InjR, Pair, UnitV, Value
from .types import BaseType, Mu, Prod, Sum, Unit, is_closed_type, type_unfold


def min_depth(t: BaseType) -> float:
    '''Fold depth of the shallowest closed inhabitant of t, or inf if t is empty.'''
    return _min_depth(t, frozenset())


def _min_depth(t: BaseType, visiting: frozenset) -> float:
    if isinstance(t, Unit):
        return 0
    if isinstance(t, Sum):
        return min(_min_depth(t.left, visiting), _min_depth(t.right, visiting))
    if isinstance(t, Prod):
        return max(_min_depth(t.left, visiting), _min_depth(t.right, visiting))
    if isinstance(t, Mu):
        if t in visiting:
            return math.inf
        return 1 + _min_depth(type_unfold(t), visiting | {t})
    raise TypeCheckError(f'cannot enumerate values of open type {t!r}')


def closed_values(t: BaseType, depth: int) -> list[Value]:
    '''Every closed value of t whose fold depth is at most depth, in a fixed order.'''
    if not is_closed_type(t):
        raise TypeCheckError(f'cannot enumerate values of open type {t!r}')
    return list(_closed_values(t, depth))


@lru_cache(maxsize=None)
def _closed_values(t: BaseType, depth: int) -> tuple[Value, ...]:
    if isinstance(t, Unit):
        return (UnitV(),)
    if isinstance(t, Sum):
        return (tuple(InjL(v) for v in _closed_values(t.left, depth))
                + tuple(InjR(v) for v in _closed_values(t.right, depth)))
    if isinstance(t, Prod):
        rights = _closed_values(t.right, depth)
        return tuple(Pair(a, b) for a in _closed_values(t.left, depth) for b in rights)
    if isinstance(t, Mu):
        if depth <= 0:
            return ()
        return tuple(Fold(v) for v in _closed_values(type_unfold(t), depth - 1))
    raise TypeCheckError(f'cannot enumerate values of open type {t!r}')


def random_value(t: BaseType, rng: random.Random, depth: int = 5) -> Value:
    '''A random closed value of t with fold depth at most max(depth, min_depth(t)).'''
    if isinstance(t, Unit):
        return UnitV()
    if isinstance(t, Sum):
        options = [side for side, sub in (('l', t.left), ('r', t.right)) if min_depth(sub) <= max(depth, 0)]
        if not options:
            options = ['l'] if min_depth(t.left) <= min_depth(t.right) else ['r']
        side = rng.choice(options)
        if side == 'l':
            return InjL(random_value(t.left, rng, depth))
        return InjR(random_value(t.right, rng, depth))
    if isinstance(t, Prod):
        return Pair(random_value(t.left, rng, depth), random_value(t.right, rng, depth))
    if isinstance(t, Mu):
        if math.isinf(min_depth(t)):
            raise TypeCheckError(f'type {t!r} has no closed values')
        return Fold(random_value(type_unfold(t), rng, depth - 1))
    raise TypeCheckError(f'cannot generate values of open type {t!r}')
