# RPP expression trees, the reference interpreter over integer tuples and RPP inversion.

import logging
from typing import Sequence

from attrs import field, frozen

from core import RppError

logger = logging.getLogger(__name__)

IntVec = tuple[int, ...]


class RppFun:
    '''Base class of RPP expressions. Every node has a fixed arity k and denotes a bijection of Z^k.'''

    @property
    def arity(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        from .syntax import show_rpp
        return show_rpp(self)


@frozen
class S(RppFun):
    '''Successor, x + 1.'''

    @property
    def arity(self) -> int:
        return 1


@frozen
class P(RppFun):
    '''Predecessor, x - 1.'''

    @property
    def arity(self) -> int:
        return 1


@frozen
class Id(RppFun):

    @property
    def arity(self) -> int:
        return 1


@frozen
class Sign(RppFun):
    '''Sign change, -x.'''

    @property
    def arity(self) -> int:
        return 1


@frozen
class Swap(RppFun):

    @property
    def arity(self) -> int:
        return 2


@frozen
class Seq(RppFun):
    '''f ; g runs f, then g, on the same wires.'''
    first: RppFun
    second: RppFun

    def __attrs_post_init__(self) -> None:
        if self.first.arity != self.second.arity:
            raise ValueError(f'cannot compose arities {self.first.arity} and {self.second.arity}')

    @property
    def arity(self) -> int:
        return self.first.arity


@frozen
class Par(RppFun):
    '''f || g runs f on the first wires and g on the remaining ones.'''
    left: RppFun
    right: RppFun

    @property
    def arity(self) -> int:
        return self.left.arity + self.right.arity


@frozen
class It(RppFun):
    '''
    Finite iteration. On (x1, ..., xk, x) the body runs |x| times on the first k wires;
    the last wire is left unchanged.
    '''
    body: RppFun

    @property
    def arity(self) -> int:
        return self.body.arity + 1


@frozen
class If(RppFun):
    '''
    Selection on the sign of the last wire: positive runs positive, zero runs zero and
    negative runs negative on the other wires. The last wire is left unchanged.
    '''
    positive: RppFun
    zero: RppFun
    negative: RppFun

    def __attrs_post_init__(self) -> None:
        arities = {self.positive.arity, self.zero.arity, self.negative.arity}
        if len(arities) != 1:
            raise ValueError(f'the branches of If have different arities {sorted(arities)}')

    @property
    def arity(self) -> int:
        return self.positive.arity + 1


@frozen
class Perm(RppFun):
    '''
    Generalised permutation: output wire i carries input wire indices[i] (1-based).
    :param tuple indices: a permutation of 1..k
    '''
    indices: tuple[int, ...] = field(converter=tuple)

    def __attrs_post_init__(self) -> None:
        if sorted(self.indices) != list(range(1, len(self.indices) + 1)):
            raise ValueError(f'{list(self.indices)} is not a permutation of 1..{len(self.indices)}')

    @property
    def arity(self) -> int:
        return len(self.indices)

    def inverse(self) -> 'Perm':
        inverse = [0] * len(self.indices)
        for i, j in enumerate(self.indices, 1):
            inverse[j - 1] = i
        return Perm(inverse)


@frozen
class Weaken(RppFun):
    '''f followed by extra identity wires.'''
    body: RppFun
    extra: int

    def __attrs_post_init__(self) -> None:
        if self.extra < 1:
            raise ValueError(f'Weaken needs at least one extra wire, got {self.extra}')

    @property
    def arity(self) -> int:
        return self.body.arity + self.extra


def rpp_eval(f: RppFun, xs: Sequence[int]) -> IntVec:
    '''Apply f to the integer tuple xs.'''
    xs = tuple(xs)
    if len(xs) != f.arity:
        raise RppError(f'{f} has arity {f.arity} but was given {len(xs)} arguments')
    logger.debug('Evaluating %s on %s', f, xs)
    return _eval(f, xs)


def _eval(f: RppFun, xs: IntVec) -> IntVec:
    if isinstance(f, S):
        return (xs[0] + 1,)
    if isinstance(f, P):
        return (xs[0] - 1,)
    if isinstance(f, Id):
        return xs
    if isinstance(f, Sign):
        return (-xs[0],)
    if isinstance(f, Swap):
        return (xs[1], xs[0])
    if isinstance(f, Seq):
        return _eval(f.second, _eval(f.first, xs))
    if isinstance(f, Par):
        j = f.left.arity
        return _eval(f.left, xs[:j]) + _eval(f.right, xs[j:])
    if isinstance(f, It):
        wires, count = xs[:-1], xs[-1]
        for _ in range(abs(count)):
            wires = _eval(f.body, wires)
        return wires + (count,)
    if isinstance(f, If):
        wires, selector = xs[:-1], xs[-1]
        branch = f.positive if selector > 0 else f.zero if selector == 0 else f.negative
        return _eval(branch, wires) + (selector,)
    if isinstance(f, Perm):
        return tuple(xs[i - 1] for i in f.indices)
    if isinstance(f, Weaken):
        k = f.body.arity
        return _eval(f.body, xs[:k]) + xs[k:]
    raise RppError(f'not an RPP expression: {f!r}')


def rpp_invert(f: RppFun) -> RppFun:
    '''The inverse f^-1, with f ; f^-1 = Id = f^-1 ; f.'''
    if isinstance(f, S):
        return P()
    if isinstance(f, P):
        return S()
    if isinstance(f, (Id, Sign, Swap)):
        return f
    if isinstance(f, Seq):
        return Seq(rpp_invert(f.second), rpp_invert(f.first))
    if isinstance(f, Par):
        return Par(rpp_invert(f.left), rpp_invert(f.right))
    if isinstance(f, It):
        return It(rpp_invert(f.body))
    if isinstance(f, If):
        return If(rpp_invert(f.positive), rpp_invert(f.zero), rpp_invert(f.negative))
    if isinstance(f, Perm):
        return f.inverse()
    if isinstance(f, Weaken):
        return Weaken(rpp_invert(f.body), f.extra)
    raise RppError(f'not an RPP expression: {f!r}')


def rpp_children(f: RppFun) -> list[RppFun]:
    if isinstance(f, Seq):
        return [f.first, f.second]
    if isinstance(f, Par):
        return [f.left, f.right]
    if isinstance(f, (It, Weaken)):
        return [f.body]
    if isinstance(f, If):
        return [f.positive, f.zero, f.negative]
    return []


def rpp_depth(f: RppFun) -> int:
    children = rpp_children(f)
    return 1 + max(rpp_depth(c) for c in children) if children else 0
