# Random well-typed closed terms over a fixed set of annotated isos.

import random
from typing import Sequence

from core import (App, BaseType, FoldT, InjLT, InjRT, Iso, LetT, Mu, PairT, PPair, Prod, PVar, Sum, Term, VarT,
                  iso_annotation, min_depth, random_value, type_unfold, value_to_term)


def random_closed_term(rng: random.Random, a: BaseType, isos: Sequence[Iso] = (), depth: int = 3) -> Term:
    '''
    A random closed term of type a mixing values, constructors, iso applications and lets.
    Every iso in isos must carry its type annotation.
    '''
    def leaf() -> Term:
        return value_to_term(random_value(a, rng, 3))

    if depth <= 0:
        return leaf()
    producers = [iso for iso in isos if iso_annotation(iso).rhs == a]
    roll = rng.random()
    if producers and roll < 0.3:
        iso = rng.choice(producers)
        return App(iso, random_closed_term(rng, iso_annotation(iso).lhs, isos, depth - 1))
    if producers and roll < 0.45:
        iso = rng.choice(producers)
        lhs = iso_annotation(iso).lhs
        return LetT(PVar('x'), random_closed_term(rng, lhs, isos, depth - 1), App(iso, VarT('x')), lhs)
    if roll < 0.8:
        if isinstance(a, Prod):
            if rng.random() < 0.5:
                return PairT(random_closed_term(rng, a.left, isos, depth - 1),
                             random_closed_term(rng, a.right, isos, depth - 1))
            swapped = Prod(a.right, a.left)
            return LetT(PPair(PVar('y'), PVar('z')), random_closed_term(rng, swapped, isos, depth - 1),
                        PairT(VarT('z'), VarT('y')), swapped)
        if isinstance(a, Sum):
            sides = [side for side in ('left', 'right') if min_depth(getattr(a, side)) < float('inf')]
            side = rng.choice(sides)
            inner = random_closed_term(rng, getattr(a, side), isos, depth - 1)
            return InjLT(inner) if side == 'left' else InjRT(inner)
        if isinstance(a, Mu):
            return FoldT(random_closed_term(rng, type_unfold(a), isos, depth - 1))
    return leaf()
