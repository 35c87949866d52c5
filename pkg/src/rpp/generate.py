# Random RPP expressions for simulation trials.
# Leaves are drawn 60% of the time; It is nested at most twice.

import random

from config import RPP_MAX_ARITY, RPP_MAX_DEPTH

from .model import Id, If, It, P, Par, Perm, RppFun, S, Seq, Sign, Swap, Weaken

LEAF_WEIGHT = 0.6
MAX_IT_NESTING = 2


def random_rpp(rng: random.Random, depth: int = RPP_MAX_DEPTH, arity: int | None = None) -> RppFun:
    '''A random expression of the given arity (random in 1..RPP_MAX_ARITY when None) and depth at most depth.'''
    if arity is None:
        arity = rng.randint(1, RPP_MAX_ARITY)
    if arity < 1:
        raise ValueError(f'arity must be positive, got {arity}')
    return _random(rng, depth, arity, 0)


def _leaf(rng: random.Random, arity: int) -> RppFun:
    if arity == 1:
        return rng.choice([S(), P(), Id(), Sign()])
    roll = rng.random()
    if arity == 2 and roll < 0.4:
        return Swap()
    if roll < 0.7:
        indices = list(range(1, arity + 1))
        rng.shuffle(indices)
        return Perm(indices)
    return Weaken(_leaf(rng, 1), arity - 1)


def _random(rng: random.Random, depth: int, arity: int, its: int) -> RppFun:
    if depth <= 0 or rng.random() < LEAF_WEIGHT:
        return _leaf(rng, arity)
    choices = ['seq']
    if arity >= 2:
        choices += ['par', 'if', 'weaken']
        if its < MAX_IT_NESTING:
            choices.append('it')
    kind = rng.choice(choices)
    if kind == 'seq':
        return Seq(_random(rng, depth - 1, arity, its), _random(rng, depth - 1, arity, its))
    if kind == 'par':
        j = rng.randint(1, arity - 1)
        return Par(_random(rng, depth - 1, j, its), _random(rng, depth - 1, arity - j, its))
    if kind == 'if':
        return If(*(_random(rng, depth - 1, arity - 1, its) for _ in range(3)))
    if kind == 'weaken':
        j = rng.randint(1, arity - 1)
        return Weaken(_random(rng, depth - 1, j, its), arity - j)
    return It(_random(rng, depth - 1, arity - 1, its + 1))
