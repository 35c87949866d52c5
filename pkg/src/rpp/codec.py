# Integers as language values: Z = 1 + (npos + npos) with npos = mu X. 1 + X.
# 0 is injl (), a positive z is injr (injl z) and a negative z is injr (injr -z), where the
# positive numeral 1 is fold (injl ()) and n + 1 is fold (injr n).

from typing import Sequence

from core import (Fold, InjL, InjR, Mu, RppError, Sum, TVar, Unit, UnitV, Value, power, split_tuple,
                  tuple_value)

NPOS = Mu('X', Sum(Unit(), TVar('X')))
Z = Sum(Unit(), Sum(NPOS, NPOS))

ZERO = InjL(UnitV())
ONE = Fold(InjL(UnitV()))


def z_power(k: int):
    '''Z^k as a right-nested tensor.'''
    return power(Z, k)


def encode_npos(n: int) -> Value:
    if n < 1:
        raise RppError(f'{n} is not a positive number')
    v = ONE
    for _ in range(n - 1):
        v = Fold(InjR(v))
    return v


def decode_npos(v: Value) -> int:
    n = 1
    while isinstance(v, Fold) and isinstance(v.value, InjR):
        v = v.value.value
        n += 1
    if v != ONE:
        raise RppError(f'malformed positive numeral ending in {v!r}')
    return n


def encode_int(z: int) -> Value:
    if z == 0:
        return ZERO
    if z > 0:
        return InjR(InjL(encode_npos(z)))
    return InjR(InjR(encode_npos(-z)))


def decode_int(v: Value) -> int:
    if v == ZERO:
        return 0
    if isinstance(v, InjR) and isinstance(v.value, InjL):
        return decode_npos(v.value.value)
    if isinstance(v, InjR) and isinstance(v.value, InjR):
        return -decode_npos(v.value.value)
    raise RppError(f'not an encoded integer: {v!r}')


def encode_tuple(xs: Sequence[int]) -> Value:
    '''(x1, ..., xk) as a value of Z^k.'''
    if not xs:
        raise RppError('cannot encode an empty tuple')
    return tuple_value([encode_int(x) for x in xs])


def decode_tuple(v: Value, k: int) -> tuple[int, ...]:
    parts = split_tuple(v, k)
    if parts is None:
        raise RppError(f'not a {k}-tuple of integers: {v!r}')
    return tuple(decode_int(part) for part in parts)
