# Translation of RPP expressions into isos of type Z^k <-> Z^k.
# Wires are named x1..xk on the left of a clause, y1..yk and z1..zk for intermediate
# results and x1'..xk' for the results of a sub-iso. Each clause set scopes its own names,
# so nested isos reuse them; only fix variables are numbered.

import logging
from typing import Sequence

from attrs import define

from core import (Clause, Clauses, Fix, Fold, InjL, InjR, Iso, IsoType, IsoVar, Pattern, Val, Value, VarV,
                  build_lets, tensor, tuple_pattern, tuple_value)
from invert import invert
from parser import Definition, pretty_definition, pretty_value

from .codec import NPOS, ONE, ZERO, Z, encode_tuple, z_power
from .model import Id, If, It, P, Par, Perm, RppFun, S, Seq, Sign, Swap, Weaken

logger = logging.getLogger(__name__)


def _names(prefix: str, k: int, start: int = 1, suffix: str = '') -> list[str]:
    return [f'{prefix}{i}{suffix}' for i in range(start, start + k)]


def _tup(names: Sequence[str], *extra: Value) -> Value:
    return tuple_value([VarV(name) for name in names] + list(extra))


def _pat(names: Sequence[str]) -> Pattern:
    return tuple_pattern(list(names))


def _positive(v: Value) -> Value:
    return InjR(InjL(v))


def _negative(v: Value) -> Value:
    return InjR(InjR(v))


def _iso_type(k: int) -> IsoType:
    return IsoType(z_power(k), z_power(k))


def successor() -> Clauses:
    x = VarV('x')
    return Clauses([
        Clause(ZERO, Val(_positive(ONE))),
        Clause(_positive(x), Val(_positive(Fold(InjR(x))))),
        Clause(_negative(ONE), Val(ZERO)),
        Clause(_negative(Fold(InjR(x))), Val(_negative(x))),
    ], _iso_type(1))


def sign_change() -> Clauses:
    x = VarV('x')
    return Clauses([
        Clause(_positive(x), Val(_negative(x))),
        Clause(_negative(x), Val(_positive(x))),
        Clause(ZERO, Val(ZERO)),
    ], _iso_type(1))


@define
class _Compiler:
    '''Numbers the fix variables of one translation: g, g1, g2, ...'''
    fixes: int = 0

    def fresh_fix(self) -> str:
        name = 'g' if self.fixes == 0 else f'g{self.fixes}'
        self.fixes += 1
        return name

    def iso(self, f: RppFun) -> Iso:
        if isinstance(f, Id):
            return Clauses([Clause(VarV('x'), Val(VarV('x')))], _iso_type(1))
        if isinstance(f, S):
            return successor()
        if isinstance(f, P):
            return invert(successor())
        if isinstance(f, Sign):
            return sign_change()
        if isinstance(f, Swap):
            return Clauses([Clause(_tup(['x', 'y']), Val(_tup(['y', 'x'])))], _iso_type(2))
        if isinstance(f, Seq):
            return self.seq(f)
        if isinstance(f, Par):
            return self.par(f)
        if isinstance(f, It):
            return self.iterate(f)
        if isinstance(f, If):
            return self.select(f)
        if isinstance(f, Perm):
            xs = _names('x', f.arity)
            return Clauses([Clause(_tup(xs), Val(_tup([xs[i - 1] for i in f.indices])))], _iso_type(f.arity))
        if isinstance(f, Weaken):
            return self.weaken(f)
        raise TypeError(f'not an RPP expression: {f!r}')

    def seq(self, f: Seq) -> Clauses:
        k = f.arity
        xs, ys, zs = _names('x', k), _names('y', k), _names('z', k)
        body = build_lets([(_pat(ys), self.iso(f.first), _pat(xs)),
                           (_pat(zs), self.iso(f.second), _pat(ys))], _tup(zs))
        return Clauses([Clause(_tup(xs), body)], _iso_type(k))

    def par(self, f: Par) -> Clauses:
        j, k = f.left.arity, f.right.arity
        xs, ys = _names('x', j), _names('y', k)
        xs_out, ys_out = _names('x', j, suffix="'"), _names('y', k, suffix="'")
        body = build_lets([(_pat(xs_out), self.iso(f.left), _pat(xs)),
                           (_pat(ys_out), self.iso(f.right), _pat(ys))], _tup(xs_out + ys_out))
        return Clauses([Clause(_tup(xs + ys), body)], _iso_type(j + k))

    def iterate(self, f: It) -> Clauses:
        k = f.body.arity
        aux = self.iterate_aux(f.body)
        xs, ys = _names('x', k), _names('y', k)
        z, z_out = VarV('z'), VarV("z'")
        clauses = [Clause(_tup(xs, ZERO), Val(_tup(xs, ZERO)))]
        for wrap in (_positive, _negative):
            body = build_lets([(_pat(ys + ["z'"]), aux, _pat(xs + ['z']))], _tup(ys, wrap(z_out)))
            clauses.append(Clause(_tup(xs, wrap(z)), body))
        return Clauses(clauses, _iso_type(k + 1))

    def iterate_aux(self, body: RppFun) -> Fix:
        '''fix g over Z^k * npos: run body once per fold of the counter.'''
        k = body.arity
        iso_f = self.iso(body)
        g = self.fresh_fix()
        xs, ys, zs = _names('x', k), _names('y', k), _names('z', k)
        n, n_out = VarV('n'), VarV("n'")
        last = Clause(_tup(xs, ONE), build_lets([(_pat(ys), iso_f, _pat(xs))], _tup(ys, ONE)))
        again = Clause(_tup(xs, Fold(InjR(n))),
                       build_lets([(_pat(ys), iso_f, _pat(xs)),
                                   (_pat(zs + ["n'"]), IsoVar(g), _pat(ys + ['n']))], _tup(zs, Fold(InjR(n_out)))))
        aux_type = IsoType(tensor([Z] * k + [NPOS]), tensor([Z] * k + [NPOS]))
        return Fix(g, Clauses([last, again], aux_type), aux_type)

    def select(self, f: If) -> Clauses:
        k = f.positive.arity
        xs, xs_out = _names('x', k), _names('x', k, suffix="'")
        z = VarV('z')
        clauses = []
        for branch, selector in ((f.positive, _positive(z)), (f.zero, ZERO), (f.negative, _negative(z))):
            body = build_lets([(_pat(xs_out), self.iso(branch), _pat(xs))], _tup(xs_out, selector))
            clauses.append(Clause(_tup(xs, selector), body))
        return Clauses(clauses, _iso_type(k + 1))

    def weaken(self, f: Weaken) -> Clauses:
        k, n = f.body.arity, f.extra
        xs, xs_out = _names('x', k + n), _names('x', k, suffix="'")
        body = build_lets([(_pat(xs_out), self.iso(f.body), _pat(xs[:k]))], _tup(xs_out + xs[k:]))
        return Clauses([Clause(_tup(xs), body)], _iso_type(k + n))


def compile_rpp(f: RppFun) -> Iso:
    '''The iso simulating f, annotated Z^k <-> Z^k where k is the arity of f.'''
    iso = _Compiler().iso(f)
    logger.debug('Compiled %s at arity %d', f, f.arity)
    return iso


def compile_source(f: RppFun, name: str = 'rpp', args: Sequence[int] | None = None) -> str:
    '''A .iso source holding `def name` for f and, given args, a main applying it to them.'''
    definition = Definition(name, compile_rpp(f), _iso_type(f.arity))
    text = f'-- {f}\n{pretty_definition(definition)}\n'
    if args is not None:
        text += f'\nmain = {name} {pretty_value(encode_tuple(args))}\n'
    return text
