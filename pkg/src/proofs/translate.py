# Translation of isos and terms into circular pre-proofs.
# An iso A <-> B becomes a derivation of A@alpha |- B@beta. Its clause set is first taken
# apart by the negative phase (one left rule per constructor of the left values), then each
# clause body is rebuilt by the positive phase (right rules for values, cuts for lets and
# applications). Recursive calls become back-edges to the root of the fix body.

import logging
from typing import Sequence

from attrs import define, evolve, field

from core import (App, BaseType, Clauses, Fix, Fold, FoldT, InjL, InjLT, InjR, InjRT, Iso, IsoType, IsoVar, LetT,
                  Pair, PairT, ProofError, Term, TypeCheckError, UnitT, UnitV, Value, VarT, VarV, expr_to_term,
                  free_iso_vars, free_term_vars, pattern_to_value, pattern_vars)
from parser import pretty
from typecheck import EMPTY_ISO_CTX, elaborate, type_iso

from .derivation import LEFT_RULES, Derivation, Sequent, floor, principal
from .formulas import Address, AddressSupply, Formula, type_to_formula

logger = logging.getLogger(__name__)

Context = list[tuple[str, Formula]]
Item = tuple[list[Value], Term]


def _kind(v: Value) -> str:
    if isinstance(v, VarV):
        return 'var'
    if isinstance(v, UnitV):
        return 'unit'
    if isinstance(v, (InjL, InjR)):
        return 'sum'
    if isinstance(v, Pair):
        return 'pair'
    return 'fold'


def _restrict(theta: Context, names: set[str]) -> Context:
    return [(x, f) for x, f in theta if x in names]


def _iso_type_of(iso: Iso) -> IsoType | None:
    if isinstance(iso, Fix):
        return iso.annotation or _iso_type_of(iso.body)
    if isinstance(iso, Clauses):
        return iso.annotation
    return None


@define
class _Translator:
    '''
    Builds derivations, drawing cut formula addresses from supply.
    :param AddressSupply supply: the fresh atom generator
    :param dict iso_types: types of the iso-variables in scope
    '''
    supply: AddressSupply
    iso_types: dict[str, IsoType] = field(factory=dict)

    def iso_type(self, iso: Iso) -> IsoType:
        if isinstance(iso, IsoVar):
            if iso.name not in self.iso_types:
                raise ProofError(f'unbound iso-variable {iso.name!r}')
            return self.iso_types[iso.name]
        found = _iso_type_of(iso)
        if found is None:
            raise ProofError(f'iso without a type annotation: {pretty(iso)}')
        return found

    # Iso phase

    def circ(self, iso: Iso, last_var: str | None, alpha: Address, beta: Address) -> Derivation:
        iso_type = self.iso_type(iso)
        a, b = type_to_formula(iso_type.lhs, alpha), type_to_formula(iso_type.rhs, beta)
        if isinstance(iso, IsoVar):
            return Derivation('be', Sequent([a], [], b), name=iso.name)
        if isinstance(iso, Fix):
            inner = evolve(self, iso_types={**self.iso_types, iso.var: iso_type})
            return inner.circ(iso.body, iso.var, alpha, beta)
        label = last_var if last_var in free_iso_vars(iso) else None
        items = [([clause.lhs], expr_to_term(clause.rhs)) for clause in iso.clauses]
        return self.neg(items, [a], [], b, label)

    # Negative phase

    def neg(self, items: list[Item], upsilon: list[Formula], theta: Context, goal: Formula,
            label: str | None = None) -> Derivation:
        '''Decompose the first position whose entries share a constructor (or a lone variable).'''
        sequent = Sequent(upsilon, theta, goal, label)
        if not upsilon:
            if len(items) != 1:
                raise ProofError(f'{len(items)} clauses reach the same branch')
            premise = self.pos(items[0][1], theta, goal)
            return premise.with_label(label) if label else premise
        k = self._position(items, len(upsilon))
        p = upsilon[k]
        entries = [values[k] for values, _ in items]
        kind = _kind(entries[0])
        expected = {'unit': 'one', 'sum': 'plus', 'pair': 'tensor', 'fold': 'mu'}.get(kind)
        if expected is not None and p.shape != expected:
            raise ProofError(f'{pretty(entries[0])} does not fit {p}')

        def without(values: list[Value], *parts: Value) -> list[Value]:
            return values[:k] + list(parts) + values[k + 1:]

        if kind == 'var':
            x = entries[0].name
            (values, t), = items
            premise = self.neg([(values[1:], t)], upsilon[1:], theta + [(x, p)], goal)
            return Derivation('ex', sequent, [premise], name=x)
        if kind == 'unit':
            rest = [(without(values), t) for values, t in items]
            premise = self.neg(rest, upsilon[:k] + upsilon[k + 1:], theta, goal)
            return Derivation('bot', sequent, [premise])
        children = p.children()
        if kind == 'pair':
            rest = [(without(values, values[k].left, values[k].right), t) for values, t in items]
            premise = self.neg(rest, upsilon[:k] + children + upsilon[k + 1:], theta, goal)
            return Derivation('par', sequent, [premise])
        if kind == 'fold':
            rest = [(without(values, values[k].value), t) for values, t in items]
            premise = self.neg(rest, upsilon[:k] + children + upsilon[k + 1:], theta, goal)
            return Derivation('nu', sequent, [premise])
        premises = []
        for side, child in ((InjL, children[0]), (InjR, children[1])):
            group = [(without(values, values[k].value), t) for values, t in items if isinstance(values[k], side)]
            if not group:
                raise ProofError(f'no clause covers the {side.__name__} side of {p}')
            premises.append(self.neg(group, upsilon[:k] + [child] + upsilon[k + 1:], theta, goal))
        return Derivation('with', sequent, premises)

    def _position(self, items: list[Item], width: int) -> int:
        for k in range(width):
            kinds = {_kind(values[k]) for values, _ in items}
            if len(kinds) == 1 and (kinds != {'var'} or len(items) == 1):
                return k
        raise ProofError('no position of the clause values can be decomposed')

    # Positive phase

    def pos(self, t: Term, theta: Context, goal: Formula) -> Derivation:
        sequent = Sequent([], theta, goal)
        if isinstance(t, UnitT):
            if theta or goal.shape != 'one':
                raise ProofError(f'() cannot prove {sequent}')
            return Derivation('one', sequent)
        if isinstance(t, VarT):
            if len(theta) != 1 or theta[0][0] != t.name or theta[0][1].type != goal.type:
                raise ProofError(f'{t.name} cannot prove {sequent}')
            return Derivation('id', sequent)
        if isinstance(t, (InjLT, InjRT)):
            if goal.shape != 'plus':
                raise ProofError(f'{pretty(t)} cannot prove {goal}')
            side = 0 if isinstance(t, InjLT) else 1
            premise = self.pos(t.term, theta, goal.children()[side])
            return Derivation('plus1' if side == 0 else 'plus2', sequent, [premise])
        if isinstance(t, FoldT):
            if goal.shape != 'mu':
                raise ProofError(f'{pretty(t)} cannot prove {goal}')
            return Derivation('mu', sequent, [self.pos(t.term, theta, goal.children()[0])])
        if isinstance(t, PairT):
            if goal.shape != 'tensor':
                raise ProofError(f'{pretty(t)} cannot prove {goal}')
            left, right = goal.children()
            return Derivation('tensor', sequent, [
                self.pos(t.left, _restrict(theta, free_term_vars(t.left)), left),
                self.pos(t.right, _restrict(theta, free_term_vars(t.right)), right),
            ])
        if isinstance(t, App):
            iso_type = self.iso_type(t.iso)
            if iso_type.rhs != goal.type:
                raise ProofError(f'{pretty(t.iso)} does not produce {goal}')
            gamma = self.supply.fresh()
            argument = self.pos(t.arg, theta, type_to_formula(iso_type.lhs, gamma))
            return Derivation('cut', sequent, [argument, self.circ(t.iso, None, gamma, goal.addr)])
        if isinstance(t, LetT):
            bound_type = t.bound_type
            if bound_type is None and isinstance(t.bound, App):
                bound_type = self.iso_type(t.bound.iso).rhs
            if bound_type is None:
                raise ProofError(f'let without a recorded bound type: {pretty(t)}')
            cut_formula = type_to_formula(bound_type, self.supply.fresh())
            bound = self.pos(t.bound, _restrict(theta, free_term_vars(t.bound)), cut_formula)
            rest = _restrict(theta, free_term_vars(t.body) - set(pattern_vars(t.pattern)))
            body = self.neg([([pattern_to_value(t.pattern)], t.body)], [cut_formula], rest, goal)
            return Derivation('cut', sequent, [bound, body])
        raise TypeError(f'not a term: {t!r}')


def circ(iso: Iso, last_var: str | None = None, alpha: Address | None = None, beta: Address | None = None,
         supply: AddressSupply | None = None) -> Derivation:
    '''
    The derivation of A@alpha |- B@beta for iso : A <-> B, before ex rules are dropped.
    last_var labels the root of a clause set that calls it.
    '''
    supply = supply or AddressSupply()
    alpha = alpha or supply.fresh()
    beta = beta or supply.fresh()
    for a in (alpha, beta):
        supply.reserve(a.atom)
    return _Translator(supply).circ(iso, last_var, alpha, beta)


def extract_proof(iso: Iso, raw: bool = False, check_recursion: bool = True) -> Derivation:
    '''Type iso, translate it and, unless raw, drop the ex rules.'''
    type_iso(EMPTY_ISO_CTX, iso, check_recursion=check_recursion)
    d = circ(iso)
    logger.debug('Extracted a proof of %d rules', d.size())
    return d if raw else floor(d)


def pos_term(t: Term, supply: AddressSupply | None = None, expected: BaseType | None = None) -> Derivation:
    '''
    The positive-phase derivation of a closed term, with its let types elaborated first.
    Terms whose type cannot be inferred (a bare injection, say) need expected.
    '''
    supply = supply or AddressSupply()
    try:
        elaborated, a = elaborate(t, expected, check_recursion=False)
    except TypeCheckError as e:
        raise ProofError(f'cannot translate an ill-typed term: {e}') from e
    return _Translator(supply).pos(elaborated, [], type_to_formula(a, supply.fresh()))


def neg_phase(items: list[Item], upsilon: list[Formula], goal: Formula,
              supply: AddressSupply | None = None) -> Derivation:
    '''
    The negative phase of value lists against upsilon, each list paired with the term its
    branch continues with. Lists must have one entry per formula of upsilon.
    '''
    if any(len(values) != len(upsilon) for values, _ in items):
        raise ProofError(f'every value list needs {len(upsilon)} entries')
    supply = supply or AddressSupply()
    for f in list(upsilon) + [goal]:
        supply.reserve(f.addr.atom)
    return _Translator(supply).neg(items, list(upsilon), [], goal)

# Branches of the negative phase


def value_paths(v: Value, prefix: str = '') -> dict[str, str]:
    '''The position of every variable of v as a word over l, r, i.'''
    if isinstance(v, VarV):
        return {v.name: prefix}
    if isinstance(v, InjL):
        return value_paths(v.value, prefix + 'l')
    if isinstance(v, InjR):
        return value_paths(v.value, prefix + 'r')
    if isinstance(v, Fold):
        return value_paths(v.value, prefix + 'i')
    if isinstance(v, Pair):
        return {**value_paths(v.left, prefix + 'l'), **value_paths(v.right, prefix + 'r')}
    return {}


def reconstruct_branch_values(d: Derivation) -> list[tuple[Value, Context]]:
    '''
    For each branch of the negative phase of a raw clause-set derivation, the value it
    decomposes and the context it ends with, left to right.
    '''
    root = d.sequent.upsilon[0]
    results = []
    for pieces, theta in _branches(d, {}):
        results.append((_rebuild(root.addr, pieces), theta))
    return results


def _branches(d: Derivation, pieces: dict[Address, tuple]) -> list[tuple[dict, Context]]:
    if d.rule not in LEFT_RULES and d.rule != 'ex':
        return [(pieces, list(d.sequent.theta))]
    p = principal(d)
    if d.rule == 'ex':
        return _branches(d.premises[0], {**pieces, p.addr: ('var', d.name)})
    if d.rule == 'with':
        found = []
        for step, premise in zip('lr', d.premises):
            found += _branches(premise, {**pieces, p.addr: ('sum', step)})
        return found
    return _branches(d.premises[0], {**pieces, p.addr: (d.rule,)})


def _rebuild(addr: Address, pieces: dict[Address, tuple]) -> Value:
    if addr not in pieces:
        raise ProofError(f'no rule decomposes the formula at {addr}')
    piece = pieces[addr]
    if piece[0] == 'var':
        return VarV(piece[1])
    if piece[0] == 'bot':
        return UnitV()
    if piece[0] == 'nu':
        return Fold(_rebuild(addr.child('i'), pieces))
    if piece[0] == 'par':
        return Pair(_rebuild(addr.child('l'), pieces), _rebuild(addr.child('r'), pieces))
    inner = _rebuild(addr.child(piece[1]), pieces)
    return InjL(inner) if piece[1] == 'l' else InjR(inner)


def term_to_proof_path(t: Term, path: Sequence[int]) -> tuple[int, ...]:
    '''Where the subterm of t at path sits in the dropped-ex derivation of t.'''
    result: list[int] = []
    for index in path:
        result.append(index)
        if isinstance(t, LetT):
            if index == 1:
                result += [0] * (len(pattern_vars(t.pattern)) - 1)
            t = t.bound if index == 0 else t.body
        elif isinstance(t, PairT):
            t = t.left if index == 0 else t.right
        elif isinstance(t, App):
            t = t.arg
        elif isinstance(t, (InjLT, InjRT, FoldT)):
            t = t.term
        else:
            raise ProofError(f'{pretty(t)} has no subterm {index}')
    return tuple(result)
