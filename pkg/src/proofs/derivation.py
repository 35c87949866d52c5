# Circular pre-proofs stored as finite trees. A sequent Upsilon ; Theta |- G carries the
# formulas still to decompose (Upsilon), the variables already named (Theta) and one goal.
# A back-edge be(f) points at the closest sequent below it labeled f.
# A trunc(f) leaf marks where an unfolding stopped following be(f).

import json
from collections import Counter
from typing import Any, Callable, Iterator, Literal, get_args

from attrs import evolve, field, frozen

from core import ProofError

from .formulas import Address, AddressSupply, Formula

Rule = Literal['id', 'cut', 'one', 'bot', 'tensor', 'par', 'plus1', 'plus2', 'with', 'mu', 'nu', 'ex', 'be', 'trunc']
RULES: tuple[Rule, ...] = get_args(Rule)
LEFT_RULES = frozenset({'bot', 'par', 'with', 'nu'})
RIGHT_RULES = frozenset({'one', 'plus1', 'plus2', 'tensor', 'mu'})
PREMISE_COUNT = {'id': 0, 'one': 0, 'be': 0, 'trunc': 0, 'cut': 2, 'tensor': 2, 'with': 2}

NodePath = tuple[int, ...]


@frozen
class Sequent:
    '''
    Upsilon ; Theta |-^label goal
    :param tuple upsilon: formulas waiting for the negative phase, in order
    :param tuple theta: (variable, formula) pairs
    :param Formula goal: the formula being proved
    :param str label: the back-edge label of this sequent, if any
    '''
    upsilon: tuple[Formula, ...] = field(converter=tuple)
    theta: tuple[tuple[str, Formula], ...] = field(converter=tuple)
    goal: Formula
    label: str | None = None

    @property
    def hypotheses(self) -> list[Formula]:
        return list(self.upsilon) + [formula for _, formula in self.theta]

    def flat(self) -> 'Sequent':
        '''Upsilon and Theta merged into one unnamed context.'''
        return Sequent(self.hypotheses, (), self.goal, self.label)

    def one_sided(self) -> list[Formula]:
        return [h.negate() for h in self.hypotheses] + [self.goal]

    def find(self, addr: Address) -> Formula | None:
        for formula in self.hypotheses:
            if formula.addr == addr:
                return formula
        return None

    def __str__(self) -> str:
        left = ', '.join(str(f) for f in self.upsilon)
        if self.theta:
            left += ' ; ' + ', '.join(f'{x}: {f}' for x, f in self.theta)
        turnstile = f'|-^{self.label}' if self.label else '|-'
        return f'{left} {turnstile} {self.goal}'.strip()

    def to_dict(self) -> dict[str, Any]:
        data = {
            'upsilon': [f.to_dict() for f in self.upsilon],
            'theta': [{'var': x, 'formula': f.to_dict()} for x, f in self.theta],
            'goal': self.goal.to_dict(),
        }
        if self.label is not None:
            data['label'] = self.label
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'Sequent':
        return cls([Formula.from_dict(f) for f in data['upsilon']],
                   [(entry['var'], Formula.from_dict(entry['formula'])) for entry in data['theta']],
                   Formula.from_dict(data['goal']), data.get('label'))


@frozen
class Derivation:
    '''
    One rule application and the derivations of its premises.
    :param str rule: the rule name
    :param Sequent sequent: the conclusion
    :param tuple premises: premise derivations, left to right
    :param str name: the variable of ex, the label targeted by be
    '''
    rule: Rule
    sequent: Sequent
    premises: tuple['Derivation', ...] = field(converter=tuple, default=())
    name: str | None = None

    def __attrs_post_init__(self) -> None:
        if self.rule not in RULES:
            raise ValueError(f'unknown rule {self.rule!r}')
        expected = PREMISE_COUNT.get(self.rule, 1)
        if len(self.premises) != expected:
            raise ValueError(f'{self.rule} takes {expected} premises, got {len(self.premises)}')
        if self.rule in ('ex', 'be') and not self.name:
            raise ValueError(f'{self.rule} needs a name')

    @property
    def goal(self) -> Formula:
        return self.sequent.goal

    @property
    def hypotheses(self) -> list[Formula]:
        return self.sequent.hypotheses

    @property
    def label(self) -> str | None:
        return self.sequent.label

    def with_label(self, label: str | None) -> 'Derivation':
        return evolve(self, sequent=evolve(self.sequent, label=label))

    def nodes(self, path: NodePath = ()) -> Iterator[tuple[NodePath, 'Derivation']]:
        '''Every node with its path, root first, premises left to right.'''
        yield path, self
        for i, premise in enumerate(self.premises):
            yield from premise.nodes(path + (i,))

    def at(self, path: NodePath) -> 'Derivation':
        d = self
        for i in path:
            d = d.premises[i]
        return d

    def replace(self, path: NodePath, new: 'Derivation') -> 'Derivation':
        if not path:
            return new
        premises = list(self.premises)
        premises[path[0]] = premises[path[0]].replace(path[1:], new)
        return evolve(self, premises=premises)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def is_finite(self) -> bool:
        return all(node.rule != 'be' for _, node in self.nodes())

    def to_dict(self) -> dict[str, Any]:
        data = {'rule': self.rule, 'sequent': self.sequent.to_dict(),
                'premises': [p.to_dict() for p in self.premises]}
        if self.name is not None:
            data['name'] = self.name
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'Derivation':
        try:
            return cls(data['rule'], Sequent.from_dict(data['sequent']),
                       [cls.from_dict(p) for p in data.get('premises', [])], data.get('name'))
        except (KeyError, TypeError, ValueError) as e:
            raise ProofError(f'malformed proof: {e}') from e


def principal(d: Derivation) -> Formula:
    '''The hypothesis a left rule or ex decomposes.'''
    if d.rule == 'ex':
        return d.sequent.upsilon[0]
    if d.rule not in LEFT_RULES:
        raise ProofError(f'{d.rule} has no principal hypothesis')
    kept = {h.addr for h in d.premises[0].hypotheses}
    gone = [h for h in d.hypotheses if h.addr not in kept]
    if len(gone) != 1:
        raise ProofError(f'{d.rule} at {d.sequent} does not decompose exactly one hypothesis')
    return gone[0]


def floor(d: Derivation) -> Derivation:
    '''Drop the ex rules and merge Upsilon ; Theta into one context.'''
    if d.rule == 'ex':
        below = floor(d.premises[0])
        return below.with_label(d.label) if d.label else below
    return Derivation(d.rule, d.sequent.flat(), [floor(p) for p in d.premises], d.name)


def is_purely_positive(d: Derivation) -> bool:
    '''Finite and cut-free, built from 1, plus, tensor, mu and id only.'''
    return all(node.rule in ('one', 'plus1', 'plus2', 'tensor', 'mu', 'id') for _, node in d.nodes())


def is_closed_value_proof(d: Derivation) -> bool:
    return not d.hypotheses and is_purely_positive(d)

# Addresses


def map_addresses(d: Derivation, move: Callable[[Address], Address]) -> Derivation:
    def formula(f: Formula) -> Formula:
        return f.at(move(f.addr))

    s = d.sequent
    sequent = Sequent([formula(f) for f in s.upsilon], [(x, formula(f)) for x, f in s.theta], formula(s.goal), s.label)
    return Derivation(d.rule, sequent, [map_addresses(p, move) for p in d.premises], d.name)


def iter_formulas(d: Derivation) -> Iterator[Formula]:
    for _, node in d.nodes():
        yield from node.sequent.upsilon
        for _, f in node.sequent.theta:
            yield f
        yield node.goal


def supply_after(d: Derivation) -> AddressSupply:
    '''A supply whose atoms are all fresh for d.'''
    supply = AddressSupply()
    for f in iter_formulas(d):
        supply.reserve(f.addr.atom)
    return supply


def canonical(d: Derivation) -> Derivation:
    '''Renumber atoms 0, 1, 2, ... in order of first appearance.'''
    numbering: dict[int, int] = {}
    for f in iter_formulas(d):
        numbering.setdefault(f.addr.atom, len(numbering))
    return map_addresses(d, lambda a: Address(numbering[a.atom], a.dual, a.path))


def relocate(d: Derivation, old: Address, new: Address) -> Derivation:
    return map_addresses(d, lambda a: a.rebase(old, new))


def instantiate(root: Derivation, sequent: Sequent, supply: AddressSupply) -> Derivation:
    '''
    A copy of root concluding sequent: the conclusion addresses of root are rebased onto
    those of sequent and every other atom is replaced by a fresh one.
    '''
    hypotheses = root.hypotheses
    if len(hypotheses) != len(sequent.hypotheses):
        raise ProofError(f'cannot put {root.sequent} in place of {sequent}')
    anchors = []
    for a, b in zip(hypotheses + [root.goal], sequent.hypotheses + [sequent.goal]):
        if a.type != b.type:
            raise ProofError(f'cannot put {root.sequent} in place of {sequent}')
        anchors.append((a.addr, b.addr))
    fresh: dict[int, int] = {}

    def move(addr: Address) -> Address:
        for old, new in anchors:
            if old.is_prefix_of(addr):
                return addr.rebase(old, new)
        if addr.atom not in fresh:
            fresh[addr.atom] = supply.fresh().atom
        return Address(fresh[addr.atom], addr.dual, addr.path)

    return map_addresses(root, move)


def unfold(d: Derivation, depth: int) -> Derivation:
    '''
    Replace every back-edge by a copy of its labeled target, depth times. The result of a
    positive depth is a plain finite tree: labels are dropped and the back-edges left in
    the last layer become trunc leaves.
    '''
    if depth < 0:
        raise ValueError(f'depth must be non-negative, got {depth}')
    if depth == 0:
        return d
    supply = supply_after(d)
    for _ in range(depth):
        d = _unfold_once(d, {}, supply)
    return _truncate(d)


def _unfold_once(d: Derivation, targets: dict[str, Derivation], supply: AddressSupply) -> Derivation:
    if d.rule == 'be':
        target = targets.get(d.name)
        if target is None:
            raise ProofError(f'be({d.name}) has no labeled sequent below it')
        return instantiate(target, d.sequent, supply)
    if d.label:
        targets = {**targets, d.label: d}
    return evolve(d, premises=[_unfold_once(p, targets, supply) for p in d.premises])


def _truncate(d: Derivation) -> Derivation:
    sequent = evolve(d.sequent, label=None)
    if d.rule == 'be':
        return Derivation('trunc', sequent, name=d.name)
    return Derivation(d.rule, sequent, [_truncate(p) for p in d.premises], d.name)

# Comparison


def _context_key(d: Derivation) -> Counter:
    return Counter((f.type, f.dual) for f in d.hypotheses)


def equal_modulo_addresses(a: Derivation, b: Derivation) -> bool:
    '''
    Same rules, labels and formulas, where the goal and axiom addresses of a correspond to
    those of b through one bijection. Contexts are compared as multisets of formulas.
    '''
    forward: dict[Address, Address] = {}
    backward: dict[Address, Address] = {}

    def bind(x: Address, y: Address) -> bool:
        return forward.setdefault(x, y) == y and backward.setdefault(y, x) == x

    def same_formula(f: Formula, g: Formula) -> bool:
        return f.type == g.type and f.dual == g.dual and bind(f.addr, g.addr)

    def same(d: Derivation, e: Derivation) -> bool:
        if (d.rule, d.name, d.label, len(d.premises)) != (e.rule, e.name, e.label, len(e.premises)):
            return False
        if _context_key(d) != _context_key(e) or not same_formula(d.goal, e.goal):
            return False
        if d.rule == 'id' and not same_formula(d.hypotheses[0], e.hypotheses[0]):
            return False
        return all(same(p, q) for p, q in zip(d.premises, e.premises))

    return same(a, b)

# Well-formedness


def well_formed(d: Derivation, bouncing: bool = True) -> None:
    '''
    Check the address discipline of every rule and the back-edge discipline: every be(f)
    sits under exactly one sequent labeled f and, when bouncing is set, is the right premise
    of a cut. Raises ProofError on the first violation.
    '''
    _check(d, {}, None, bouncing)


def _fail(d: Derivation, message: str) -> ProofError:
    return ProofError(f'{d.rule} at {d.sequent}: {message}')


def _same_context(a: list[Formula], b: list[Formula]) -> bool:
    return Counter(a) == Counter(b)


def _check(d: Derivation, targets: dict[str, list[Derivation]], parent: tuple[str, int] | None,
           bouncing: bool) -> None:
    if d.label:
        targets = {**targets, d.label: targets.get(d.label, []) + [d]}
    goal, hyps = d.goal, d.hypotheses
    rule = d.rule
    if rule == 'id':
        if len(hyps) != 1 or hyps[0].type != goal.type:
            raise _fail(d, 'an axiom needs exactly one hypothesis of the goal type')
    elif rule == 'one':
        if hyps or goal.shape != 'one':
            raise _fail(d, 'the unit rule has an empty context and goal 1')
    elif rule in ('plus1', 'plus2', 'mu'):
        if goal.shape != ('mu' if rule == 'mu' else 'plus'):
            raise _fail(d, 'goal has the wrong connective')
        sub = goal.children()[1 if rule == 'plus2' else 0]
        premise = d.premises[0]
        if premise.goal != sub or not _same_context(premise.hypotheses, hyps):
            raise _fail(d, f'premise must prove {sub} in the same context')
    elif rule == 'tensor':
        if goal.shape != 'tensor':
            raise _fail(d, 'goal is not a tensor')
        left, right = d.premises
        if [left.goal, right.goal] != goal.children():
            raise _fail(d, 'premise goals must be the lifted components')
        if not _same_context(left.hypotheses + right.hypotheses, hyps):
            raise _fail(d, 'premise contexts must split the context')
    elif rule == 'cut':
        left, right = d.premises
        cut_formula = left.goal
        rest = list(right.hypotheses)
        if cut_formula not in rest:
            raise _fail(d, f'cut formula {cut_formula} is not a hypothesis of the right premise')
        rest.remove(cut_formula)
        if right.goal != goal or not _same_context(left.hypotheses + rest, hyps):
            raise _fail(d, 'conclusion does not match the premises')
    elif rule in LEFT_RULES:
        _check_left(d)
    elif rule == 'ex':
        premise = d.premises[0]
        head = d.sequent.upsilon[0] if d.sequent.upsilon else None
        if (head is None or list(premise.sequent.upsilon) != list(d.sequent.upsilon[1:])
                or list(premise.sequent.theta) != list(d.sequent.theta) + [(d.name, head)]):
            raise _fail(d, f'ex({d.name}) must move the first formula into Theta')
    elif rule == 'be':
        found = targets.get(d.name, [])
        if len(found) != 1:
            raise _fail(d, f'{len(found)} sequents labeled {d.name} below the back-edge')
        target = found[0]
        if (Counter(h.type for h in target.hypotheses) != Counter(h.type for h in hyps)
                or target.goal.type != goal.type):
            raise _fail(d, 'back-edge sequent differs from its target')
        if bouncing and parent != ('cut', 1):
            raise _fail(d, 'a back-edge must be the right premise of a cut')
    if rule in LEFT_RULES | {'ex'} and any(p.goal != goal for p in d.premises):
        raise _fail(d, 'left rules keep the goal')
    for i, premise in enumerate(d.premises):
        _check(premise, targets, (rule, i), bouncing)


def _check_left(d: Derivation) -> None:
    p = principal(d)
    expected = {'bot': 'one', 'par': 'tensor', 'with': 'plus', 'nu': 'mu'}[d.rule]
    if p.shape != expected:
        raise _fail(d, f'principal {p} is not a {expected}')
    rest = list(d.hypotheses)
    rest.remove(p)
    children = p.children()
    if d.rule == 'with':
        replacements = [[children[0]], [children[1]]]
    elif d.rule == 'bot':
        replacements = [[]]
    else:
        replacements = [children]
    for premise, added in zip(d.premises, replacements):
        if not _same_context(premise.hypotheses, rest + added):
            raise _fail(d, f'premise context must replace {p} by its lifted components')


def dump_proof(d: Derivation) -> str:
    '''Canonical JSON text of d.'''
    return json.dumps(canonical(d).to_dict(), indent=2) + '\n'


def load_proof(text: str) -> Derivation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProofError(f'proof is not valid JSON: {e}') from e
    return Derivation.from_dict(data)
