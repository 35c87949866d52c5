# Small-step evaluation of closed terms under the two rewriting systems.
# 'main' applies a matching substitution in one go (LetE, IsoRec, IsoApp). 'explicit' turns
# every substitution into a chain of value-lets and moves each let down the term one
# constructor at a time. Both reduce the leftmost redex in call-by-value order; in the explicit
# system a value-let whose body is again a value-let waits for that inner let first.
#
# Evaluation keeps a zipper on the term so that a step costs time proportional to the redex,
# not to the depth of the surrounding term.

import json
import logging
from typing import Any, Iterator, Literal

from attrs import define, evolve, field, frozen

from config import DEFAULT_FUEL, DEFAULT_SYSTEM
from core import (App, BaseType, Clause, Clauses, EvalError, Fix, FoldT, InjLT, InjRT, Iso, LetT, MatchError, PairT,
                  PPair, Prod, PVar, StuckError, Subst, Term, TypeCheckError, UnitT, Value, VarT, apply_subst,
                  expr_to_term, free_term_vars, is_closed_value_term, match_value, pattern_to_value, subst_iso,
                  term_children, term_to_value, value_to_term, with_child)
from invert import invert
from parser import pretty
from typecheck import type_value

logger = logging.getLogger(__name__)

System = Literal['main', 'explicit']
SYSTEMS: tuple[System, ...] = ('main', 'explicit')

Rule = Literal['IsoApp', 'IsoRec', 'LetE',
               'beta-IsoApp', 'beta-IsoRec', 'beta-LetE',
               'elet-var', 'elet-split', 'elet-pair-left', 'elet-pair-right',
               'elet-injl', 'elet-injr', 'elet-fold', 'elet-app', 'elet-let', 'elet-commute']

Path = tuple[int, ...]


@define
class EvalConfig:
    '''
    Options for one evaluation.
    :param int fuel: the maximum number of rewriting steps
    :param bool trace: whether to record every step
    :param str system: 'main' or 'explicit'
    :param bool split_lets: in the explicit system, take pair patterns apart one component
        at a time; when False every pair pattern is matched at once by beta-LetE
    '''
    fuel: int = DEFAULT_FUEL
    trace: bool = False
    system: System = DEFAULT_SYSTEM
    split_lets: bool = True

    def __attrs_post_init__(self) -> None:
        if self.fuel < 1:
            raise ValueError(f'fuel must be positive, got {self.fuel}')
        if self.system not in SYSTEMS:
            raise ValueError(f'unknown rewriting system {self.system!r}; expected one of {SYSTEMS}')

    def to_dict(self) -> dict[str, Any]:
        return {'fuel': self.fuel, 'trace': self.trace, 'system': self.system, 'split_lets': self.split_lets}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'EvalConfig':
        return cls(fuel=int(data.get('fuel', DEFAULT_FUEL)), trace=bool(data.get('trace', False)),
                   system=data.get('system', DEFAULT_SYSTEM), split_lets=bool(data.get('split_lets', True)))


@frozen
class TraceEntry:
    '''
    One rewriting step.
    :param int step: 1-based step number
    :param str rule: the rule that fired
    :param tuple path: child indices from the root to the redex
    :param Term before: the whole term before the step
    :param Term after: the whole term after the step
    '''
    step: int
    rule: Rule
    path: Path = field(converter=tuple)
    before: Term
    after: Term

    def to_dict(self) -> dict[str, Any]:
        return {'step': self.step, 'rule': self.rule, 'path': list(self.path), 'term': pretty(self.after)}


@define
class Trace:
    entries: list[TraceEntry] = field(factory=list)

    def append(self, entry: TraceEntry) -> None:
        self.entries.append(entry)

    def rules(self) -> list[Rule]:
        return [entry.rule for entry in self.entries]

    def is_chained(self) -> bool:
        return all(a.after == b.before for a, b in zip(self.entries, self.entries[1:]))

    def to_json_lines(self) -> str:
        return ''.join(json.dumps(entry.to_dict()) + '\n' for entry in self.entries)

    def __iter__(self) -> Iterator[TraceEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@define
class EvalResult:
    '''
    The outcome of an evaluation.
    :param Term term: the final term, a value unless fuel ran out
    :param int steps: the number of steps taken
    :param Trace trace: the recorded steps, empty unless tracing was requested
    :param bool exhausted: True when the fuel ran out before a value was reached
    '''
    term: Term
    steps: int
    trace: Trace = field(factory=Trace)
    exhausted: bool = False

    @property
    def value(self) -> Value | None:
        return None if self.exhausted else term_to_value(self.term)

    def to_dict(self) -> dict[str, Any]:
        return {'value': None if self.exhausted else pretty(self.term), 'steps': self.steps,
                'exhausted': self.exhausted}


@frozen
class Reduction:
    '''A single step: the rule, where it fired and the resulting term.'''
    rule: Rule
    path: Path = field(converter=tuple)
    term: Term

# Redex selection


def _is_value(t: Term) -> bool:
    return is_closed_value_term(t)


def _is_value_let(t: Term) -> bool:
    return isinstance(t, LetT) and _is_value(t.bound)


def _decide(t: Term, system: System, split_lets: bool) -> int | Rule | None:
    '''The child to descend into, the rule that applies at t, or None when t is a value.'''
    if isinstance(t, UnitT):
        return None
    if isinstance(t, VarT):
        raise StuckError(f'free variable {t.name!r}')
    if isinstance(t, (InjLT, InjRT, FoldT)):
        return None if _is_value(t.term) else 0
    if isinstance(t, PairT):
        if not _is_value(t.left):
            return 0
        return None if _is_value(t.right) else 1
    if isinstance(t, App):
        if not _is_value(t.arg):
            return 0
        if isinstance(t.iso, Fix):
            return 'IsoRec' if system == 'main' else 'beta-IsoRec'
        if isinstance(t.iso, Clauses):
            return 'IsoApp' if system == 'main' else 'beta-IsoApp'
        raise StuckError(f'unbound iso-variable {t.iso.name!r}')
    if isinstance(t, LetT):
        if not _is_value(t.bound):
            return 0
        if system == 'main':
            return 'LetE'
        return _decide_value_let(t, split_lets)
    raise TypeError(f'not a term: {t!r}')


def _decide_value_let(t: LetT, split_lets: bool) -> int | Rule:
    if _is_value_let(t.body):
        return 1
    if isinstance(t.pattern, PPair):
        if split_lets and isinstance(t.pattern.left, PVar) and isinstance(t.bound, PairT):
            return 'elet-split'
        return 'beta-LetE'
    x, body = t.pattern.name, t.body
    if isinstance(body, VarT) and body.name == x:
        return 'elet-var'
    if isinstance(body, PairT):
        if x in free_term_vars(body.left):
            return 'elet-pair-left'
        if x in free_term_vars(body.right):
            return 'elet-pair-right'
    if isinstance(body, InjLT):
        return 'elet-injl'
    if isinstance(body, InjRT):
        return 'elet-injr'
    if isinstance(body, FoldT):
        return 'elet-fold'
    if isinstance(body, App):
        return 'elet-app'
    if isinstance(body, LetT):
        return 'elet-let' if x in free_term_vars(body.bound) else 'elet-commute'
    raise StuckError(f'let-bound variable {x!r} is not used in {pretty(body)}')

# Contraction


def let_sigma(s: Subst, t: Term, types: dict[str, BaseType] | None = None) -> Term:
    '''let x1 = v1 in ... let xn = vn in t, in the binding order of s.'''
    types = types or {}
    for name, v in reversed(list(s)):
        t = LetT(PVar(name), value_to_term(v), t, types.get(name))
    return t


def select_clause(iso: Clauses, v: Value) -> tuple[int, Subst]:
    '''The first clause whose left value matches v.'''
    for i, clause in enumerate(iso.clauses):
        s = match_value(clause.lhs, v)
        if s is not None:
            return i, s
    raise MatchError(f'no clause matches {pretty(v)}')


def _clause_types(iso: Clauses, clause: Clause) -> dict[str, BaseType]:
    if iso.annotation is None:
        return {}
    try:
        return type_value(clause.lhs, iso.annotation.lhs)
    except TypeCheckError:
        return {}


def _pattern_types(t: LetT) -> dict[str, BaseType]:
    if t.bound_type is None:
        return {}
    try:
        return type_value(pattern_to_value(t.pattern), t.bound_type)
    except TypeCheckError:
        return {}


def _contract(t: Term, rule: Rule) -> Term:
    if rule in ('IsoRec', 'beta-IsoRec'):
        fix = t.iso
        return App(subst_iso(fix.body, fix.var, fix), t.arg)
    if rule in ('IsoApp', 'beta-IsoApp'):
        i, s = select_clause(t.iso, term_to_value(t.arg))
        clause = t.iso.clauses[i]
        body = expr_to_term(clause.rhs)
        if rule == 'IsoApp':
            return apply_subst(s, body)
        return let_sigma(s, body, _clause_types(t.iso, clause))
    if rule in ('LetE', 'beta-LetE'):
        s = match_value(pattern_to_value(t.pattern), term_to_value(t.bound))
        if s is None:
            raise MatchError(f'{pretty(t.bound)} does not match the let pattern')
        if rule == 'LetE':
            return apply_subst(s, t.body)
        return let_sigma(s, t.body, _pattern_types(t))
    if rule == 'elet-split':
        left_type = right_type = None
        if isinstance(t.bound_type, Prod):
            left_type, right_type = t.bound_type.left, t.bound_type.right
        inner = LetT(t.pattern.right, t.bound.right, t.body, right_type)
        return LetT(t.pattern.left, t.bound.left, inner, left_type)
    body = t.body
    if rule == 'elet-var':
        return t.bound
    if rule == 'elet-pair-left':
        return PairT(evolve(t, body=body.left), body.right)
    if rule == 'elet-pair-right':
        return PairT(body.left, evolve(t, body=body.right))
    if rule in ('elet-injl', 'elet-injr', 'elet-fold'):
        return type(body)(evolve(t, body=body.term))
    if rule == 'elet-app':
        return App(body.iso, evolve(t, body=body.arg))
    if rule == 'elet-let':
        return evolve(body, bound=evolve(t, body=body.bound))
    if rule == 'elet-commute':
        return evolve(body, body=evolve(t, body=body.body))
    raise ValueError(f'unknown rule {rule!r}')


@define
class _Zipper:
    '''A term split into the path of frames above the focus and the focused subterm.'''
    focus: Term
    system: System
    split_lets: bool
    frames: list[tuple[Term, int]] = field(factory=list)

    def path(self) -> Path:
        return tuple(i for _, i in self.frames)

    def plug(self) -> Term:
        t = self.focus
        for parent, i in reversed(self.frames):
            t = with_child(parent, i, t)
        return t

    def up(self) -> None:
        parent, i = self.frames.pop()
        self.focus = with_child(parent, i, self.focus)

    def find(self) -> Rule | None:
        '''Move the focus onto the next redex; None when the whole term is a value.'''
        while True:
            decision = _decide(self.focus, self.system, self.split_lets)
            if isinstance(decision, int):
                self.frames.append((self.focus, decision))
                self.focus = term_children(self.focus)[decision]
            elif decision is not None:
                return decision
            elif not self.frames:
                return None
            else:
                self.up()

    def contract(self, rule: Rule) -> None:
        self.focus = _contract(self.focus, rule)
        # value-lets waiting on this redex chose by the old shape of their body
        while self.frames and isinstance(self.frames[-1][0], LetT) and self.frames[-1][1] == 1:
            self.up()


def reduce(t: Term, system: System = 'main', split_lets: bool = True) -> Reduction | None:
    '''One step of the chosen system, or None when t is a value.'''
    zipper = _Zipper(t, system, split_lets)
    rule = zipper.find()
    if rule is None:
        return None
    path = zipper.path()
    zipper.contract(rule)
    return Reduction(rule, path, zipper.plug())


def step(t: Term) -> Term | None:
    '''One step of the substitution system; None when t is a value.'''
    reduction = reduce(t, 'main')
    return None if reduction is None else reduction.term


def step_explicit(t: Term, split_lets: bool = True) -> Term | None:
    '''One step of the explicit-substitution system; None when t is a value.'''
    reduction = reduce(t, 'explicit', split_lets)
    return None if reduction is None else reduction.term


def evaluate(t: Term, config: EvalConfig | None = None) -> EvalResult:
    '''Rewrite t until it is a value or the fuel runs out.'''
    config = config or EvalConfig()
    zipper = _Zipper(t, config.system, config.split_lets)
    trace = Trace()
    before = t
    steps = 0
    while True:
        rule = zipper.find()
        if rule is None:
            logger.debug('Reached a value in %d steps', steps)
            return EvalResult(zipper.plug(), steps, trace)
        if steps >= config.fuel:
            logger.warning('Fuel exhausted after %d steps', steps)
            return EvalResult(zipper.plug(), steps, trace, exhausted=True)
        path = zipper.path()
        zipper.contract(rule)
        steps += 1
        logger.debug('step %d: %s at %s', steps, rule, path)
        if config.trace:
            after = zipper.plug()
            trace.append(TraceEntry(steps, rule, path, before, after))
            before = after


def evaluate_value(t: Term, config: EvalConfig | None = None) -> Value:
    '''The value of t; raises EvalError when the fuel runs out.'''
    result = evaluate(t, config)
    if result.exhausted:
        raise EvalError(f'fuel exhausted after {result.steps} steps')
    return result.value


def apply_iso(iso: Iso, v: Value, config: EvalConfig | None = None) -> EvalResult:
    return evaluate(App(iso, value_to_term(v)), config)


def run_backward(iso: Iso, v: Value, config: EvalConfig | None = None) -> EvalResult:
    '''Evaluate the inverse of iso on v.'''
    return apply_iso(invert(iso), v, config)


def round_trip(iso: Iso, v: Value, config: EvalConfig | None = None) -> Value | None:
    '''invert(iso) applied to iso applied to v; None when either direction runs out of fuel.'''
    forward = apply_iso(iso, v, config)
    if forward.exhausted:
        return None
    backward = run_backward(iso, forward.value, config)
    return backward.value
