# Validity of the circular derivations built by the translation.
# Every loop runs from the labeled root of a fix body to one of its back-edges. Its pre-thread
# climbs the negative phase along the part of the input that holds the decreasing argument
# (weights l, r, i, or W for rules on other formulas), climbs the positive phase to the axiom
# on that argument (W ... A), comes down the argument tuple (~l, ~r) and closes at the
# bouncing cut (C). The loop is a thread when the argument sits strictly inside the input
# component it is passed as, and the least formula seen on the way up is a greatest fixed point.

import logging
from typing import Any, Literal

from attrs import field, frozen

from core import BaseType, Mu, ProofError, Prod, Sum, tensor_spine, type_unfold
from parser import pretty_type
from typecheck import RecInfo

from .derivation import LEFT_RULES, Derivation, NodePath, principal
from .formulas import Formula

logger = logging.getLogger(__name__)

Direction = Literal['up', 'down']


@frozen
class ThreadStep:
    '''
    :param Formula formula: the formula followed at this point
    :param tuple path: the node the step leaves from
    :param str direction: 'up' towards the leaves, 'down' towards the root
    :param str weight: one of l, r, i, W, A, C, ~l, ~r, ~i
    '''
    formula: Formula
    path: NodePath = field(converter=tuple)
    direction: Direction
    weight: str

    def to_dict(self) -> dict[str, Any]:
        return {'formula': str(self.formula), 'path': list(self.path), 'direction': self.direction,
                'weight': self.weight}


@frozen
class PreThread:
    '''
    One period of a loop.
    :param tuple steps: the steps, root first
    :param int negative: how many leading steps cross the negative phase
    '''
    steps: tuple[ThreadStep, ...] = field(converter=tuple)
    negative: int

    @property
    def weights(self) -> list[str]:
        return [s.weight for s in self.steps]

    def word(self) -> str:
        return ' '.join(self.weights)

    def parts(self) -> tuple[list[str], list[str], list[str]]:
        '''The negative part p, the positive climb, and the descent q (without A and C).'''
        weights = self.weights
        bounce = weights.index('A') if 'A' in weights else len(weights)
        return weights[:self.negative], weights[self.negative:bounce], weights[bounce + 1:-1]

    def visible(self) -> list[Formula]:
        return [s.formula for s in self.steps[:self.negative + 1]]

    def to_dict(self) -> dict[str, Any]:
        return {'weights': self.word(), 'steps': [s.to_dict() for s in self.steps]}


@frozen
class LoopWitness:
    '''
    :param str label: the fix variable of the loop
    :param int index: the input component the loop decreases on (1-based)
    :param tuple threads: one period per back-edge
    :param Formula recurring: the least recurring formula, seen from the hypothesis side
    '''
    label: str
    index: int
    threads: tuple[PreThread, ...] = field(converter=tuple)
    recurring: Formula

    def to_dict(self) -> dict[str, Any]:
        return {'label': self.label, 'index': self.index, 'recurring': str(self.recurring),
                'threads': [t.to_dict() for t in self.threads]}


@frozen
class Valid:
    loops: tuple[LoopWitness, ...] = field(converter=tuple, default=())

    def to_dict(self) -> dict[str, Any]:
        return {'valid': True, 'loops': [w.to_dict() for w in self.loops]}


@frozen
class Invalid:
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {'valid': False, 'reason': self.reason}


def _back_edges(d: Derivation, label: str) -> list[NodePath]:
    found = []

    def walk(node: Derivation, path: NodePath) -> None:
        if node.rule == 'be' and node.name == label:
            found.append(path)
        elif not path or node.label != label:
            for i, premise in enumerate(node.premises):
                walk(premise, path + (i,))

    walk(d, ())
    return found


def build_prethread(d: Derivation, rec: RecInfo | int) -> list[PreThread]:
    '''
    The pre-threads of the loops closing at the labeled root of d, one per back-edge,
    following the input component rec.index. Raises ProofError when a loop has no such thread.
    '''
    if not d.label:
        raise ProofError('the root of the derivation is not a back-edge target')
    index = rec.index if isinstance(rec, RecInfo) else rec
    root = d.hypotheses[0]
    width = len(tensor_spine(root.type))
    if not 1 <= index <= width:
        raise ProofError(f'component {index} is outside the {width} components of {root}')
    return [_period(d, root, edge, index, width) for edge in _back_edges(d, d.label)]


def _period(d: Derivation, root: Formula, edge: NodePath, j: int, m: int) -> PreThread:
    cut_path = edge[:-1]
    if edge[-1] != 1 or d.at(cut_path).rule != 'cut':
        raise ProofError('a back-edge is not the right premise of a cut')
    path = cut_path + (0,)
    descent = []
    for _ in range(j - 1):
        if d.at(path).rule != 'tensor':
            raise ProofError(f'a recursive call is not applied to a {m}-tuple')
        path += (1,)
        descent.append('~r')
    if j < m:
        if d.at(path).rule != 'tensor':
            raise ProofError(f'a recursive call is not applied to a {m}-tuple')
        path += (0,)
        descent.append('~l')
    axiom = d.at(path)
    if axiom.rule != 'id':
        raise ProofError(f'component {j} of a recursive call is not a variable')
    target = axiom.hypotheses[0]
    if not root.addr.is_prefix_of(target.addr):
        raise ProofError(f'component {j} of a recursive call is not part of the input')

    steps = []
    followed = root
    negative = 0
    in_negative = True
    for k in range(len(path)):
        node = d.at(path[:k])
        if in_negative and node.rule in LEFT_RULES:
            weight = 'W'
            if principal(node).addr == followed.addr:
                depth = len(followed.addr.path)
                if depth >= len(target.addr.path):
                    raise ProofError(f'the input formula {followed} is decomposed past the argument')
                weight = target.addr.path[depth]
            steps.append(ThreadStep(followed, path[:k], 'up', weight))
            if weight != 'W':
                followed = followed.child(weight)
            negative += 1
            continue
        if in_negative:
            in_negative = False
            if followed != target:
                raise ProofError(f'the negative phase stops at {followed} instead of {target}')
        steps.append(ThreadStep(target, path[:k], 'up', 'W'))
    if in_negative and followed != target:
        raise ProofError(f'the negative phase stops at {followed} instead of {target}')
    steps.append(ThreadStep(target, path, 'up', 'A'))
    for weight in reversed(descent):
        steps.append(ThreadStep(d.at(path).goal, path, 'down', weight))
        path = path[:-1]
    steps.append(ThreadStep(d.at(path).goal, path, 'down', 'C'))
    return PreThread(steps, negative)

# Checking a period


def _closure(t: BaseType) -> set[BaseType]:
    seen: set[BaseType] = set()
    todo = [t]
    while todo:
        u = todo.pop()
        if u in seen:
            continue
        seen.add(u)
        if isinstance(u, (Sum, Prod)):
            todo += [u.left, u.right]
        elif isinstance(u, Mu):
            todo.append(type_unfold(u))
    return seen


def recurring_formula(thread: PreThread) -> Formula:
    '''The first visible formula that is a subformula of every visible formula.'''
    visible = thread.visible()
    closures = [_closure(f.type) for f in visible]
    for f in visible:
        if all(f.type in c for c in closures):
            return f
    raise ProofError('the visible formulas have no least element')


def _period_problem(thread: PreThread) -> str | None:
    p, climb, q = thread.parts()
    weights = thread.weights
    if (weights.count('A') != 1 or weights[-1] != 'C' or any(w not in 'lriW' for w in p)
            or any(w != 'W' for w in climb) or any(w not in ('~l', '~r', '~i', 'W') for w in q)):
        return f'pre-thread {thread.word()} does not decompose as p W* A q C'
    decreasing = ''.join(w for w in p if w != 'W')
    passed = ''.join(w[1] for w in reversed(q) if w != 'W')
    if not decreasing.startswith(passed):
        return f'the argument is passed at {passed or "the root"} but taken from {decreasing or "the root"}'
    if len(decreasing) <= len(passed):
        return f'no strict decrease: |{decreasing}| <= |{passed}|'
    least = recurring_formula(thread)
    if not isinstance(least.type, Mu):
        return f'the least recurring formula {pretty_type(least.type)} is not a greatest fixed point'
    return None


def check_validity(d: Derivation, rec: RecInfo | None = None) -> Valid | Invalid:
    '''
    Check every loop of d. A loop must be a thread along some input component; rec fixes
    the component for the loop at the root of d.
    '''
    loops = []
    for path, node in d.nodes():
        if not node.label:
            continue
        width = len(tensor_spine(node.hypotheses[0].type))
        indices = [rec.index] if rec is not None and not path else list(range(1, width + 1))
        result = _check_loop(node, indices)
        if isinstance(result, Invalid):
            logger.info('Loop %s is not a thread: %s', node.label, result.reason)
            return result
        loops.append(result)
    return Valid(loops)


def _check_loop(node: Derivation, indices: list[int]) -> LoopWitness | Invalid:
    problems = []
    for j in indices:
        try:
            threads = build_prethread(node, j)
        except ProofError as e:
            problems.append(str(e))
            continue
        problem = next((p for p in map(_period_problem, threads) if p is not None), None)
        if problem is not None:
            problems.append(problem)
            continue
        if not threads:
            raise ProofError(f'loop {node.label} has no back-edge')
        recurring = recurring_formula(threads[0]).negate()
        logger.debug('Loop %s is a thread along component %d', node.label, j)
        return LoopWitness(node.label, j, threads, recurring)
    return Invalid(f'loop {node.label}: {problems[0]}')
