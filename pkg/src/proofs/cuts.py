# Cut reduction on dropped-ex derivations, and the lockstep simulation of the explicit
# rewriting system. Each rewriting step on a term is matched by a few cut steps on the
# derivation of that term, at the place the term step happened; after every term step the
# derivation must again be the derivation of the new term.

import logging
from typing import Any

from attrs import define, field, frozen

from config import CUT_BUDGET, DEFAULT_SIM_STEPS
from core import App, BaseType, Iso, ProofError, Term, Value, term_to_value, value_to_term
from evaluation import reduce
from invert import invert
from parser import pretty

from .derivation import (LEFT_RULES, RIGHT_RULES, Derivation, NodePath, Sequent, equal_modulo_addresses, floor,
                         instantiate, is_closed_value_proof, principal, relocate, supply_after)
from .formulas import Address, AddressSupply
from .translate import pos_term, term_to_proof_path

logger = logging.getLogger(__name__)


@frozen
class NoRedex:
    reason: str


def make_cut(left: Derivation, right: Derivation) -> Derivation:
    '''The cut of left's goal against the matching hypothesis of right.'''
    cut_formula = left.goal
    rest = [h for h in right.hypotheses if h.addr != cut_formula.addr]
    return Derivation('cut', Sequent(left.hypotheses + rest, [], right.goal), [left, right])


def _rebuild(node: Derivation, premises: list[Derivation], left: Derivation) -> Derivation:
    cut_addr = left.goal.addr
    rest = [h for h in node.hypotheses if h.addr != cut_addr]
    sequent = Sequent(left.hypotheses + rest, [], node.goal, node.label)
    return Derivation(node.rule, sequent, premises, node.name)


def _principal_case(left: Derivation, right: Derivation) -> Derivation | None:
    pair = (left.rule, right.rule)
    if pair == ('one', 'bot'):
        return right.premises[0]
    if pair in (('plus1', 'with'), ('plus2', 'with')):
        return make_cut(left.premises[0], right.premises[0 if left.rule == 'plus1' else 1])
    if pair == ('mu', 'nu'):
        return make_cut(left.premises[0], right.premises[0])
    if pair == ('tensor', 'par'):
        return make_cut(left.premises[0], make_cut(left.premises[1], right.premises[0]))
    return None


def unroll(root: Derivation, supply: AddressSupply) -> Derivation:
    '''Unfold the loops closing at the labeled root once and drop its label.'''
    label = root.label

    def walk(node: Derivation, top: bool) -> Derivation:
        if node.rule == 'be' and node.name == label:
            return instantiate(root, node.sequent, supply)
        if not top and node.label == label:
            return node
        return Derivation(node.rule, node.sequent, [walk(p, False) for p in node.premises], node.name)

    return walk(root, True).with_label(None)


def reduce_cut(d: Derivation, supply: AddressSupply, targets: dict[str, Derivation] | None = None,
               permute: bool = True) -> Derivation | None:
    '''
    One reduction of the cut at the root of d, or None when no case applies. targets maps
    the labels in scope to their sequents, for cuts against a back-edge. Without permute, a
    cut whose formula is used by the right premise of another cut is left in place.
    '''
    if d.rule != 'cut':
        raise ProofError(f'{d.rule} is not a cut')
    left, right = d.premises
    cut_addr = left.goal.addr
    if right.label:
        return make_cut(left, unroll(right, supply))
    if right.rule == 'be':
        target = (targets or {}).get(right.name)
        if target is None:
            return None
        return make_cut(left, instantiate(target, right.sequent, supply))
    if right.rule == 'id':
        if right.hypotheses[0].addr != cut_addr:
            return None
        return relocate(left, cut_addr, right.goal.addr)
    if right.rule in LEFT_RULES:
        if principal(right).addr == cut_addr:
            return _principal_case(left, right)
        return _rebuild(right, [make_cut(left, p) for p in right.premises], left)
    if right.rule in RIGHT_RULES:
        premises = list(right.premises)
        for i, premise in enumerate(premises):
            if premise.sequent.find(cut_addr) is not None:
                premises[i] = make_cut(left, premise)
                return _rebuild(right, premises, left)
        return None
    if right.rule == 'cut':
        first, second = right.premises
        if first.sequent.find(cut_addr) is not None:
            return make_cut(make_cut(left, first), second)
        return make_cut(first, make_cut(left, second)) if permute else None
    return None


def _targets(d: Derivation, path: NodePath) -> dict[str, Derivation]:
    targets = {}
    node = d
    for i in (*path, None):
        if node.label:
            targets[node.label] = node
        if i is not None:
            node = node.premises[i]
    return targets


def cut_step(d: Derivation) -> Derivation | NoRedex:
    '''Reduce the cut closest to the root that has a reduction, never swapping two cuts.'''
    supply = supply_after(d)
    for path, node in d.nodes():
        if node.rule != 'cut':
            continue
        reduct = reduce_cut(node, supply, _targets(d, path), permute=False)
        if reduct is not None:
            return d.replace(path, reduct)
    if any(node.rule == 'cut' for _, node in d.nodes()):
        return NoRedex('no cut has a reduction')
    return NoRedex('the derivation is cut-free')

# Simulation


@frozen
class Checkpoint:
    '''
    :param int step: the number of term steps so far
    :param str rule: the term rule of this step
    :param int cut_steps: the cut steps that matched it
    '''
    step: int
    rule: str
    cut_steps: int

    def to_dict(self) -> dict[str, Any]:
        return {'step': self.step, 'rule': self.rule, 'cut_steps': self.cut_steps}


@define
class SimulationReport:
    '''
    The outcome of simulating a term.
    :param Term term: the last term reached
    :param Derivation proof: the derivation reached along with it
    :param list checkpoints: one entry per term step
    :param bool agreed: False when a derivation stopped matching its term
    :param str divergence: why it stopped matching
    :param bool finished: True when term reached a value
    '''
    term: Term
    proof: Derivation
    checkpoints: list[Checkpoint] = field(factory=list)
    agreed: bool = True
    divergence: str | None = None
    finished: bool = False

    @property
    def cut_steps(self) -> int:
        return sum(c.cut_steps for c in self.checkpoints)

    @property
    def value(self) -> Value | None:
        return term_to_value(self.term) if self.finished else None

    def to_dict(self) -> dict[str, Any]:
        return {
            'agreed': self.agreed,
            'finished': self.finished,
            'term': pretty(self.term),
            'steps': len(self.checkpoints),
            'cut_steps': self.cut_steps,
            'checkpoints': [c.to_dict() for c in self.checkpoints],
            'divergence': self.divergence,
        }


def _reduce(node: Derivation, supply: AddressSupply) -> Derivation:
    reduct = reduce_cut(node, supply)
    if reduct is None:
        raise ProofError(f'no reduction for the cut at {node.sequent}')
    return reduct


def _post_order(d: Derivation, path: NodePath = ()):
    for i, premise in enumerate(d.premises):
        yield from _post_order(premise, path + (i,))
    yield path, d


def _match(d: Derivation, supply: AddressSupply, budget: int) -> tuple[Derivation, int]:
    '''Run the pattern matching of the cut at the root of d until only binding cuts remain.'''
    matched = d.premises[0].goal.addr
    count = 0
    while True:
        found = None
        for path, node in _post_order(d):
            if (node.rule == 'cut' and node.premises[1].rule in LEFT_RULES
                    and _within(node.premises[0].goal.addr, matched)
                    and is_closed_value_proof(node.premises[0])):
                found = path
                break
        if found is None:
            return d, count
        if count >= budget:
            raise ProofError(f'pattern matching needs more than {budget} cut steps')
        d = d.replace(found, _reduce(d.at(found), supply))
        count += 1


def _within(addr: Address, root: Address) -> bool:
    return addr.atom == root.atom and addr.dual == root.dual


def _follow(rule: str, d: Derivation, supply: AddressSupply, budget: int) -> tuple[Derivation, int]:
    '''The cut steps matching one term step whose redex has derivation d.'''
    if rule == 'beta-IsoRec':
        if not d.premises[1].label:
            return d, 0
        return _reduce(d, supply), 1
    if rule in ('beta-IsoApp', 'beta-LetE'):
        return _match(d, supply, budget)
    d = _reduce(d, supply)
    count = 1
    if rule == 'elet-commute':
        path: NodePath = (1,)
        while True:
            node = d.at(path)
            if node.rule != 'cut' or node.premises[1].rule not in LEFT_RULES:
                break
            d = d.replace(path, _reduce(node, supply))
            path += (0,)
            count += 1
    return d, count


def simulate(t: Term, steps: int = DEFAULT_SIM_STEPS, split_lets: bool = True, budget: int = CUT_BUDGET,
             expected: BaseType | None = None) -> SimulationReport:
    '''
    Run t for at most steps steps of the explicit system, reducing cuts in its derivation
    along the way, and check after each step that the derivation is that of the new term.
    '''
    supply = AddressSupply()
    proof = floor(pos_term(t, supply, expected))
    result_type = proof.goal.type
    report = SimulationReport(t, proof)
    for n in range(1, steps + 1):
        reduction = reduce(t, 'explicit', split_lets)
        if reduction is None:
            report.finished = True
            return report
        where = term_to_proof_path(t, reduction.path)
        try:
            sub, count = _follow(reduction.rule, proof.at(where), supply, budget)
        except ProofError as e:
            return _diverged(report, n, reduction.rule, str(e))
        proof = proof.replace(where, sub)
        t = reduction.term
        target = floor(pos_term(t, supply, result_type))
        if not equal_modulo_addresses(proof, target):
            return _diverged(report, n, reduction.rule, f'the derivation no longer translates {pretty(t)}')
        report.checkpoints.append(Checkpoint(n, reduction.rule, count))
        report.term, report.proof = t, proof
        logger.debug('step %d: %s matched by %d cut steps', n, reduction.rule, count)
    report.finished = reduce(t, 'explicit', split_lets) is None
    return report


def _diverged(report: SimulationReport, step: int, rule: str, reason: str) -> SimulationReport:
    logger.warning('Simulation diverged at step %d (%s): %s', step, rule, reason)
    report.agreed = False
    report.divergence = f'step {step} ({rule}): {reason}'
    return report


def compose_inverse_proof(iso: Iso, v: Value, steps: int = DEFAULT_SIM_STEPS) -> SimulationReport:
    '''Simulate the inverse of iso applied to iso applied to v.'''
    t = App(invert(iso), App(iso, value_to_term(v)))
    return simulate(t, steps)
