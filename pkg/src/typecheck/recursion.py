# Structural recursion check for fix f. { v1 <-> e1 | ... | vn <-> en }.
# The input type is read as a tensor A1 * ... * Am of its right-nested spine. Some inductive
# component Aj must shrink on every recursive call: where the j-th part of a clause's left
# value is closed the clause may not call f, otherwise every call f (x1, ..., xm) must pass
# a variable xj found strictly inside that part.

import logging
from typing import Any

from attrs import field, frozen

from core import (Clause, Clauses, Fix, IsoType, IsoVar, Mu, PVar, StructuralRecursionError, VarV, free_iso_vars,
                  is_closed_value, let_chain, split_tuple, split_tuple_pattern, tensor_spine, value_vars)

logger = logging.getLogger(__name__)

CLOSED = '<closed>'
NO_CALL = '<no call>'


@frozen
class RecInfo:
    '''
    A witness of structural recursion.
    :param int index: 1-based position j of the decreasing component
    :param int arity: the width m of the input tensor
    :param tuple focus: per clause, the variable xj passed to recursive calls,
        CLOSED when the j-th part is closed, NO_CALL when it is open but f is not called
    '''
    index: int
    arity: int
    focus: tuple[str, ...] = field(converter=tuple)

    def to_dict(self) -> dict[str, Any]:
        return {'index': self.index, 'arity': self.arity, 'focus': list(self.focus)}


@frozen
class NotRecursive:
    '''The fix variable is never used; the body is an ordinary clause set.'''
    var: str


def check_structural_recursion(iso: Fix, iso_type: IsoType | None = None) -> RecInfo | NotRecursive:
    '''
    Find the first component j along which iso recurses structurally.
    Raises StructuralRecursionError naming the offending clause when there is none.
    '''
    iso_type = iso_type or iso.annotation or getattr(iso.body, 'annotation', None)
    if iso_type is None:
        raise StructuralRecursionError(f'fix {iso.var} has no declared type')
    if not isinstance(iso.body, Clauses):
        raise StructuralRecursionError(f'the body of fix {iso.var} must be a clause set')
    if iso.var not in free_iso_vars(iso.body):
        return NotRecursive(iso.var)

    spine = tensor_spine(iso_type.lhs)
    candidates = [j for j, a in enumerate(spine) if isinstance(a, Mu)]
    if not candidates:
        raise StructuralRecursionError(f'not structurally recursive: fix {iso.var} has no inductive argument')

    reasons = []
    for j in candidates:
        try:
            focus = [_clause_focus(iso.var, clause, i, j, len(spine)) for i, clause in enumerate(iso.body.clauses)]
        except _Reject as e:
            logger.debug('fix %s is not decreasing on component %d: %s', iso.var, j + 1, e.reason)
            reasons.append(e)
            continue
        info = RecInfo(j + 1, len(spine), focus)
        logger.debug('fix %s recurses on component %d', iso.var, info.index)
        return info
    first = reasons[0]
    raise StructuralRecursionError(f'not structurally recursive: {first.reason}', clause=first.clause)


class _Reject(Exception):

    def __init__(self, reason: str, clause: int) -> None:
        super().__init__(reason)
        self.reason = reason
        self.clause = clause


def _clause_focus(f: str, clause: Clause, i: int, j: int, m: int) -> str:
    parts = split_tuple(clause.lhs, m)
    if parts is None:
        raise _Reject(f'the left value is not a {m}-tuple', i)
    part = parts[j]
    calls = []
    for let in let_chain(clause.rhs):
        if let.iso == IsoVar(f):
            calls.append(let)
        elif f in free_iso_vars(let.iso):
            raise _Reject(f'{f} is called from inside another iso', i)
    if is_closed_value(part):
        if calls:
            raise _Reject(f'component {j + 1} is closed but {f} is called', i)
        return CLOSED
    if not calls:
        return NO_CALL
    names = set(value_vars(part))
    focus = None
    for call in calls:
        args = split_tuple_pattern(call.arg, m)
        if args is None or not all(isinstance(a, PVar) for a in args):
            raise _Reject(f'{f} is not applied to a {m}-tuple of variables', i)
        x = args[j].name
        if x not in names or part == VarV(x):
            raise _Reject(f'{x} is not a strict subterm of component {j + 1}', i)
        focus = focus or x
    return focus
