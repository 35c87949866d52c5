# Syntactic inverse of an iso: every clause is read right to left and its
# let chain is replayed backwards with each inner iso inverted.

from core import Clause, Clauses, Fix, Iso, IsoVar, build_lets, let_chain, val_of_expr


def invert_clause(clause: Clause) -> Clause:
    '''Swap the two values of the clause and replay its lets last to first, each iso inverted.'''
    chain = let_chain(clause.rhs)
    backwards = [(let.arg, invert(let.iso), let.pattern) for let in reversed(chain)]
    return Clause(val_of_expr(clause.rhs), build_lets(backwards, clause.lhs))


def invert(iso: Iso) -> Iso:
    '''The dual of iso. Total on syntax; invert(invert(iso)) == iso.'''
    if isinstance(iso, IsoVar):
        return iso
    annotation = iso.annotation.flip() if iso.annotation is not None else None
    if isinstance(iso, Fix):
        return Fix(iso.var, invert(iso.body), annotation)
    if isinstance(iso, Clauses):
        return Clauses([invert_clause(c) for c in iso.clauses], annotation)
    raise TypeError(f'not an iso: {iso!r}')
