# Pretty-printer producing text that parses back to the same AST.

from core import (App, BaseType, Clause, Clauses, Expr, Fix, Fold, FoldT, InjL, InjLT, InjR, InjRT, Iso,
                  IsoType, IsoVar, Let, LetT, Mu, Pair, PairT, PPair, Prod, PVar, Sum, TVar, Unit, UnitT,
                  UnitV, Val, VarT, VarV)

from .parser import Definition, SourceFile


def pretty(x) -> str:
    '''Render any AST node (or IsoType) as concrete syntax.'''
    if isinstance(x, IsoType):
        return f'{pretty_type(x.lhs)} <-> {pretty_type(x.rhs)}'
    if isinstance(x, BaseType):
        return pretty_type(x)
    if isinstance(x, (UnitV, VarV, InjL, InjR, Pair, Fold)):
        return pretty_value(x)
    if isinstance(x, (PVar, PPair)):
        return pretty_pattern(x)
    if isinstance(x, (Val, Let)):
        return pretty_expr(x)
    if isinstance(x, (Clauses, Fix, IsoVar)):
        return pretty_iso(x)
    if isinstance(x, Clause):
        return f'{pretty_value(x.lhs)} <-> {pretty_expr(x.rhs)}'
    if isinstance(x, Definition):
        return pretty_definition(x)
    if isinstance(x, SourceFile):
        return pretty_source(x)
    return pretty_term(x)

# Types


def pretty_type(t: BaseType) -> str:
    if isinstance(t, Mu):
        return f'mu {t.binder}. {pretty_type(t.body)}'
    if isinstance(t, Sum):
        return f'{_type_operand(t.left)} + {_sum_right(t.right)}'
    if isinstance(t, Prod):
        return f'{_type_atom(t.left)} * {_prod_right(t.right)}'
    return _type_atom(t)


def _type_atom(t: BaseType) -> str:
    if isinstance(t, Unit):
        return '1'
    if isinstance(t, TVar):
        return t.name
    return f'({pretty_type(t)})'


def _type_operand(t: BaseType) -> str:
    # left of '+': products and atoms print bare
    if isinstance(t, Prod):
        return pretty_type(t)
    return _type_atom(t)


def _sum_right(t: BaseType) -> str:
    return pretty_type(t)


def _prod_right(t: BaseType) -> str:
    if isinstance(t, (Prod, Mu)):
        return pretty_type(t)
    return _type_atom(t)

# Values and patterns


def _tuple_parts(x, pair_type) -> list:
    parts = []
    while isinstance(x, pair_type):
        parts.append(x.left)
        x = x.right
    parts.append(x)
    return parts


def pretty_value(v) -> str:
    if isinstance(v, UnitV):
        return '()'
    if isinstance(v, VarV):
        return v.name
    if isinstance(v, InjL):
        return f'injl {pretty_value(v.value)}'
    if isinstance(v, InjR):
        return f'injr {pretty_value(v.value)}'
    if isinstance(v, Fold):
        return f'fold {pretty_value(v.value)}'
    return '(' + ', '.join(pretty_value(p) for p in _tuple_parts(v, Pair)) + ')'


def pretty_pattern(p) -> str:
    if isinstance(p, PVar):
        return p.name
    return '(' + ', '.join(pretty_pattern(q) for q in _tuple_parts(p, PPair)) + ')'

# Expressions and isos


def pretty_expr(e: Expr) -> str:
    if isinstance(e, Val):
        return pretty_value(e.value)
    return (f'let {pretty_pattern(e.pattern)} = {_iso_head(e.iso)} {pretty_pattern(e.arg)} '
            f'in {pretty_expr(e.body)}')


def _clauses_body(iso: Clauses) -> str:
    inner = ' | '.join(pretty(c) for c in iso.clauses)
    return f'{{ {inner} }}'


def pretty_iso(iso: Iso) -> str:
    if isinstance(iso, IsoVar):
        return iso.name
    if isinstance(iso, Clauses):
        if iso.annotation is None:
            return _clauses_body(iso)
        return f'({_clauses_body(iso)} :: {pretty(iso.annotation)})'
    if iso.annotation is not None:
        body = iso.body
        if isinstance(body, Clauses) and body.annotation == iso.annotation:
            body_text = _clauses_body(body)
        else:
            body_text = _iso_head(body)
        return f'(fix {iso.var}. {body_text} :: {pretty(iso.annotation)})'
    return f'fix {iso.var}. {pretty_iso(iso.body)}'


def _iso_head(iso: Iso) -> str:
    if isinstance(iso, Fix) and iso.annotation is None:
        return f'({pretty_iso(iso)})'
    return pretty_iso(iso)

# Terms


def pretty_term(t) -> str:
    if isinstance(t, UnitT):
        return '()'
    if isinstance(t, VarT):
        return t.name
    if isinstance(t, InjLT):
        return f'injl {_term_operand(t.term)}'
    if isinstance(t, InjRT):
        return f'injr {_term_operand(t.term)}'
    if isinstance(t, FoldT):
        return f'fold {_term_operand(t.term)}'
    if isinstance(t, PairT):
        return '(' + ', '.join(pretty_term(p) for p in _tuple_parts(t, PairT)) + ')'
    if isinstance(t, App):
        return f'{_iso_head(t.iso)} {_term_operand(t.arg)}'
    if isinstance(t, LetT):
        bound = pretty_term(t.bound)
        if isinstance(t.bound, LetT):
            bound = f'({bound})'
        return f'let {pretty_pattern(t.pattern)} = {bound} in {pretty_term(t.body)}'
    raise TypeError(f'cannot print {t!r}')


def _term_operand(t) -> str:
    if isinstance(t, (UnitT, VarT, PairT, InjLT, InjRT, FoldT)):
        return pretty_term(t)
    return f'({pretty_term(t)})'

# Source files


def pretty_definition(d: Definition) -> str:
    iso = d.iso
    if isinstance(iso, Fix) and iso.annotation == d.iso_type:
        body = iso.body
        if isinstance(body, Clauses) and body.annotation == d.iso_type:
            text = f'fix {iso.var}. {_clauses_body(body)}'
        else:
            text = f'fix {iso.var}. {pretty_iso(body)}'
    elif isinstance(iso, Clauses) and iso.annotation == d.iso_type:
        text = _clauses_body(iso)
    else:
        text = pretty_iso(iso)
    return f'def {d.name} :: {pretty(d.iso_type)} =\n  {text}'


def pretty_source(source: SourceFile) -> str:
    blocks = [pretty_definition(d) for d in source.definitions]
    if source.main is not None:
        blocks.append(f'main = {pretty_term(source.main)}')
    return '\n\n'.join(blocks) + '\n'
