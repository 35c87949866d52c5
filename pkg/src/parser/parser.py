# Parsing of .iso sources into the AST, and resolution of type aliases and def names.

import logging
from pathlib import Path
from typing import Any

from attrs import define, field, frozen
from lark import Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from core import (App, BaseType, Clause, Clauses, Expr, Fix, Fold, FoldT, InjL, InjLT, InjR, InjRT, Iso,
                  IsoType, IsoVar, Let, LetT, Mu, PairT, ParseError, Pattern, PPair, Prod, PVar, Sum, Term,
                  TVar, Unit, UnitT, UnitV, Val, Value, VarT, VarV, annotate, iter_isos, pattern_vars,
                  tuple_term, tuple_value, value_vars)

from .grammar import get_parser

logger = logging.getLogger(__name__)


@v_args(inline=True)
class IsoTransformer(Transformer):
    '''Builds AST nodes from the parse tree. Names are resolved afterwards.'''

    # Types
    def unit_type(self):
        return Unit()

    def type_name(self, name):
        return TVar(str(name))

    def mu_type(self, name, body):
        return Mu(str(name), body)

    def sum_type(self, left, right):
        return Sum(left, right)

    def prod_type(self, left, right):
        return Prod(left, right)

    def iso_type(self, lhs, rhs):
        return IsoType(lhs, rhs)

    # Values and patterns
    def unit_value(self):
        return UnitV()

    def var_value(self, name):
        return VarV(str(name))

    def injl_value(self, v):
        return InjL(v)

    def injr_value(self, v):
        return InjR(v)

    def fold_value(self, v):
        return Fold(v)

    def tuple_value(self, *values):
        return tuple_value(list(values))

    def var_pat(self, name):
        return PVar(str(name))

    def tuple_pat(self, *patterns):
        result = patterns[-1]
        for p in reversed(patterns[:-1]):
            result = PPair(p, result)
        return result

    # Expressions and isos
    def val_expr(self, v):
        return Val(v)

    def let_expr(self, pattern, iso, arg, body):
        return Let(pattern, iso, arg, body)

    def clause(self, lhs, rhs):
        return Clause(lhs, rhs)

    def clauses(self, *clauses):
        return Clauses(clauses)

    def iso_name(self, name):
        return IsoVar(str(name))

    def fix_iso(self, name, body):
        return Fix(str(name), body)

    def annotated_iso(self, iso, iso_type):
        return annotate(iso, iso_type)

    # Terms
    def unit_term(self):
        return UnitT()

    def var_term(self, name):
        return VarT(str(name))

    def injl_term(self, t):
        return InjLT(t)

    def injr_term(self, t):
        return InjRT(t)

    def fold_term(self, t):
        return FoldT(t)

    def tuple_term(self, *terms):
        return tuple_term(list(terms))

    def app_term(self, iso, arg):
        return App(iso, arg)

    def let_term(self, pattern, bound, body):
        return LetT(pattern, bound, body)

    # Top level
    def type_def(self, name, t):
        return ('type', str(name), t, None)

    @v_args(meta=True, inline=True)
    def iso_def(self, meta, name, iso_type, iso):
        return ('def', str(name), (iso_type, iso), getattr(meta, 'line', None))

    def main_def(self, t):
        return ('main', 'main', t, None)

    def start(self, *items):
        return list(items)


@frozen
class Definition:
    '''
    One `def name :: A <-> B = iso` block.
    :param str name: the definition's name
    :param Iso iso: the body, annotated with iso_type and with earlier defs expanded
    :param IsoType iso_type: the declared type
    :param int line: source line of the block
    '''
    name: str
    iso: Iso
    iso_type: IsoType
    line: int | None = None


@define
class SourceFile:
    '''
    A loaded .iso source file.
    :param list definitions: ordered definitions
    :param Term main: the optional `main = term`
    :param dict aliases: expanded type aliases
    :param str filename: where the source came from
    '''
    definitions: list[Definition] = field(factory=list)
    main: Term | None = None
    aliases: dict[str, BaseType] = field(factory=dict)
    filename: str = '<string>'

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.definitions]

    def get(self, name: str) -> Definition:
        for definition in self.definitions:
            if definition.name == name:
                return definition
        raise ParseError(f'unknown definition {name!r}')

    @property
    def last(self) -> Definition:
        if not self.definitions:
            raise ParseError(f'{self.filename} has no definitions')
        return self.definitions[-1]

    def scope(self) -> dict[str, Iso]:
        return {d.name: d.iso for d in self.definitions}

    def resolve_term(self, t: Term) -> Term:
        return _Resolver(self.aliases, self.scope()).term(t)

    def resolve_iso(self, iso: Iso) -> Iso:
        return _Resolver(self.aliases, self.scope()).iso(iso, frozenset())

    def resolve_type(self, t: BaseType) -> BaseType:
        return _Resolver(self.aliases, self.scope()).base_type(t, frozenset())

    def parse_term(self, text: str) -> Term:
        '''Parse a term that may mention this file's definitions and aliases.'''
        return self.resolve_term(parse_term(text))

    def parse_value(self, text: str) -> Value:
        return parse_value(text)

    def to_dict(self) -> dict[str, Any]:
        from .pretty import pretty
        return {
            'filename': self.filename,
            'definitions': [{'name': d.name, 'type': pretty(d.iso_type), 'line': d.line} for d in self.definitions],
            'main': None if self.main is None else pretty(self.main),
        }


@define
class _Resolver:
    '''Expands type aliases and def names; anything left unbound is an error.'''
    aliases: dict[str, BaseType]
    scope: dict[str, Iso]

    def base_type(self, t: BaseType, bound: frozenset) -> BaseType:
        if isinstance(t, Unit):
            return t
        if isinstance(t, TVar):
            if t.name in bound:
                return t
            if t.name in self.aliases:
                return self.aliases[t.name]
            raise ParseError(f'unknown type {t.name!r}')
        if isinstance(t, Sum):
            return Sum(self.base_type(t.left, bound), self.base_type(t.right, bound))
        if isinstance(t, Prod):
            return Prod(self.base_type(t.left, bound), self.base_type(t.right, bound))
        return Mu(t.binder, self.base_type(t.body, bound | {t.binder}))

    def iso_type(self, t: IsoType | None) -> IsoType | None:
        if t is None:
            return None
        return IsoType(self.base_type(t.lhs, frozenset()), self.base_type(t.rhs, frozenset()))

    def iso(self, iso: Iso, bound: frozenset) -> Iso:
        if isinstance(iso, IsoVar):
            if iso.name in bound:
                return iso
            if iso.name in self.scope:
                return self.scope[iso.name]
            raise ParseError(f'unknown iso {iso.name!r}')
        if isinstance(iso, Fix):
            return Fix(iso.var, self.iso(iso.body, bound | {iso.var}), self.iso_type(iso.annotation))
        return Clauses(tuple(Clause(c.lhs, self.expr(c.rhs, bound)) for c in iso.clauses),
                       self.iso_type(iso.annotation))

    def expr(self, e: Expr, bound: frozenset) -> Expr:
        if isinstance(e, Val):
            return e
        return Let(e.pattern, self.iso(e.iso, bound), e.arg, self.expr(e.body, bound))

    def term(self, t: Term) -> Term:
        if isinstance(t, App):
            return App(self.iso(t.iso, frozenset()), self.term(t.arg))
        if isinstance(t, LetT):
            return LetT(t.pattern, self.term(t.bound), self.term(t.body), t.bound_type)
        if isinstance(t, (InjLT, InjRT, FoldT)):
            return type(t)(self.term(t.term))
        if isinstance(t, PairT):
            return PairT(self.term(t.left), self.term(t.right))
        return t


def _parse(text: str, start: str) -> Any:
    try:
        tree = get_parser().parse(text, start=start)
    except UnexpectedInput as e:
        raise _parse_error(e) from e
    return IsoTransformer().transform(tree)


def _parse_error(e: UnexpectedInput) -> ParseError:
    line = e.line if getattr(e, 'line', -1) not in (-1, None) else None
    column = e.column if getattr(e, 'column', -1) not in (-1, None) else None
    if isinstance(e, UnexpectedCharacters):
        expected = list(e.allowed or [])
        message = f'unexpected character {e.char!r}'
    elif isinstance(e, UnexpectedToken):
        expected = list(e.expected or [])
        message = f'unexpected token {e.token!r}'
    elif isinstance(e, UnexpectedEOF):
        expected = list(e.expected or [])
        message = 'unexpected end of input'
    else:
        expected = []
        message = str(e).splitlines()[0] if str(e) else 'syntax error'
    return ParseError(message, line, column, expected)


def parse_type(text: str) -> BaseType:
    return _parse(text, 'type')


def parse_iso_type(text: str) -> IsoType:
    return _parse(text, 'iso_type')


def parse_value(text: str) -> Value:
    return _parse(text, 'value')


def parse_pattern(text: str) -> Pattern:
    return _parse(text, 'pat')


def parse_expr(text: str) -> Expr:
    return _parse(text, 'expr')


def parse_iso(text: str) -> Iso:
    '''Parse a single iso; free names stay iso-variables.'''
    return _parse(text, 'iso')


def parse_term(text: str) -> Term:
    return _parse(text, 'term')


def _check_linear(names: list[str], what: str, line: int | None) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise ParseError(f'variable {name!r} bound twice in {what}', line)
        seen.add(name)


def parse(text: str, filename: str = '<string>') -> SourceFile:
    '''Parse a whole source file, expanding aliases and earlier definitions.'''
    items = _parse(text, 'start')
    source = SourceFile(filename=filename)
    for kind, name, payload, line in items:
        resolver = _Resolver(source.aliases, source.scope())
        if kind == 'type':
            if name in source.aliases:
                raise ParseError(f'type {name!r} defined twice', line)
            source.aliases[name] = resolver.base_type(payload, frozenset())
        elif kind == 'def':
            if name in source.names:
                raise ParseError(f'definition {name!r} defined twice', line)
            iso_type, iso = payload
            iso_type = resolver.iso_type(iso_type)
            iso = annotate(resolver.iso(iso, frozenset()), iso_type)
            _check_patterns(iso, line)
            source.definitions.append(Definition(name, iso, iso_type, line))
            logger.debug('Loaded definition %s :: %s', name, iso_type)
        else:
            if source.main is not None:
                raise ParseError('main defined twice', line)
            source.main = resolver.term(payload)
    logger.info('Parsed %s: %d definitions', filename, len(source.definitions))
    return source


def _check_patterns(iso: Iso, line: int | None) -> None:
    for sub in iter_isos(iso):
        if not isinstance(sub, Clauses):
            continue
        for clause in sub.clauses:
            _check_linear(value_vars(clause.lhs), 'a clause pattern', line)
            e = clause.rhs
            while isinstance(e, Let):
                _check_linear(pattern_vars(e.pattern), 'a let pattern', line)
                _check_linear(pattern_vars(e.arg), 'a let argument', line)
                e = e.body


def parse_file(path: str | Path) -> SourceFile:
    path = Path(path)
    logger.debug('Reading %s', path)
    return parse(path.read_text(encoding='utf-8'), filename=str(path))


load = parse_file
