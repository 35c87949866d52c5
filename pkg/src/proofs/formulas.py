# Formula occurrences: a closed type placed at an address.
# An address is an atom (with a polarity bit) followed by a word over l, r and i. Connectives
# lift addresses: the children of a binary connective at a sit at a.l and a.r, the body of a
# fixed point at a.i.

import re
from typing import Any, Literal

from attrs import define, evolve, field, frozen

from core import BaseType, Mu, ProofError, Prod, Sum, Unit, is_closed_type, type_unfold
from parser import parse_type, pretty_type

Step = Literal['l', 'r', 'i']
Shape = Literal['one', 'bot', 'plus', 'with', 'tensor', 'par', 'mu', 'nu']

ADDRESS_RE = re.compile(r'^a(\d+)(\^?)(?::([lri]+))?$')

_SHAPES = {Unit: ('one', 'bot'), Sum: ('plus', 'with'), Prod: ('tensor', 'par'), Mu: ('mu', 'nu')}


def _check_path(instance, attribute, value: str) -> None:
    if any(c not in 'lri' for c in value):
        raise ValueError(f'address paths are words over l, r, i; got {value!r}')


@frozen
class Address:
    '''
    An occurrence address: atom, polarity and a path.
    :param int atom: the atomic address
    :param bool dual: True for the dual atom
    :param str path: word over l, r, i
    '''
    atom: int
    dual: bool = False
    path: str = field(default='', validator=_check_path)

    def child(self, step: Step) -> 'Address':
        return Address(self.atom, self.dual, self.path + step)

    def negate(self) -> 'Address':
        return Address(self.atom, not self.dual, self.path)

    def is_prefix_of(self, other: 'Address') -> bool:
        return self.atom == other.atom and self.dual == other.dual and other.path.startswith(self.path)

    def rebase(self, old: 'Address', new: 'Address') -> 'Address':
        '''Swap the prefix old for new; addresses outside old are returned unchanged.'''
        if not old.is_prefix_of(self):
            return self
        return Address(new.atom, new.dual, new.path + self.path[len(old.path):])

    def __str__(self) -> str:
        text = f'a{self.atom}' + ('^' if self.dual else '')
        return f'{text}:{self.path}' if self.path else text

    @classmethod
    def parse(cls, text: str) -> 'Address':
        found = ADDRESS_RE.match(text)
        if found is None:
            raise ProofError(f'malformed address {text!r}')
        return cls(int(found.group(1)), bool(found.group(2)), found.group(3) or '')


@define
class AddressSupply:
    '''Hands out fresh atomic addresses, counting up from next_atom.'''
    next_atom: int = 0

    def fresh(self) -> Address:
        address = Address(self.next_atom)
        self.next_atom += 1
        return address

    def reserve(self, atom: int) -> None:
        self.next_atom = max(self.next_atom, atom + 1)


@frozen
class Formula:
    '''
    The occurrence of a closed type at an address.
    :param BaseType type: the underlying type, read as a positive formula
    :param Address addr: where the occurrence sits
    :param bool dual: True for the negated formula (bot, with, par, nu)
    '''
    type: BaseType
    addr: Address
    dual: bool = False

    def __attrs_post_init__(self) -> None:
        if not is_closed_type(self.type):
            raise ValueError(f'formulas are built from closed types, got {pretty_type(self.type)}')

    @property
    def shape(self) -> Shape:
        positive, negative = _SHAPES[type(self.type)]
        return negative if self.dual else positive

    def children(self) -> list['Formula']:
        t = self.type
        if isinstance(t, (Sum, Prod)):
            return [Formula(t.left, self.addr.child('l'), self.dual),
                    Formula(t.right, self.addr.child('r'), self.dual)]
        if isinstance(t, Mu):
            return [Formula(type_unfold(t), self.addr.child('i'), self.dual)]
        return []

    def child(self, step: Step) -> 'Formula':
        for sub in self.children():
            if sub.addr.path.endswith(step):
                return sub
        raise ProofError(f'{self} has no {step} child')

    def negate(self) -> 'Formula':
        return Formula(self.type, self.addr.negate(), not self.dual)

    def at(self, addr: Address) -> 'Formula':
        return evolve(self, addr=addr)

    def __str__(self) -> str:
        text = pretty_type(self.type)
        if self.dual:
            text = f'~({text})'
        return f'{text}@{self.addr}'

    def to_dict(self) -> dict[str, Any]:
        return {'shape': self.shape, 'addr': str(self.addr), 'body': pretty_type(self.type)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'Formula':
        formula = cls(parse_type(data['body']), Address.parse(data['addr']), data['shape'] in ('bot', 'with', 'par', 'nu'))
        if formula.shape != data['shape']:
            raise ProofError(f'shape {data["shape"]!r} does not fit type {data["body"]!r}')
        return formula


def type_to_formula(a: BaseType, addr: Address) -> Formula:
    '''The positive formula of a closed type: 1, plus, tensor and mu, placed at addr.'''
    if not is_closed_type(a):
        raise ProofError(f'cannot place open type {pretty_type(a)} in a sequent')
    return Formula(a, addr)
