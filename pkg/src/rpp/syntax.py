# Textual RPP syntax: S, P, Id, Sign, Swap, f ; g, f || g, It[f], If[f, g, h], Perm[2, 1, 3]
# and Weaken[f, n]. ';' binds looser than '||' and both associate to the left.

from functools import lru_cache

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from core import RppError

from .model import Id, If, It, P, Par, Perm, RppFun, S, Seq, Sign, Swap, Weaken

RPP_GRAMMAR = r'''
?start: seq
?seq: par
    | seq ";" par -> seq_fun
?par: atom
    | par "||" atom -> par_fun
?atom: "S" -> succ
     | "P" -> pred
     | "Id" -> ident
     | "Sign" -> sign
     | "Swap" -> swap
     | "It" "[" seq "]" -> iterate
     | "If" "[" seq "," seq "," seq "]" -> select
     | "Perm" "[" INT ("," INT)* "]" -> perm
     | "Weaken" "[" seq "," INT "]" -> weaken
     | "(" seq ")"

%import common.INT
%import common.WS
%ignore WS
'''


@lru_cache(maxsize=1)
def get_rpp_parser() -> Lark:
    return Lark(RPP_GRAMMAR, parser='lalr')


@v_args(inline=True)
class RppTransformer(Transformer):

    def seq_fun(self, first, second):
        return Seq(first, second)

    def par_fun(self, left, right):
        return Par(left, right)

    def succ(self):
        return S()

    def pred(self):
        return P()

    def ident(self):
        return Id()

    def sign(self):
        return Sign()

    def swap(self):
        return Swap()

    def iterate(self, body):
        return It(body)

    def select(self, positive, zero, negative):
        return If(positive, zero, negative)

    def perm(self, *indices):
        return Perm([int(i) for i in indices])

    def weaken(self, body, extra):
        return Weaken(body, int(extra))


def parse_rpp(text: str) -> RppFun:
    '''Parse RPP text; malformed text and arity mismatches raise RppError.'''
    try:
        tree = get_rpp_parser().parse(text)
        return RppTransformer().transform(tree)
    except UnexpectedInput as e:
        raise RppError(f'malformed RPP expression at column {e.column}: {text!r}') from e
    except VisitError as e:
        raise RppError(str(e.orig_exc)) from e


def show_rpp(f: RppFun) -> str:
    '''Print f so that parse_rpp gives it back.'''
    if isinstance(f, Seq):
        return f'{show_rpp(f.first)} ; {_operand(f.second, Seq)}'
    if isinstance(f, Par):
        return f'{_operand(f.left, Seq)} || {_operand(f.right, (Seq, Par))}'
    if isinstance(f, It):
        return f'It[{show_rpp(f.body)}]'
    if isinstance(f, If):
        return f'If[{show_rpp(f.positive)}, {show_rpp(f.zero)}, {show_rpp(f.negative)}]'
    if isinstance(f, Perm):
        return 'Perm[' + ', '.join(str(i) for i in f.indices) + ']'
    if isinstance(f, Weaken):
        return f'Weaken[{show_rpp(f.body)}, {f.extra}]'
    return type(f).__name__


def _operand(f: RppFun, grouped) -> str:
    text = show_rpp(f)
    return f'({text})' if isinstance(f, grouped) else text
