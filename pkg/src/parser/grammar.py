# Lark grammar for .iso source files.
# '*' binds tighter than '+', both associate to the right, and 'mu' extends as far right as possible.

from functools import lru_cache

from lark import Lark

GRAMMAR = r'''
start: item*
?item: type_def | iso_def | main_def
type_def: "type" NAME "=" type
iso_def: "def" NAME "::" iso_type "=" iso
main_def: "main" "=" term

iso_type: type "<->" type

?type: mu_type | sum
mu_type: "mu" NAME "." type
?sum: prod
    | prod "+" type -> sum_type
?prod: type_atom
     | type_atom "*" prod_rest -> prod_type
?prod_rest: prod | mu_type
?type_atom: "1" -> unit_type
          | NAME -> type_name
          | "(" type ")"

?value: "(" ")" -> unit_value
      | NAME -> var_value
      | "injl" value -> injl_value
      | "injr" value -> injr_value
      | "fold" value -> fold_value
      | "(" value ("," value)+ ")" -> tuple_value
      | "(" value ")"

?pat: NAME -> var_pat
    | "(" pat ("," pat)+ ")" -> tuple_pat
    | "(" pat ")"

?expr: value -> val_expr
     | "let" pat "=" iso_head pat "in" expr -> let_expr

?iso: iso_head
    | "fix" NAME "." iso -> fix_iso
?iso_head: "{" clause ("|" clause)* "}" -> clauses
         | NAME -> iso_name
         | "(" iso ")"
         | "(" iso "::" iso_type ")" -> annotated_iso
clause: value "<->" expr

?term: "let" pat "=" term "in" term -> let_term
     | iso_head term -> app_term
     | "injl" term -> injl_term
     | "injr" term -> injr_term
     | "fold" term -> fold_term
     | term_atom
?term_atom: "(" ")" -> unit_term
          | NAME -> var_term
          | "(" term ("," term)+ ")" -> tuple_term
          | "(" term ")"

NAME: /[A-Za-z_][A-Za-z0-9_']*/
COMMENT: /--[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
'''

START_SYMBOLS = ['start', 'type', 'iso_type', 'value', 'pat', 'expr', 'iso', 'term']

KEYWORDS = frozenset({'type', 'def', 'main', 'mu', 'injl', 'injr', 'fold', 'let', 'in', 'fix'})


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    return Lark(GRAMMAR, start=START_SYMBOLS, parser='earley', lexer='basic', propagate_positions=True)
