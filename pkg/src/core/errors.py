# Exception hierarchy shared by every package.
# Anything the CLI can report to a user derives from RevisosError.

from typing import Any


class RevisosError(Exception):
    '''Base class for every error raised by revisos.'''

    def to_dict(self) -> dict[str, Any]:
        return {'kind': type(self).__name__, 'message': str(self)}


class ParseError(RevisosError):
    '''
    Raised on malformed source text or unknown names.
    :param str message: human readable description
    :param int line: 1-based line (None if unknown)
    :param int column: 1-based column (None if unknown)
    :param list expected: expected token names, when the parser knows them
    '''

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 expected: list[str] | None = None) -> None:
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = sorted(expected) if expected else []

    def to_dict(self) -> dict[str, Any]:
        return {'kind': 'ParseError', 'message': str(self), 'line': self.line,
                'column': self.column, 'expected': self.expected}


class TypeCheckError(RevisosError):
    '''Raised when a value, term, expression or iso is ill-typed.'''

    def __init__(self, message: str, clause: int | None = None) -> None:
        super().__init__(message if clause is None else f'clause {clause + 1}: {message}')
        self.clause = clause

    def to_dict(self) -> dict[str, Any]:
        return {'kind': type(self).__name__, 'message': str(self), 'clause': self.clause}


class LinearityError(TypeCheckError):
    '''A variable is used twice, never used, or used out of scope.'''


class ODFailure(TypeCheckError):
    '''
    No exhaustivity/non-overlap rule applies.
    :param BaseType type: the type at which decomposition got stuck
    :param list values: the residual multiset of values
    '''

    def __init__(self, message: str, type: Any = None, values: Any = (), clause: int | None = None) -> None:
        super().__init__(message, clause)
        self.type = type
        self.values = list(values)


class StructuralRecursionError(TypeCheckError):
    '''A fix body is not structurally recursive.'''


class EvalError(RevisosError):
    '''Evaluation reached a state well-typed programs never reach.'''


class StuckError(EvalError):
    '''A closed non-value term has no redex.'''


class MatchError(EvalError):
    '''Pattern matching failed structurally (non-linear pattern or no clause applies).'''


class ProofError(RevisosError):
    '''A derivation could not be built or violates the address/back-edge discipline.'''


class RppError(RevisosError):
    '''Malformed RPP program text, arity mismatch or malformed integer encoding.'''
