# Matching of a closed value against an open value, producing a substitution.

from .errors import MatchError
from .subst import EMPTY, Subst
from .syntax import Fold, InjL, InjR, Pair, UnitV, Value, VarV, value_vars


def match_value(pattern: Value, v: Value) -> Subst | None:
    '''
    sigma[pattern] = v. Returns the substitution, or None when a constructor clashes.
    Raises MatchError when pattern repeats a variable.
    '''
    if isinstance(pattern, VarV):
        return Subst(((pattern.name, v),))
    if isinstance(pattern, UnitV):
        return EMPTY if isinstance(v, UnitV) else None
    if isinstance(pattern, (InjL, InjR, Fold)):
        if type(v) is not type(pattern):
            return None
        return match_value(pattern.value, v.value)
    if isinstance(pattern, Pair):
        if not isinstance(v, Pair):
            return None
        left = match_value(pattern.left, v.left)
        right = match_value(pattern.right, v.right)
        if left is None or right is None:
            # still reject non-linear patterns
            _check_disjoint(pattern)
            return None
        return left.union(right)
    raise MatchError(f'not a value pattern: {pattern!r}')


def _check_disjoint(pattern: Value) -> None:
    names = value_vars(pattern)
    if len(names) != len(set(names)):
        raise MatchError(f'pattern {pattern!r} is not linear')
