# Fresh name supply. Generated names never collide with source identifiers
# that avoid the '_<digits>' suffix.

import itertools

from attrs import define, field


@define
class NameSupply:
    '''
    Hands out fresh names of the form base_N.
    :param set avoid: names that must never be produced
    '''
    avoid: set[str] = field(factory=set)
    _counter: itertools.count = field(factory=itertools.count, init=False)

    def fresh(self, base: str = 'x') -> str:
        base = base.split('_')[0] or 'x'
        while True:
            name = f'{base}_{next(self._counter)}'
            if name not in self.avoid:
                self.avoid.add(name)
                return name
