# Options shared by every subcommand, collected from the parsed command line.

import argparse
from typing import Any, Literal

from attrs import define, field, fields_dict

from config import DEFAULT_FUEL, DEFAULT_SEED, DEFAULT_SIM_STEPS, DEFAULT_SYSTEM, DEFAULT_TRIALS

Command = Literal['check', 'run', 'invert', 'rpp', 'proof']
COMMANDS = ('check', 'run', 'invert', 'rpp', 'proof')
ACTIONS = {
    'rpp': ('eval', 'compile', 'test'),
    'proof': ('extract', 'validate', 'simulate'),
}


@define
class CliConfig:
    '''
    One invocation of revisos.
    :param str command: the subcommand
    :param str action: the sub-action of rpp and proof, None otherwise
    :param str path: the .iso file, or the RPP program text for rpp
    :param list args: integer arguments of rpp eval/compile
    :param str expr: the term to run or simulate (defaults to the file's main)
    :param str name: the definition to use (defaults to the last one)
    :param int fuel: evaluation step budget
    :param str system: 'main' or 'explicit'
    :param bool trace: print the rewriting steps as JSON lines
    :param bool backward: run the inverse of the applied iso
    :param str output: write the result to this file instead of stdout
    :param bool json: machine-readable output
    :param int seed: seed for rpp test
    :param int trials: number of random inputs for rpp test
    :param int steps: step bound for proof simulate
    :param bool raw: keep the exchange nodes in extracted proofs
    :param int depth: unfold extracted proofs this many times
    '''
    command: Command
    path: str
    action: str | None = None
    args: list[int] = field(factory=list)
    expr: str | None = None
    name: str | None = None
    fuel: int = DEFAULT_FUEL
    system: str = DEFAULT_SYSTEM
    trace: bool = False
    backward: bool = False
    output: str | None = None
    json: bool = False
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    steps: int = DEFAULT_SIM_STEPS
    raw: bool = False
    depth: int = 0

    def __attrs_post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f'unknown command {self.command!r}')
        if self.action not in ACTIONS.get(self.command, (None,)):
            raise ValueError(f'{self.command} has no action {self.action!r}')
        if self.fuel < 1:
            raise ValueError(f'fuel must be positive, got {self.fuel}')
        if self.trials < 1:
            raise ValueError(f'trials must be positive, got {self.trials}')
        if self.steps < 1:
            raise ValueError(f'steps must be positive, got {self.steps}')
        if self.depth < 0:
            raise ValueError(f'depth must not be negative, got {self.depth}')

    def to_dict(self) -> dict[str, Any]:
        return {
            'command': self.command,
            'action': self.action,
            'path': self.path,
            'args': list(self.args),
            'expr': self.expr,
            'name': self.name,
            'fuel': self.fuel,
            'system': self.system,
            'trace': self.trace,
            'backward': self.backward,
            'output': self.output,
            'json': self.json,
            'seed': self.seed,
            'trials': self.trials,
            'steps': self.steps,
            'raw': self.raw,
            'depth': self.depth,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'CliConfig':
        names = fields_dict(cls)
        return cls(**{k: v for k, v in data.items() if k in names})

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace) -> 'CliConfig':
        return cls.from_dict({k: v for k, v in vars(namespace).items() if v is not None})
