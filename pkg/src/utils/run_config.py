"""YAML run configurations: loading and schema validation.

Every subcommand has its own table of allowed and required keys. A config is
rejected with ConfigError before any computation starts.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from .errors import ConfigError

COMMON_KEYS = {'kind', 'output', 'tolerances'}
TOLERANCE_KEYS = {'rank_rel_tol': float, 'newton_tol': float, 'newton_max_iter': int, 'set_eq_tol': float}

LAGRANGIAN_KEYS = {'catalog', 'expression', 'realization', 'parameters', 'name'}
REALIZATION_KINDS = ('pair', 'se2')

SCHEMAS: Dict[str, Dict[str, set]] = {
    'del': {'required': {'lagrangian', 'initial', 'steps'}, 'optional': set()},
    'extract': {'required': {'realization', 'constraints'}, 'optional': {'mode', 'max_iter'}},
    'classify': {'required': {'points'},
                 'optional': {'lagrangian', 'realization', 'constraints', 'depth', 'seeds', 'box'}},
    'dae': {'required': {'A', 'B', 'b', 'x_guess', 'N'}, 'optional': {'t0', 'h', 'annihilator'}},
    'sleigh': {'required': {'initial', 'steps'}, 'optional': {'params'}},
    'flow': {'required': {'hamiltonian', 't', 'grid'}, 'optional': {'n', 'parameters', 'steps'}},
}

MODES = ('forward', 'backward', 'full')


@dataclass
class RunConfig:
    """Validated configuration of one subcommand run."""

    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    tolerances: Dict[str, Any] = field(default_factory=dict)

    def get(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)


# Value checks

def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where}: number must be finite")
    return float(value)


def _integer(value: Any, where: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _expression(value: Any, where: str) -> str:
    from ..expr import parse
    if not isinstance(value, str):
        raise ConfigError(f"{where}: expected an expression string, got {value!r}")
    parse(value)
    return value


def _entry(value: Any, where: str) -> Union[float, str]:
    return _expression(value, where) if isinstance(value, str) else _number(value, where)


def _vector(value: Any, where: str, entries: bool = False) -> List:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where}: expected a non-empty list")
    check = _entry if entries else _number
    return [check(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _matrix(value: Any, where: str, entries: bool = False) -> List[List]:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where}: expected a non-empty list of rows")
    rows = [_vector(row, f"{where}[{i}]", entries) for i, row in enumerate(value)]
    if len({len(row) for row in rows}) != 1:
        raise ConfigError(f"{where}: rows have different lengths")
    return rows


def _table(value: Any, where: str, allowed: set, required: set = frozenset()) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError(f"{where}: expected a table, got {type(value).__name__}")
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(unknown)}")
    missing = sorted(required - set(value))
    if missing:
        raise ConfigError(f"{where}: missing key(s) {', '.join(missing)}")
    return value


def _realization(value: Any, where: str) -> Dict[str, Any]:
    table = _table(value, where, {'kind', 'n'}, {'kind'})
    if table['kind'] not in REALIZATION_KINDS:
        raise ConfigError(f"{where}.kind: expected one of {', '.join(REALIZATION_KINDS)}")
    n = _integer(table.get('n', 1), f"{where}.n", 1)
    return {'kind': table['kind'], 'n': n}


def _parameters(value: Any, where: str) -> Dict[str, float]:
    table = _table(value, where, set(value) if isinstance(value, dict) else set())
    return {str(k): _number(v, f"{where}.{k}") for k, v in table.items()}


def _lagrangian(value: Any, where: str) -> Dict[str, Any]:
    table = _table(value, where, LAGRANGIAN_KEYS)
    if ('catalog' in table) == ('expression' in table):
        raise ConfigError(f"{where}: give exactly one of 'catalog' or 'expression'")
    parsed = {'parameters': _parameters(table.get('parameters', {}), f"{where}.parameters")}
    if 'catalog' in table:
        from ..lagrangian import CATALOG
        if table['catalog'] not in CATALOG:
            raise ConfigError(f"{where}.catalog: unknown Lagrangian {table['catalog']!r}")
        parsed['catalog'] = table['catalog']
    else:
        if 'realization' not in table:
            raise ConfigError(f"{where}: an expression Lagrangian needs a realization")
        parsed['expression'] = _expression(table['expression'], f"{where}.expression")
        parsed['realization'] = _realization(table['realization'], f"{where}.realization")
    parsed['name'] = str(table.get('name', table.get('catalog', 'L')))
    return parsed


def _constraints(value: Any, where: str) -> Dict[str, Any]:
    table = _table(value, where, {'matrix', 'rhs'}, {'matrix', 'rhs'})
    matrix = _matrix(table['matrix'], f"{where}.matrix")
    rhs = _vector(table['rhs'], f"{where}.rhs")
    if len(rhs) != len(matrix):
        raise ConfigError(f"{where}: rhs has {len(rhs)} entries for {len(matrix)} rows")
    return {'matrix': matrix, 'rhs': rhs}


def _validate_params(kind: str, data: Dict[str, Any]) -> Dict[str, Any]:
    p: Dict[str, Any] = {}
    if kind == 'del':
        p['lagrangian'] = _lagrangian(data['lagrangian'], 'lagrangian')
        p['initial'] = _vector(data['initial'], 'initial')
        p['steps'] = _integer(data['steps'], 'steps', 1)
    elif kind == 'extract':
        p['realization'] = _realization(data['realization'], 'realization')
        p['constraints'] = _constraints(data['constraints'], 'constraints')
        p['mode'] = data.get('mode', 'forward')
        if p['mode'] not in MODES:
            raise ConfigError(f"mode: expected one of {', '.join(MODES)}, got {p['mode']!r}")
        if 'max_iter' in data:
            p['max_iter'] = _integer(data['max_iter'], 'max_iter', 1)
    elif kind == 'classify':
        if ('lagrangian' in data) == ('constraints' in data):
            raise ConfigError("classify: give exactly one of 'lagrangian' or 'constraints'")
        if 'lagrangian' in data:
            p['lagrangian'] = _lagrangian(data['lagrangian'], 'lagrangian')
        else:
            if 'realization' not in data:
                raise ConfigError("classify: an affine equation needs a realization")
            p['realization'] = _realization(data['realization'], 'realization')
            p['constraints'] = _constraints(data['constraints'], 'constraints')
        p['points'] = _matrix(data['points'], 'points')
        p['depth'] = _integer(data.get('depth', 3), 'depth', 0)
        if 'seeds' in data:
            p['seeds'] = _integer(data['seeds'], 'seeds', 1)
        if 'box' in data:
            p['box'] = _number(data['box'], 'box')
    elif kind == 'dae':
        p['A'] = _matrix(data['A'], 'A', entries=True)
        p['B'] = _matrix(data['B'], 'B', entries=True)
        p['b'] = _vector(data['b'], 'b', entries=True)
        p['x_guess'] = _vector(data['x_guess'], 'x_guess')
        p['N'] = _integer(data['N'], 'N', 1)
        p['t0'] = _number(data.get('t0', 0.0), 't0')
        p['h'] = _number(data.get('h', 0.1), 'h')
        if not p['h'] > 0:
            raise ConfigError(f"h: must be positive, got {p['h']}")
        p['annihilator'] = data.get('annihilator', 'projector')
        if p['annihilator'] not in ('projector', 'basis'):
            raise ConfigError(f"annihilator: expected 'projector' or 'basis', got {p['annihilator']!r}")
    elif kind == 'sleigh':
        params = _table(data.get('params', {}), 'params', {'m', 'a', 'b', 'J'})
        p['params'] = {k: _number(v, f"params.{k}") for k, v in params.items()}
        for key in ('m', 'J'):
            if key in p['params'] and not p['params'][key] > 0:
                raise ConfigError(f"params.{key}: must be positive")
        p['initial'] = _vector(data['initial'], 'initial')
        if len(p['initial']) != 3:
            raise ConfigError("initial: an SE(2) element has 3 coordinates (theta, x, y)")
        p['steps'] = _integer(data['steps'], 'steps', 1)
    elif kind == 'flow':
        p['hamiltonian'] = _expression(data['hamiltonian'], 'hamiltonian')
        p['n'] = _integer(data.get('n', 1), 'n', 1)
        p['parameters'] = _parameters(data.get('parameters', {}), 'parameters')
        p['t'] = _number(data['t'], 't')
        p['grid'] = _matrix(data['grid'], 'grid')
        if 'steps' in data:
            p['steps'] = _integer(data['steps'], 'steps', 1)
    return p


def validate_run_config(data: Any, subcommand: str) -> RunConfig:
    """Check a parsed YAML document against the subcommand's schema."""
    if subcommand not in SCHEMAS:
        raise ConfigError(f"Unknown subcommand {subcommand!r}")
    if data is None:
        data = {}
    schema = SCHEMAS[subcommand]
    data = _table(data, 'config', COMMON_KEYS | schema['required'] | schema['optional'], schema['required'])
    kind = data.get('kind', subcommand)
    if kind != subcommand:
        raise ConfigError(f"config kind {kind!r} does not match subcommand {subcommand!r}")

    tolerances = {}
    for key, value in _table(data.get('tolerances', {}), 'tolerances', set(TOLERANCE_KEYS)).items():
        if TOLERANCE_KEYS[key] is int:
            tolerances[key] = _integer(value, f"tolerances.{key}", 1)
        else:
            tolerances[key] = _number(value, f"tolerances.{key}")
            if not tolerances[key] > 0:
                raise ConfigError(f"tolerances.{key}: must be positive")

    output = data.get('output')
    if output is not None and not isinstance(output, str):
        raise ConfigError(f"output: expected a path string, got {output!r}")
    return RunConfig(kind=subcommand, params=_validate_params(subcommand, data),
                     output=output, tolerances=tolerances)


def load_run_config(path: Union[str, Path], subcommand: str) -> RunConfig:
    """Read and validate a YAML run configuration."""
    path = Path(path)
    try:
        with open(path, 'r') as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e.strerror}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Malformed YAML in {path}: {e}") from e
    return validate_run_config(data, subcommand)
