"""
Registry of the named graph families, keyed by CLI / spec-file name
"""
import json
from typing import Any, Callable, Dict, List, NamedTuple, Sequence

from .cayley import (CayleyGraph, family_circulant, family_cycle, family_hypercube,
                     family_kary_ncube, family_mobius)
from .exceptions import ArgumentError


class Family(NamedTuple):
    builder: Callable[..., CayleyGraph]
    params: List[str]
    optional: List[str] = []


FAMILIES: Dict[str, Family] = {
    'cycle': Family(family_cycle, ['n']),
    'hypercube': Family(family_hypercube, ['n']),
    'mobius': Family(family_mobius, ['n']),
    'kary_ncube': Family(family_kary_ncube, ['k', 'n']),
    'circulant': Family(family_circulant, ['n', 'd', 'm'], ['powers']),
}


def _family(name: str) -> Family:
    if name not in FAMILIES:
        raise ArgumentError(
            f"unknown family {name!r}; expected one of {', '.join(sorted(FAMILIES))}",
            invariant='family_name',
        )
    return FAMILIES[name]


def normalize_params(name: str, params: Dict[str, Any]) -> Dict[str, Any]:
    """Check names and integer types; returns params in declaration order"""
    family = _family(name)
    if not isinstance(params, dict):
        raise ArgumentError(f"params for {name} must be an object", invariant='family_params')

    unknown = set(params) - set(family.params) - set(family.optional)
    if unknown:
        raise ArgumentError(f"unknown parameters for {name}: {', '.join(sorted(unknown))}",
                            invariant='family_params')
    missing = [p for p in family.params if p not in params]
    if missing:
        raise ArgumentError(f"missing parameters for {name}: {', '.join(missing)}",
                            invariant='family_params')

    result = {}
    for key in family.params + family.optional:
        if key not in params:
            continue
        value = params[key]
        if key == 'powers':
            if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
                raise ArgumentError("powers must be a list of integers", invariant='family_params')
        elif not isinstance(value, int) or isinstance(value, bool):
            raise ArgumentError(f"{name}.{key} must be an integer, got {value!r}", invariant='family_params')
        result[key] = value
    return result


def parse_cli_params(name: str, tokens: Sequence[str]) -> Dict[str, Any]:
    """
    Parse `family` sub-command params

    Accepts either a single JSON object or positional integers in the
    family's declared order (e.g. `kary_ncube 3 2` is k=3, n=2).
    """
    family = _family(name)
    if len(tokens) == 1 and tokens[0].lstrip().startswith('{'):
        try:
            params = json.loads(tokens[0])
        except json.JSONDecodeError as e:
            raise ArgumentError(f"invalid params JSON: {e.msg}", invariant='family_params')
        return normalize_params(name, params)

    if len(tokens) != len(family.params):
        raise ArgumentError(
            f"{name} takes {len(family.params)} positional parameters ({' '.join(family.params)}), "
            f"got {len(tokens)}",
            invariant='family_params',
        )
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise ArgumentError(f"parameters for {name} must be integers: {' '.join(tokens)}",
                            invariant='family_params')
    return dict(zip(family.params, values))


def build_family(name: str, params: Dict[str, Any], **kwargs) -> CayleyGraph:
    params = normalize_params(name, params)
    return _family(name).builder(**params, **kwargs)
