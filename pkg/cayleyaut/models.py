"""
Records exchanged with the outside world: graph spec files and analysis reports
"""
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .abelian import GroupElement, GroupSpec
from .cayley import CayleyGraph, UsReport, build_cayley
from .exceptions import DimensionError, SpecFileError
from .families import build_family, normalize_params
from .settings import MAX_CONSTRUCTION_VERTICES

EXPLICIT_KEYS = {'moduli', 'connection_set'}
FAMILY_KEYS = {'family', 'params'}


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass
class GraphSpecFile:
    """Either {moduli, connection_set} or {family, params}"""

    moduli: Optional[List[int]] = None
    connection_set: Optional[List[List[int]]] = None
    family: Optional[str] = None
    params: Optional[Dict[str, Any]] = None

    @classmethod
    def from_json(cls, text: str) -> 'GraphSpecFile':
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecFileError(f"malformed JSON: {e.msg}", e.lineno, e.colno)
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str) -> 'GraphSpecFile':
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise SpecFileError(f"cannot read {path}: {e.strerror}")
        return cls.from_json(text)

    @classmethod
    def from_dict(cls, data: Any) -> 'GraphSpecFile':
        if not isinstance(data, dict):
            raise SpecFileError("spec must be a JSON object")

        keys = set(data)
        unknown = keys - EXPLICIT_KEYS - FAMILY_KEYS
        if unknown:
            raise SpecFileError(f"unknown keys: {', '.join(sorted(unknown))}")
        explicit, family = bool(keys & EXPLICIT_KEYS), bool(keys & FAMILY_KEYS)
        if explicit == family:
            raise SpecFileError("spec needs exactly one of {moduli, connection_set} or {family, params}")

        if family:
            name = data.get('family')
            if not isinstance(name, str):
                raise SpecFileError("'family' must be a string")
            params = normalize_params(name, data.get('params', {}))
            return cls(family=name, params=params)

        moduli, conn = data.get('moduli'), data.get('connection_set')
        if not isinstance(moduli, list) or not moduli or not all(_is_int(m) for m in moduli):
            raise SpecFileError("'moduli' must be a nonempty list of integers")
        if not isinstance(conn, list) or not all(isinstance(s, list) for s in conn):
            raise SpecFileError("'connection_set' must be a list of residue lists")
        for s in conn:
            if len(s) != len(moduli):
                raise DimensionError(len(moduli), len(s))
            if not all(_is_int(x) for x in s):
                raise SpecFileError(f"residues must be integers, got {s}")
        return cls(moduli=list(moduli), connection_set=[list(s) for s in conn])

    @classmethod
    def from_graph(cls, graph: CayleyGraph) -> 'GraphSpecFile':
        return cls(moduli=list(graph.group.moduli), connection_set=graph.conn.as_residue_lists())

    def to_dict(self) -> Dict[str, Any]:
        if self.family is not None:
            return {'family': self.family, 'params': dict(self.params or {})}
        return {'moduli': list(self.moduli), 'connection_set': [list(s) for s in self.connection_set]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def build(self, max_vertices: int = MAX_CONSTRUCTION_VERTICES) -> CayleyGraph:
        if self.family is not None:
            return build_family(self.family, self.params or {}, max_vertices=max_vertices)
        spec = GroupSpec(tuple(self.moduli))
        return build_cayley(spec, [tuple(s) for s in self.connection_set], max_vertices=max_vertices)


def element_json(element: GroupElement) -> List[int]:
    return list(element.residues)


def us_json(us: UsReport) -> Dict[str, Any]:
    result = {'holds': us.holds, 'witness': None, 'collisions': len(us.collisions)}
    if us.witness is not None:
        w = us.witness
        result['witness'] = {
            'g': element_json(w.g),
            'first': [element_json(x) for x in w.first],
            'second': [element_json(x) for x in w.second],
        }
    return result


@dataclass
class AnalysisReport:
    """Aggregated analysis of one graph; to_dict() fixes key order"""

    input: Dict[str, Any]
    group: str
    label: Optional[str]
    vertices: int
    degree: int
    edges: int
    diameter: Optional[int]
    us: Dict[str, Any]
    aut_stabilizing_order: int
    predicted_order: int
    aut_order: Optional[int] = None
    theorem32: Optional[Dict[str, Any]] = None
    stabilizer: Optional[Dict[str, Any]] = None
    vertex_transitive: Optional[bool] = None
    arc_transitive: Optional[bool] = None
    edge_transitive: Optional[bool] = None
    dihedral: Optional[Dict[str, Any]] = None
    connectivity: Optional[Dict[str, int]] = None
    generators: Dict[str, List[List[int]]] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)

    def to_dict(self, stable: bool = False) -> Dict[str, Any]:
        result = {
            'input': self.input,
            'group': self.group,
            'label': self.label,
            'vertices': self.vertices,
            'degree': self.degree,
            'edges': self.edges,
            'diameter': self.diameter,
            'us': self.us,
            'aut_stabilizing_order': self.aut_stabilizing_order,
            'predicted_order': self.predicted_order,
            'aut_order': self.aut_order,
            'theorem32': self.theorem32,
            'stabilizer': self.stabilizer,
            'vertex_transitive': self.vertex_transitive,
            'arc_transitive': self.arc_transitive,
            'edge_transitive': self.edge_transitive,
            'dihedral': self.dihedral,
            'connectivity': self.connectivity,
            'generators': self.generators,
        }
        if not stable:
            result['timings'] = {k: round(v, 6) for k, v in self.timings.items()}
        return result

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.to_dict(stable), indent=2)
