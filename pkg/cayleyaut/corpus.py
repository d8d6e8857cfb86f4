"""
Built-in reproduction corpus: named graphs with their expected verdicts
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .autgroup import (PermutationGroup, brute_force_aut, is_arc_transitive, is_dihedral,
                       is_vertex_transitive, orbit_of, stabilizer, wreath_product_order)
from .cayley import CayleyGraph, complement, is_connected
from .connect import edge_connectivity, vertex_connectivity
from .exceptions import PreconditionError
from .families import build_family
from .predict import left_regular, is_normal_subgroup, verify_prediction
from .settings import Settings

logger = logging.getLogger(__name__)

# Complement checks run only on graphs up to this size
COMPLEMENT_CHECK_VERTICES = 20

# Families whose members are all arc-transitive
ARC_TRANSITIVE_FAMILIES = {'hypercube', 'kary_ncube'}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    family: str
    params: Dict[str, int]
    us: bool
    predicted: int
    aut: int
    dihedral: Optional[bool] = None


@dataclass
class CorpusResult:
    name: str
    us: bool
    predicted: int
    brute: int
    verdict: str
    reasons: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == 'PASS'

    def to_dict(self):
        return {
            'graph': self.name,
            'us': self.us,
            'predicted': self.predicted,
            'brute': self.brute,
            'verdict': self.verdict,
            'reasons': self.reasons,
        }


def _cycles() -> List[CorpusEntry]:
    return [CorpusEntry(f'C_{n}', 'cycle', {'n': n}, n != 4, 2 * n, 2 * n, True) for n in range(3, 13)]


def _hypercubes() -> List[CorpusEntry]:
    orders = {1: 2, 2: 8, 3: 48, 4: 384}
    return [CorpusEntry(f'Q_{n}', 'hypercube', {'n': n}, True, o, o) for n, o in orders.items()]


def _mobius() -> List[CorpusEntry]:
    entries = [
        CorpusEntry('M_4', 'mobius', {'n': 4}, False, 8, 24, False),
        CorpusEntry('M_5', 'mobius', {'n': 5}, False, 20, 120, False),
        CorpusEntry('M_6', 'mobius', {'n': 6}, False, 12, 72, False),
        CorpusEntry('M_7', 'mobius', {'n': 7}, False, 14, 14, True),
    ]
    entries += [CorpusEntry(f'M_{n}', 'mobius', {'n': n}, True, 2 * n, 2 * n, True) for n in range(8, 17)]
    return entries


def _kary() -> List[CorpusEntry]:
    # (k, n) -> (us, predicted, aut)
    table = {
        (3, 2): (True, 72, 72),
        (5, 2): (True, 200, 200),
        (3, 3): (True, 1296, 1296),
        (6, 1): (True, 12, 12),
        (7, 1): (True, 14, 14),
        (2, 3): (True, 48, 48),
        (2, 4): (True, 384, 384),
        (4, 2): (False, 128, 384),
    }
    return [CorpusEntry(f'Q_{n}^{k}', 'kary_ncube', {'k': k, 'n': n}, *values)
            for (k, n), values in table.items()]


CORPUS: List[CorpusEntry] = (
    _cycles()
    + _hypercubes()
    + _mobius()
    + _kary()
    + [CorpusEntry('Circ(25;5,2)', 'circulant', {'n': 25, 'd': 5, 'm': 2}, True, 50, 50, True)]
)


def _complement_reasons(graph: CayleyGraph, aut: PermutationGroup, settings: Settings) -> List[str]:
    """Aut of the complement must equal Aut; a disconnected complement also gets the wreath order"""
    kwargs = dict(max_vertices=settings.max_brute_force_vertices,
                  max_elements=settings.max_group_elements,
                  refine_depth=settings.refine_depth)
    comp = complement(graph)
    reasons = []
    if brute_force_aut(comp, **kwargs).element_set() != aut.element_set():
        reasons.append("Aut of the complement differs from Aut")
    if not is_connected(comp):
        try:
            wreath = wreath_product_order(comp, **kwargs)
        except PreconditionError:
            logger.debug("complement of %s has non-isomorphic components", graph.label)
        else:
            if wreath != aut.order:
                reasons.append(f"wreath product order {wreath} of the complement, expected {aut.order}")
    return reasons


def _symmetry_reasons(entry: CorpusEntry, graph: CayleyGraph, aut: PermutationGroup,
                      settings: Settings) -> List[str]:
    """Transitivity, orbit-stabilizer and the connectivity chain kappa <= lambda <= delta"""
    reasons = []
    if not is_vertex_transitive(graph, aut):
        reasons.append("Cayley graph is not vertex-transitive")
    arc_transitive = is_arc_transitive(graph, aut)
    if entry.family in ARC_TRANSITIVE_FAMILIES and not arc_transitive:
        reasons.append(f"{entry.family} member is not arc-transitive")

    for v in sorted({0, graph.n // 2, graph.n - 1}):
        if len(orbit_of(aut, v)) * stabilizer(aut, v).order != aut.order:
            reasons.append(f"|orbit({v})| * |stab({v})| != |Aut|")

    if graph.n >= 2:
        kappa = vertex_connectivity(graph, group=aut, workers=settings.workers)
        lam = edge_connectivity(graph)
        delta = min(graph.degrees())
        if not kappa <= lam <= delta:
            reasons.append(f"connectivity chain broken: kappa={kappa} lambda={lam} delta={delta}")
        if arc_transitive and kappa != delta:
            reasons.append(f"arc-transitive graph has kappa={kappa} below its degree {delta}")
    return reasons


def run_entry(entry: CorpusEntry, settings: Settings) -> CorpusResult:
    """Verify one corpus entry against its expected verdict"""
    graph = build_family(entry.family, entry.params, max_vertices=settings.max_construction_vertices)
    report = verify_prediction(
        graph.group, graph.conn,
        max_vertices=settings.max_brute_force_vertices,
        max_connection_set=settings.max_connection_set,
        max_elements=settings.max_group_elements,
        refine_depth=settings.refine_depth,
        workers=settings.workers,
    )

    reasons = []
    if report.us_holds != entry.us:
        reasons.append(f"us={report.us_holds}, expected {entry.us}")
    if not report.us_holds and not report.us.witness.verify(graph.group):
        reasons.append("us witness does not verify")
    if report.predicted_order != entry.predicted:
        reasons.append(f"predicted order {report.predicted_order}, expected {entry.predicted}")
    if report.aut_order != entry.aut:
        reasons.append(f"aut order {report.aut_order}, expected {entry.aut}")
    if report.equality != (entry.predicted == entry.aut):
        reasons.append(f"equality={report.equality}, expected {entry.predicted == entry.aut}")
    if report.theorem_32_applicable and not report.equality:
        reasons.append("us holds but the predicted group differs from Aut")
    if report.us_holds and not report.stabilizer_matches:
        reasons.append("stabilizer of 0 differs from Aut(H,S)")
    if not is_normal_subgroup(left_regular(graph.group), report.predicted):
        reasons.append("L(H) is not normal in the predicted group")
    if entry.dihedral is not None and is_dihedral(report.aut, graph.n) != entry.dihedral:
        reasons.append(f"is_dihedral expected {entry.dihedral}")
    reasons += _symmetry_reasons(entry, graph, report.aut, settings)
    if graph.n <= COMPLEMENT_CHECK_VERTICES:
        reasons += _complement_reasons(graph, report.aut, settings)

    result = CorpusResult(entry.name, report.us_holds, report.predicted_order, report.aut_order,
                          'FAIL' if reasons else 'PASS', reasons)
    logger.info("corpus %s: %s", entry.name, result.verdict)
    return result


def run_corpus(settings: Settings, entries: Optional[List[CorpusEntry]] = None) -> List[CorpusResult]:
    return [run_entry(entry, settings) for entry in (entries if entries is not None else CORPUS)]
