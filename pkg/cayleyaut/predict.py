"""
Predicted automorphism group L(H) x| Aut(H, S) and its verification

The predicted group is materialized as explicit vertex permutations
x -> a(x) + v so it can be compared element-for-element with the group the
exhaustive search returns.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .abelian import GroupElement, GroupEndoMap, GroupSpec, aut_stabilizing
from .autgroup import (Permutation, PermutationGroup, brute_force_aut, group_equal,
                       is_subgroup, stabilizer)
from .cayley import ConnectionSet, UsReport, build_cayley, check_us
from .exceptions import InternalInconsistencyError, ResourceError
from .settings import (MAX_BRUTE_FORCE_VERTICES, MAX_CONNECTION_SET, MAX_GROUP_ELEMENTS,
                       REFINE_DEPTH, WORKERS)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineAut:
    """x -> auto(x) + shift for a group automorphism auto"""

    auto: GroupEndoMap
    shift: GroupElement

    def permutation(self, spec: GroupSpec) -> Permutation:
        shift = spec.translation(spec.index_of(self.shift))
        return Permutation(tuple(int(shift[y]) for y in self.auto.images))

    def compose(self, other: 'AffineAut', spec: GroupSpec) -> 'AffineAut':
        """(a2, v2) o (a1, v1) = (a2 o a1, a2(v1) + v2)"""
        shift = spec.translation(spec.index_of(self.shift))
        moved = int(shift[self.auto(spec.index_of(other.shift))])
        return AffineAut(self.auto.compose(other.auto), spec.from_index(moved))


class PredictedGroup(PermutationGroup):
    """PermutationGroup carrying the affine pair behind each element"""

    def __init__(self, spec: GroupSpec, stabilizing: List[GroupEndoMap],
                 affine: Dict[Permutation, AffineAut], max_elements: int):
        super().__init__(spec.order, affine.keys(), verify=False, max_elements=max_elements)
        self.spec = spec
        self.stabilizing = stabilizing
        self.affine = affine


@dataclass
class VerificationReport:
    us_holds: bool
    predicted_order: int
    aut_order: int
    containment: bool
    equality: bool
    theorem_32_applicable: bool
    theorem_32_confirmed: Optional[bool]
    us: UsReport = field(repr=False, default=None)
    stabilizer_order: int = 0
    stabilizer_matches: bool = False
    predicted: Optional[PredictedGroup] = field(repr=False, default=None)
    aut: Optional[PermutationGroup] = field(repr=False, default=None)


def left_regular(spec: GroupSpec) -> PermutationGroup:
    """L(H) = {x -> h + x : h in H}"""
    perms = [Permutation(tuple(int(y) for y in spec.translation(h))) for h in range(spec.order)]
    return PermutationGroup(spec.order, perms)


def automorphism_permutations(spec: GroupSpec, maps: List[GroupEndoMap]) -> List[Permutation]:
    return [Permutation(m.images) for m in maps]


def predicted_generators(spec: GroupSpec, maps: List[GroupEndoMap]) -> List[Permutation]:
    """
    Generators of L(H) x| Aut(H, S) without listing its elements

    Translations by the unit elements generate L(H); the rest generate
    Aut(H, S). Memory stays at O(|H| * (r + |Aut(H, S)|)).
    """
    translations = [Permutation(tuple(int(y) for y in spec.translation(spec.index_of(spec.unit(i)))))
                    for i in range(spec.rank)]
    stabilizing = PermutationGroup(spec.order, automorphism_permutations(spec, maps), verify=False)
    return translations + list(stabilizing.generators)


def predicted_group(spec: GroupSpec, S, max_connection_set: int = MAX_CONNECTION_SET,
                    max_elements: int = MAX_GROUP_ELEMENTS) -> PredictedGroup:
    """
    All permutations x -> a(x) + v, a in Aut(H, S), v in H

    Raises InternalInconsistencyError if the order is not |H| * |Aut(H, S)|.
    """
    conn = S if isinstance(S, ConnectionSet) else ConnectionSet.build(spec, S)
    maps = aut_stabilizing(spec, conn.elements, max_connection_set=max_connection_set)

    expected = spec.order * len(maps)
    if expected > max_elements:
        raise ResourceError('group_elements', max_elements, expected)

    affine: Dict[Permutation, AffineAut] = {}
    for a in maps:
        for v in range(spec.order):
            pair = AffineAut(a, spec.from_index(v))
            affine[pair.permutation(spec)] = pair

    if len(affine) != expected:
        raise InternalInconsistencyError(
            f"predicted group has {len(affine)} elements, expected |H|*|A| = {expected}")

    logger.debug("Predicted group for %s: |A| = %d, order %d", spec, len(maps), expected)
    return PredictedGroup(spec, maps, affine, max_elements)


def is_normal_subgroup(sub: PermutationGroup, group: PermutationGroup) -> bool:
    """p o l o p^-1 in sub for every generator p of group and l of sub"""
    for p in group.generators:
        p_inv = p.inverse()
        for l in sub.generators:
            if p.compose(l).compose(p_inv) not in sub:
                return False
    return True


def preserves_adjacency(group: PermutationGroup, graph) -> bool:
    return all(p.preserves(graph) for p in group.generators)


def verify_prediction(spec: GroupSpec, S, max_vertices: int = MAX_BRUTE_FORCE_VERTICES,
                      max_connection_set: int = MAX_CONNECTION_SET,
                      max_elements: int = MAX_GROUP_ELEMENTS,
                      refine_depth: int = REFINE_DEPTH, workers: int = WORKERS) -> VerificationReport:
    """
    Compare L(H) x| Aut(H, S) with the exhaustively computed Aut(Cay(H; S))

    Returns:
        VerificationReport; containment failure raises InternalInconsistencyError
    """
    conn = S if isinstance(S, ConnectionSet) else ConnectionSet.build(spec, S)
    graph = build_cayley(spec, conn)

    def brute():
        return brute_force_aut(graph, max_vertices=max_vertices, max_elements=max_elements,
                               refine_depth=refine_depth)

    def predict():
        return predicted_group(spec, conn, max_connection_set=max_connection_set,
                               max_elements=max_elements)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=3) as pool:
            us_future = pool.submit(check_us, spec, conn)
            predicted_future = pool.submit(predict)
            aut_future = pool.submit(brute)
            us, predicted, aut = us_future.result(), predicted_future.result(), aut_future.result()
    else:
        us, predicted, aut = check_us(spec, conn), predict(), brute()

    return compare_groups(spec, us, predicted, aut)


def compare_groups(spec: GroupSpec, us: UsReport, predicted: PredictedGroup,
                   aut: PermutationGroup) -> VerificationReport:
    """Build the report from already computed pieces"""
    containment = is_subgroup(predicted, aut)
    if not containment:
        raise InternalInconsistencyError(
            f"L(H) x| Aut(H,S) is not contained in Aut(Gamma) for {spec}: "
            f"orders {predicted.order} vs {aut.order}")

    equality = group_equal(predicted, aut)
    stab = stabilizer(aut, 0)
    stab_matches = stab.element_set() == frozenset(automorphism_permutations(spec, predicted.stabilizing))

    report = VerificationReport(
        us_holds=us.holds,
        predicted_order=predicted.order,
        aut_order=aut.order,
        containment=containment,
        equality=equality,
        theorem_32_applicable=us.holds,
        theorem_32_confirmed=equality if us.holds else None,
        us=us,
        stabilizer_order=stab.order,
        stabilizer_matches=stab_matches,
        predicted=predicted,
        aut=aut,
    )
    logger.info("%s: us=%s predicted=%d aut=%d equality=%s", spec, us.holds,
                predicted.order, aut.order, equality)
    return report
