"""
Automorphism groups of small graphs by exhaustive search

The search individualizes a vertex, refines both sides to an equitable
partition (up to a configurable depth), and backtracks over candidate images
with forward checking on a dense candidate matrix. Every automorphism is
enumerated, so groups are held as explicit sorted element sets.
"""
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .cayley import (DENSE_ADJACENCY_LIMIT, Graph, bfs_distances, connected_components,
                     induced_subgraph)
from .exceptions import (ArgumentError, InternalInconsistencyError, PreconditionError,
                         ResourceError, ValidationError)
from .settings import MAX_BRUTE_FORCE_VERTICES, MAX_GROUP_ELEMENTS, REFINE_DEPTH, WORKERS

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of 0..n-1 stored as its image array"""

    images: Tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(tuple(range(n)))

    @classmethod
    def of(cls, images: Iterable[int]) -> 'Permutation':
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValidationError(f"not a permutation: {list(images)}", invariant='bijective')
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def compose(self, other: 'Permutation') -> 'Permutation':
        """self after other: x -> self(other(x))"""
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> 'Permutation':
        inv = [0] * len(self.images)
        for i, y in enumerate(self.images):
            inv[y] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self.images))

    def order(self) -> int:
        p, k = self, 1
        while not p.is_identity():
            p, k = self.compose(p), k + 1
        return k

    def preserves(self, graph: Graph) -> bool:
        """True iff edges map to edges (and hence, bijectively, non-edges to non-edges)"""
        return all(graph.has_edge(self.images[u], self.images[v]) for u, v in graph.edges())


def closure(degree: int, generators: Sequence[Permutation],
            max_elements: int = MAX_GROUP_ELEMENTS) -> frozenset:
    """All products of the generators, including the identity"""
    identity = Permutation.identity(degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = g.compose(x)
            if y not in seen:
                seen.add(y)
                if len(seen) > max_elements:
                    raise ResourceError('group_elements', max_elements, len(seen))
                queue.append(y)
    return frozenset(seen)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def classes(self, members: Optional[Iterable[int]] = None) -> List[List[int]]:
        groups: Dict[int, List[int]] = {}
        for x in (range(len(self.parent)) if members is None else members):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(sorted(c) for c in groups.values())


class PermutationGroup:
    """Permutation group held as its canonical sorted element set"""

    def __init__(self, degree: int, elements: Iterable[Permutation], verify: bool = True,
                 max_elements: int = MAX_GROUP_ELEMENTS):
        """
        Args:
            degree: Number of points acted on
            elements: All group elements (duplicates allowed)
            verify: Check identity membership and closure via the generators
            max_elements: Element cap
        """
        self.degree = degree
        self.elements: Tuple[Permutation, ...] = tuple(sorted(set(elements)))
        self.max_elements = max_elements
        self._element_set = frozenset(self.elements)

        if len(self.elements) > max_elements:
            raise ResourceError('group_elements', max_elements, len(self.elements))
        if any(p.degree != degree for p in self.elements):
            raise ArgumentError(f"all permutations must have degree {degree}")
        if verify:
            if Permutation.identity(degree) not in self._element_set:
                raise ValidationError("element set lacks the identity", invariant='identity')
            if closure(degree, self.generators, max_elements) != self._element_set:
                raise ValidationError("element set is not closed under composition", invariant='closure')

    @classmethod
    def generated_by(cls, degree: int, generators: Sequence[Permutation],
                     max_elements: int = MAX_GROUP_ELEMENTS) -> 'PermutationGroup':
        return cls(degree, closure(degree, generators, max_elements), verify=False,
                   max_elements=max_elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._element_set

    def __eq__(self, other):
        return (isinstance(other, PermutationGroup) and self.degree == other.degree
                and self._element_set == other._element_set)

    def __hash__(self):
        return hash((self.degree, self._element_set))

    def __repr__(self):
        return f'PermutationGroup(degree={self.degree}, order={self.order})'

    @cached_property
    def generators(self) -> Tuple[Permutation, ...]:
        """Greedy generating set: walk the elements in order, keep those not yet generated"""
        gens: List[Permutation] = []
        generated = {Permutation.identity(self.degree)}
        for p in self.elements:
            if p not in generated:
                gens.append(p)
                generated = closure(self.degree, gens, max(self.max_elements, len(self.elements)))
        return tuple(gens)

    def element_set(self) -> frozenset:
        return self._element_set


def orbits(group: PermutationGroup) -> List[List[int]]:
    """Vertex orbits, each sorted, ordered by smallest vertex"""
    uf = UnionFind(group.degree)
    for g in group.generators:
        for x in range(group.degree):
            uf.union(x, g(x))
    return uf.classes()


def orbit_of(group: PermutationGroup, v: int) -> List[int]:
    _check_point(group, v)
    return next(o for o in orbits(group) if v in o)


def _check_point(group: PermutationGroup, v: int):
    if not 0 <= v < group.degree:
        raise ArgumentError(f"vertex {v} out of range 0..{group.degree - 1}")


def stabilizer(group: PermutationGroup, v: int) -> PermutationGroup:
    """G_v = {p in G : p(v) = v}"""
    _check_point(group, v)
    return PermutationGroup(group.degree, (p for p in group if p(v) == v), verify=False,
                            max_elements=group.max_elements)


def stabilizer_orbits_on(group: PermutationGroup, v: int, points: Sequence[int]) -> List[List[int]]:
    """Orbits of G_v on a G_v-invariant point set such as N(v)"""
    stab = stabilizer(group, v)
    uf = UnionFind(group.degree)
    for g in stab.generators:
        for x in points:
            uf.union(x, g(x))
    return uf.classes(points)


def group_equal(g1: PermutationGroup, g2: PermutationGroup) -> bool:
    _check_degrees(g1, g2)
    return g1.element_set() == g2.element_set()


def is_subgroup(g1: PermutationGroup, g2: PermutationGroup) -> bool:
    """True iff every element of g1 lies in g2"""
    _check_degrees(g1, g2)
    return g1.element_set() <= g2.element_set()


def _check_degrees(g1: PermutationGroup, g2: PermutationGroup):
    if g1.degree != g2.degree:
        raise ArgumentError(f"degree mismatch: {g1.degree} vs {g2.degree}")


def is_dihedral(group: PermutationGroup, n: int) -> bool:
    """
    True iff group has order 2n and contains r of order n and an involution s
    with s r s = r^-1 and <r, s> = group
    """
    if group.order != 2 * n:
        return False
    involutions = [s for s in group if not s.is_identity() and s.compose(s).is_identity()]
    for r in group:
        if r.order() != n:
            continue
        rotations = set()
        p = Permutation.identity(group.degree)
        for _ in range(n):
            rotations.add(p)
            p = r.compose(p)
        r_inv = r.inverse()
        for s in involutions:
            # s outside <r> makes <r, s> of order 2n
            if s not in rotations and s.compose(r).compose(s) == r_inv:
                return True
    return False


# --- search ---------------------------------------------------------------

def _canonical_colors(signatures: Sequence) -> List[int]:
    palette = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [palette[s] for s in signatures]


def initial_coloring(graph: Graph) -> List[int]:
    """Colour by (degree, neighbour degrees, distance profile)"""
    degrees = graph.degrees()
    signatures = []
    for v in range(graph.n):
        dist = bfs_distances(graph, v)
        profile = tuple(np.bincount([d for d in dist if d >= 0]).tolist())
        unreachable = sum(1 for d in dist if d < 0)
        neighbor_degrees = tuple(sorted(degrees[u] for u in graph.adjacency[v]))
        signatures.append((degrees[v], neighbor_degrees, profile, unreachable))
    return _canonical_colors(signatures)


def refine_coloring(graph: Graph, colors: Sequence[int]) -> List[int]:
    """Refine to the coarsest equitable partition below colors (label-invariant)"""
    colors = list(colors)
    count = len(set(colors))
    while True:
        signatures = [(colors[v], tuple(sorted(colors[u] for u in graph.adjacency[v])))
                      for v in range(graph.n)]
        colors = _canonical_colors(signatures)
        new_count = len(set(colors))
        if new_count == count:
            return colors
        count = new_count


def individualize(graph: Graph, colors: Sequence[int], v: int) -> List[int]:
    colors = list(colors)
    colors[v] = max(colors) + 1
    return refine_coloring(graph, colors)


def is_equitable(graph: Graph, colors: Sequence[int]) -> bool:
    """Every vertex of a cell has the same number of neighbours in each cell"""
    seen: Dict[int, Tuple] = {}
    for v in range(graph.n):
        profile = tuple(np.bincount([colors[u] for u in graph.adjacency[v]],
                                    minlength=max(colors) + 1).tolist())
        if seen.setdefault(colors[v], profile) != profile:
            return False
    return True


class _AutomorphismSearch:
    """Backtracking over candidate images with forward checking"""

    def __init__(self, graph: Graph, refine: bool, refine_depth: int, max_elements: int):
        self.graph = graph
        self.n = graph.n
        self.adj = graph.matrix
        self.refine = refine
        self.refine_depth = refine_depth if refine else -1
        self.max_elements = max_elements
        self.nodes = 0

    def root(self) -> Tuple[np.ndarray, List[int]]:
        if self.refine:
            colors = refine_coloring(self.graph, initial_coloring(self.graph))
        else:
            colors = [0] * self.n
        c = np.array(colors)
        return c[:, None] == c[None, :], colors

    def choose(self, domains: np.ndarray, assigned: np.ndarray) -> int:
        """Unassigned vertex with the smallest candidate set, lowest index on ties"""
        sizes = domains.sum(axis=1)
        sizes[assigned] = self.n + 1
        return int(np.argmin(sizes))

    def extend(self, domains: np.ndarray, v: int, w: int, depth: int,
               left: Optional[List[int]], right: Optional[List[int]]):
        """Domains after fixing v -> w, or None when some vertex runs out of images"""
        self.nodes += 1
        new = domains.copy()
        new[:, w] = False
        adjacent = self.adj[v]
        new[adjacent] &= self.adj[w]
        new[~adjacent] &= ~self.adj[w]
        new[v] = False
        new[v, w] = True

        if depth < self.refine_depth and left is not None:
            left = individualize(self.graph, left, v)
            right = individualize(self.graph, right, w)
            if sorted(left) != sorted(right):
                return None, None, None
            lc, rc = np.array(left), np.array(right)
            new &= lc[:, None] == rc[None, :]
        else:
            left = right = None

        if not new.any(axis=1).all():
            return None, None, None
        return new, left, right

    def run(self, domains: np.ndarray, assigned: np.ndarray, depth: int,
            left: Optional[List[int]], right: Optional[List[int]], found: List[Tuple[int, ...]]):
        if assigned.all():
            found.append(tuple(int(x) for x in domains.argmax(axis=1)))
            if len(found) > self.max_elements:
                raise ResourceError('group_elements', self.max_elements, len(found))
            return
        v = self.choose(domains, assigned)
        for w in np.flatnonzero(domains[v]):
            new, l2, r2 = self.extend(domains, v, int(w), depth, left, right)
            if new is None:
                continue
            assigned[v] = True
            self.run(new, assigned, depth + 1, l2, r2, found)
            assigned[v] = False


def check_search_size(graph: Graph, max_vertices: int = MAX_BRUTE_FORCE_VERTICES):
    """Raise ResourceError unless the exhaustive search accepts this graph"""
    if graph.n == 0:
        raise ArgumentError("graph has no vertices")
    limit = min(max_vertices, DENSE_ADJACENCY_LIMIT)
    if graph.n > limit:
        raise ResourceError('brute_force_vertices', limit, graph.n)


def brute_force_aut(graph: Graph, max_vertices: int = MAX_BRUTE_FORCE_VERTICES,
                    max_elements: int = MAX_GROUP_ELEMENTS, refine: bool = True,
                    refine_depth: int = REFINE_DEPTH, workers: int = WORKERS) -> PermutationGroup:
    """
    Compute Aut(graph) as an explicit element set

    Args:
        graph: Simple undirected graph
        max_vertices: Vertex cap for the search
        max_elements: Group element cap
        refine: Use the equitable-partition invariants; False gives a plain
            forward-checking search used as a reference
        refine_depth: Depth up to which refinement is recomputed
        workers: Threads for the top-level branches

    Returns:
        PermutationGroup of every adjacency-preserving bijection
    """
    check_search_size(graph, max_vertices)

    search = _AutomorphismSearch(graph, refine, refine_depth, max_elements)
    domains, colors = search.root()
    assigned = np.zeros(graph.n, dtype=bool)
    left = right = colors if refine else None

    v = search.choose(domains, assigned)
    candidates = [int(w) for w in np.flatnonzero(domains[v])]

    def branch(w: int) -> Tuple[List[Tuple[int, ...]], int]:
        # each branch gets its own search state so threads share nothing mutable
        local = _AutomorphismSearch(graph, refine, refine_depth, max_elements)
        found: List[Tuple[int, ...]] = []
        new, l2, r2 = local.extend(domains, v, w, 0, left, right)
        if new is not None:
            mask = assigned.copy()
            mask[v] = True
            local.run(new, mask, 1, l2, r2, found)
        return found, local.nodes

    if workers > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(branch, candidates))
    else:
        results = [branch(w) for w in candidates]

    search.nodes += sum(nodes for _, nodes in results)
    images = [p for found, _ in results for p in found]
    if len(images) > max_elements:
        raise ResourceError('group_elements', max_elements, len(images))

    perms = [Permutation(p) for p in images]
    for p in perms:
        if not p.preserves(graph):
            raise InternalInconsistencyError(f"search returned a non-automorphism {p.images}")

    logger.debug("Aut(%s): %d automorphisms, %d search nodes", graph.label or f'{graph.n} vertices',
                 len(perms), search.nodes)
    return PermutationGroup(graph.n, perms, verify=True, max_elements=max_elements)


def _group_for(graph: Graph, group: Optional[PermutationGroup], **kwargs) -> PermutationGroup:
    return group if group is not None else brute_force_aut(graph, **kwargs)


def is_vertex_transitive(graph: Graph, group: Optional[PermutationGroup] = None, **kwargs) -> bool:
    return len(orbits(_group_for(graph, group, **kwargs))) == 1


def is_arc_transitive(graph: Graph, group: Optional[PermutationGroup] = None, **kwargs) -> bool:
    """Vertex-transitive and G_0 transitive on N(0)"""
    group = _group_for(graph, group, **kwargs)
    if len(orbits(group)) != 1:
        return False
    neighborhood = list(graph.neighbors(0))
    if not neighborhood:
        return True
    return len(stabilizer_orbits_on(group, 0, neighborhood)) == 1


def is_edge_transitive(graph: Graph, group: Optional[PermutationGroup] = None, **kwargs) -> bool:
    """Single orbit on undirected edges"""
    group = _group_for(graph, group, **kwargs)
    edges = graph.edges()
    if not edges:
        return True
    position = {e: i for i, e in enumerate(edges)}
    uf = UnionFind(len(edges))
    for g in group.generators:
        for i, (u, v) in enumerate(edges):
            a, b = g(u), g(v)
            uf.union(i, position[(min(a, b), max(a, b))])
    return len(uf.classes()) == 1


def wreath_product_order(graph: Graph, **kwargs) -> int:
    """
    |Aut| of a disjoint union of c isomorphic connected graphs: |Aut(G_1)|^c * c!

    Raises PreconditionError when the components are not pairwise isomorphic.
    """
    components = connected_components(graph)
    pieces = [induced_subgraph(graph, c) for c in components]
    first = pieces[0].to_networkx()
    if any(not nx.is_isomorphic(first, p.to_networkx()) for p in pieces[1:]):
        raise PreconditionError("components are not pairwise isomorphic", invariant='isomorphic_components')
    base = brute_force_aut(pieces[0], **kwargs).order
    return base ** len(pieces) * factorial(len(pieces))
