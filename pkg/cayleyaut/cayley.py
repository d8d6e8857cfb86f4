"""
Cayley graphs Cay(H; S) over finite abelian groups

Builds graphs, decides the unique-summation ("us") property, generates the
named families (cycles, hypercubes, Moebius ladders, k-ary n-cubes,
circulants) and forms complements.
"""
import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .abelian import ElementLike, GroupElement, GroupSpec, add, validate_connection_indices
from .exceptions import ArgumentError, ResourceError, ValidationError
from .settings import MAX_CONSTRUCTION_VERTICES

logger = logging.getLogger(__name__)

# Dense adjacency is only materialized up to this many vertices
DENSE_ADJACENCY_LIMIT = 4096


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency lists"""

    adjacency: Tuple[Tuple[int, ...], ...]
    label: Optional[str] = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], label: Optional[str] = None) -> 'Graph':
        neighbors = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}", invariant='simple')
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) outside 0..{n - 1}", invariant='vertex_range')
            neighbors[u].add(v)
            neighbors[v].add(u)
        return cls(tuple(tuple(sorted(adj)) for adj in neighbors), label)

    @classmethod
    def complete(cls, n: int) -> 'Graph':
        return cls(tuple(tuple(v for v in range(n) if v != u) for u in range(n)), f'K_{n}')

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> List[int]:
        return [len(adj) for adj in self.adjacency]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in sorted order"""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @cached_property
    def neighbor_sets(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(adj) for adj in self.adjacency)

    @cached_property
    def matrix(self) -> Optional[np.ndarray]:
        """Dense boolean adjacency, or None above DENSE_ADJACENCY_LIMIT vertices"""
        if self.n > DENSE_ADJACENCY_LIMIT:
            return None
        m = np.zeros((self.n, self.n), dtype=bool)
        for u, adj in enumerate(self.adjacency):
            m[u, list(adj)] = True
        return m

    def has_edge(self, u: int, v: int) -> bool:
        if self.matrix is not None:
            return bool(self.matrix[u, v])
        return v in self.neighbor_sets[u]

    def edge_lines(self) -> List[str]:
        return [f'{u} {v}' for u, v in self.edges()]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def same_edges(self, other: 'Graph') -> bool:
        return self.adjacency == other.adjacency

    def validate(self):
        """Raise ValidationError unless the graph is simple and undirected"""
        for u, adj in enumerate(self.adjacency):
            if u in adj:
                raise ValidationError(f"self-loop at vertex {u}", invariant='simple')
            for v in adj:
                if u not in self.neighbor_sets[v]:
                    raise ValidationError(f"edge {u}->{v} has no reverse", invariant='undirected')


@dataclass(frozen=True)
class ConnectionSet:
    """Inverse-closed generating subset of H without 0, ordered by index"""

    group: GroupSpec
    indices: Tuple[int, ...]

    @classmethod
    def build(cls, group: GroupSpec, elements: Iterable[ElementLike]) -> 'ConnectionSet':
        """Validate and canonicalize; duplicates collapse"""
        indices = tuple(sorted({group.index_of(e) for e in elements}))
        validate_connection_indices(group, indices)
        return cls(group, indices)

    @property
    def elements(self) -> List[GroupElement]:
        return [self.group.from_index(i) for i in self.indices]

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.elements)

    def as_residue_lists(self) -> List[List[int]]:
        return [list(e.residues) for e in self.elements]


@dataclass(frozen=True)
class CayleyGraph(Graph):
    """Cay(H; S): g ~ g + s for every s in S"""

    group: Optional[GroupSpec] = None
    conn: Optional[ConnectionSet] = None


@dataclass(frozen=True)
class UsWitness:
    """s1 + s2 = g = s3 + s4 with {s1, s2} != {s3, s4}"""

    g: GroupElement
    first: Tuple[GroupElement, GroupElement]
    second: Tuple[GroupElement, GroupElement]

    def verify(self, spec: GroupSpec) -> bool:
        return (self.g != GroupElement((0,) * spec.rank)
                and add(spec, *self.first) == self.g == add(spec, *self.second)
                and sorted(self.first) != sorted(self.second))


@dataclass(frozen=True)
class UsReport:
    holds: bool
    witness: Optional[UsWitness] = None
    # Every nonzero sum with more than one multiset of summands
    collisions: Tuple[Tuple[GroupElement, Tuple[Tuple[GroupElement, GroupElement], ...]], ...] = field(default=())


def _as_connection_set(spec: GroupSpec, S) -> ConnectionSet:
    if isinstance(S, ConnectionSet):
        if S.group != spec:
            raise ValidationError(f"connection set belongs to {S.group}, not {spec}", invariant='group')
        return S
    return ConnectionSet.build(spec, S)


def build_cayley(spec: GroupSpec, S, label: Optional[str] = None,
                 max_vertices: int = MAX_CONSTRUCTION_VERTICES) -> CayleyGraph:
    """
    Construct Cay(H; S)

    Args:
        spec: Group H
        S: ConnectionSet or iterable of elements (validated)
        label: Optional family tag
        max_vertices: Construction cap

    Returns:
        CayleyGraph with |H| vertices, regular of degree |S|
    """
    if spec.order > max_vertices:
        raise ResourceError('construction_vertices', max_vertices, spec.order)
    conn = _as_connection_set(spec, S)

    columns = np.stack([spec.translation(s) for s in conn.indices], axis=1)
    columns.sort(axis=1)
    adjacency = tuple(tuple(int(v) for v in row) for row in columns)

    logger.debug("Built Cay(%s; %d generators) with %d vertices", spec, len(conn), spec.order)
    return CayleyGraph(adjacency, label, spec, conn)


def check_us(spec: GroupSpec, S) -> UsReport:
    """
    Decide the unique-summation property

    Sums of unordered pairs (repetition allowed) are bucketed by value; a
    nonzero value reached by two different multisets is a collision.

    Returns:
        UsReport; the witness is the first collision by (g index, multiset)
    """
    conn = _as_connection_set(spec, S)
    buckets: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for a, b in combinations_with_replacement(conn.indices, 2):
        g = spec.add_index(a, b)
        if g != 0:
            buckets[g].append((a, b))

    collisions = []
    for g in sorted(buckets):
        pairs = sorted(buckets[g])
        if len(pairs) > 1:
            elements = tuple((spec.from_index(a), spec.from_index(b)) for a, b in pairs)
            collisions.append((spec.from_index(g), elements))

    if not collisions:
        return UsReport(holds=True)

    g, pairs = collisions[0]
    return UsReport(False, UsWitness(g, pairs[0], pairs[1]), tuple(collisions))


# --- families -------------------------------------------------------------

def _require(condition: bool, message: str):
    if not condition:
        raise ArgumentError(message, invariant='family_params')


def family_cycle(n: int, **kwargs) -> CayleyGraph:
    """C_n = Cay(Z_n; {1, -1})"""
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return build_cayley(GroupSpec.cyclic(n), [1, n - 1], label=f'C_{n}', **kwargs)


def family_hypercube(n: int, **kwargs) -> CayleyGraph:
    """Q_n = Cay(Z_2^n; {e_1, ..., e_n})"""
    _require(n >= 1, f"hypercube needs n >= 1, got {n}")
    spec = GroupSpec.power(2, n)
    return build_cayley(spec, [spec.unit(i) for i in range(n)], label=f'Q_{n}', **kwargs)


def mobius_connection(n: int) -> List[int]:
    """{1, 2k-1, k} for n = 2k, {1, 2k, k, k+1} for n = 2k+1"""
    k = n // 2
    if n % 2 == 0:
        return [1, n - 1, k]
    return [1, n - 1, k, k + 1]


def family_mobius(n: int, **kwargs) -> CayleyGraph:
    """Moebius ladder M_n: C_n plus chords between antipodal vertices"""
    _require(n >= 4, f"Moebius ladder needs n >= 4, got {n}")
    return build_cayley(GroupSpec.cyclic(n), mobius_connection(n), label=f'M_{n}', **kwargs)


def mobius_ladder_direct(n: int) -> Graph:
    """C_n with u ~ v added whenever their cycle distance is diam(C_n) = n // 2"""
    _require(n >= 4, f"Moebius ladder needs n >= 4, got {n}")
    diam = n // 2
    edges = [(u, (u + 1) % n) for u in range(n)]
    edges += [(u, v) for u in range(n) for v in range(u + 1, n) if min(v - u, n - v + u) == diam]
    return Graph.from_edges(n, edges, label=f'M_{n}')


def family_kary_ncube(k: int, n: int, **kwargs) -> CayleyGraph:
    """Q_n^k = Cay(Z_k^n; {+-e_i}); for k = 2 the signs coincide and the degree is n"""
    _require(k >= 2, f"k-ary n-cube needs k >= 2, got k={k}")
    _require(n >= 1, f"k-ary n-cube needs n >= 1, got n={n}")
    spec = GroupSpec.power(k, n)
    conn = []
    for i in range(n):
        e = spec.unit(i)
        conn += [e, tuple(-x for x in e.residues)]
    return build_cayley(spec, conn, label=f'Q_{n}^{k}', **kwargs)


def circulant_decomposition(n: int, d: int, m: int) -> int:
    """Return c with n = c * d^m, 1 <= c < d, or raise ArgumentError"""
    _require(d >= 5, f"circulant needs d >= 5, got {d}")
    _require(m >= 1, f"circulant needs m >= 1, got {m}")
    c, rem = divmod(n, d ** m)
    _require(rem == 0 and 1 <= c < d, f"n={n} is not c*{d}^{m} with 1 <= c < {d}")
    return c


def family_circulant(n: int, d: int, m: int, powers: Optional[Sequence[int]] = None, **kwargs) -> CayleyGraph:
    """
    Circulant Cay(Z_n; {+-d^i : i in powers}) with n = c*d^m

    Args:
        n, d, m: Parameters with 1 <= c < d, d >= 5, m >= 1
        powers: Subset of {0..m-1} containing 0; defaults to all of them
    """
    circulant_decomposition(n, d, m)
    powers = sorted(set(range(m) if powers is None else powers))
    _require(0 in powers, "powers must contain 0")
    _require(all(0 <= p < m for p in powers), f"powers must lie in 0..{m - 1}, got {powers}")

    conn = []
    for p in powers:
        conn += [d ** p % n, -(d ** p) % n]
    return build_cayley(GroupSpec.cyclic(n), conn, label=f'Circ({n};{d},{m})', **kwargs)


# --- derived graphs -------------------------------------------------------

def complement(graph: Graph) -> Graph:
    """Same vertices; {u, v} is an edge iff it is not one in graph"""
    n = graph.n
    adjacency = tuple(
        tuple(v for v in range(n) if v != u and v not in graph.neighbor_sets[u])
        for u in range(n)
    )
    label = f'complement({graph.label})' if graph.label else None
    return Graph(adjacency, label)


def relabel(graph: Graph, perm: Sequence[int]) -> Graph:
    """Image of graph under vertex map v -> perm[v]"""
    return Graph.from_edges(graph.n, [(perm[u], perm[v]) for u, v in graph.edges()], graph.label)


def induced_subgraph(graph: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph on the given vertices, relabelled 0..len-1 in the given order"""
    position = {v: i for i, v in enumerate(vertices)}
    edges = [(position[u], position[v]) for u in vertices for v in graph.adjacency[u]
             if v in position and u < v]
    return Graph.from_edges(len(vertices), edges)


def bfs_distances(graph: Graph, source: int) -> List[int]:
    """Distances from source; -1 for unreachable vertices"""
    dist = [-1] * graph.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in graph.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(graph: Graph) -> List[List[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex"""
    seen = [False] * graph.n
    components = []
    for s in range(graph.n):
        if seen[s]:
            continue
        component = [v for v, d in enumerate(bfs_distances(graph, s)) if d >= 0]
        for v in component:
            seen[v] = True
        components.append(component)
    return components


def is_connected(graph: Graph) -> bool:
    return graph.n > 0 and all(d >= 0 for d in bfs_distances(graph, 0))


def diameter(graph: Graph) -> Optional[int]:
    """
    Largest eccentricity, or None for a disconnected graph

    Cayley graphs are vertex-transitive, so one BFS from 0 suffices there.
    """
    sources = [0] if isinstance(graph, CayleyGraph) and graph.group is not None else range(graph.n)
    best = 0
    for s in sources:
        dist = bfs_distances(graph, s)
        if min(dist) < 0:
            return None
        best = max(best, max(dist))
    return best
