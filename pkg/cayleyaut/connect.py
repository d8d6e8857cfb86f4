"""
Vertex and edge connectivity by unit-capacity max-flow

Vertex connectivity uses the split network (v_in -> v_out with capacity 1),
so a max-flow value counts internally vertex-disjoint paths (Menger).
"""
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from .autgroup import PermutationGroup, orbits
from .cayley import Graph, is_connected
from .exceptions import ArgumentError
from .settings import WORKERS

logger = logging.getLogger(__name__)

INFINITE = float('inf')


class FlowNetwork:
    """Residual network over integer nodes with dict-of-dict capacities"""

    def __init__(self, size: int):
        self.size = size
        self.capacity: List[Dict[int, float]] = [{} for _ in range(size)]

    def add_arc(self, u: int, v: int, capacity: float):
        self.capacity[u][v] = self.capacity[u].get(v, 0) + capacity
        self.capacity[v].setdefault(u, 0)

    @classmethod
    def vertex_split(cls, graph: Graph) -> 'FlowNetwork':
        """Node 2v is v_in, node 2v+1 is v_out"""
        network = cls(2 * graph.n)
        for v in range(graph.n):
            network.add_arc(2 * v, 2 * v + 1, 1)
        for u, v in graph.edges():
            network.add_arc(2 * u + 1, 2 * v, INFINITE)
            network.add_arc(2 * v + 1, 2 * u, INFINITE)
        return network

    @classmethod
    def edge_network(cls, graph: Graph) -> 'FlowNetwork':
        network = cls(graph.n)
        for u, v in graph.edges():
            network.add_arc(u, v, 1)
            network.add_arc(v, u, 1)
        return network

    def max_flow(self, source: int, sink: int, cutoff: float = INFINITE) -> int:
        """
        Augment along shortest paths until none is left or cutoff is reached

        Every augmenting path carries one unit: all finite capacities are 1.
        """
        residual = [dict(arcs) for arcs in self.capacity]
        flow = 0
        while flow < cutoff:
            parent = {source: None}
            queue = deque([source])
            while queue and sink not in parent:
                u = queue.popleft()
                for v, cap in residual[u].items():
                    if cap > 0 and v not in parent:
                        parent[v] = u
                        queue.append(v)
            if sink not in parent:
                break
            v = sink
            while parent[v] is not None:
                u = parent[v]
                residual[u][v] -= 1
                residual[v][u] += 1
                v = u
            flow += 1
        return flow


def _check_graph(graph: Graph):
    if graph.n < 2:
        raise ArgumentError(f"connectivity needs at least 2 vertices, got {graph.n}")


def local_vertex_connectivity(graph: Graph, s: int, t: int,
                              network: Optional[FlowNetwork] = None,
                              cutoff: float = INFINITE) -> int:
    """Number of internally vertex-disjoint s-t paths for non-adjacent s, t"""
    if graph.has_edge(s, t) or s == t:
        raise ArgumentError(f"vertices {s} and {t} must be distinct and non-adjacent")
    network = network or FlowNetwork.vertex_split(graph)
    return network.max_flow(2 * s + 1, 2 * t, cutoff)


def _min_over_pairs(network: FlowNetwork, pairs: Sequence[Tuple[int, int]], best: int,
                    workers: int) -> int:
    if not pairs:
        return best
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = pool.map(lambda p: network.max_flow(2 * p[0] + 1, 2 * p[1], best), pairs)
            return min(best, *values)
    for s, t in pairs:
        best = min(best, network.max_flow(2 * s + 1, 2 * t, best))
    return best


def vertex_connectivity(graph: Graph, group: Optional[PermutationGroup] = None,
                        workers: int = WORKERS) -> int:
    """
    Minimum number of vertices whose removal disconnects the graph

    Args:
        graph: Graph with at least 2 vertices
        group: Automorphism group if already computed; one source per orbit is
            then enough
        workers: Threads for independent max-flow queries

    Returns:
        kappa; 0 for a disconnected graph, n-1 for a complete graph
    """
    _check_graph(graph)
    if not is_connected(graph):
        return 0
    n = graph.n
    if graph.edge_count == n * (n - 1) // 2:
        return n - 1

    network = FlowNetwork.vertex_split(graph)
    best = min(graph.degrees())

    if group is not None:
        sources = [orbit[0] for orbit in orbits(group)]
        pairs = [(s, t) for s in sources for t in range(n) if t != s and not graph.has_edge(s, t)]
        return _min_over_pairs(network, pairs, best, workers)

    # Even's scheme: sources v_0..v_kappa suffice, one of them lies outside a minimum cut
    i = 0
    while i <= best and i < n:
        pairs = [(i, j) for j in range(i + 1, n) if not graph.has_edge(i, j)]
        best = _min_over_pairs(network, pairs, best, workers)
        i += 1
    logger.debug("vertex connectivity of %s: %d", graph.label or f'{n}-vertex graph', best)
    return best


def edge_connectivity(graph: Graph) -> int:
    """Minimum edge cut: source 0 against every other vertex"""
    _check_graph(graph)
    if not is_connected(graph):
        return 0
    network = FlowNetwork.edge_network(graph)
    best = min(graph.degrees())
    for t in range(1, graph.n):
        best = min(best, network.max_flow(0, t, best))
    return best
