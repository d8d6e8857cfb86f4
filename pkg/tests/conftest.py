import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from cayleyaut.cayley import Graph
from cayleyaut.settings import Settings


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def from_nx():
    """Convert a networkx graph on 0..n-1 into a Graph"""
    def convert(g: nx.Graph, label=None) -> Graph:
        g = nx.convert_node_labels_to_integers(g)
        return Graph.from_edges(g.number_of_nodes(), g.edges(), label)
    return convert


@pytest.fixture
def nx_aut_count():
    """Number of automorphisms according to networkx VF2"""
    def count(graph: Graph) -> int:
        g = graph.to_networkx()
        return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())
    return count
