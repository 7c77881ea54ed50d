from itertools import combinations, product

import networkx as nx
import pytest

from spchoose.sp_core import RealizedGraph


def to_nx(g: RealizedGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def path_graph(n_edges: int) -> RealizedGraph:
    return RealizedGraph(
        frozenset(range(n_edges + 1)),
        frozenset((i, i + 1) for i in range(n_edges)),
        (0, n_edges) if n_edges else None,
    )


def brute_force_colourings(g: RealizedGraph, lists, m: int):
    """Every m-fold colouring, by trying the full product of m-subsets (tiny inputs only)."""
    order = sorted(g.vertices)
    choices = [[frozenset(c) for c in combinations(sorted(lists[v]), m)] for v in order]
    for combo in product(*choices):
        phi = dict(zip(order, combo))
        if all(not phi[u] & phi[v] for u, v in g.edges):
            yield phi


def brute_force_girth(g: RealizedGraph):
    h = to_nx(g)
    value = nx.girth(h)
    return None if value == float("inf") else int(value)


@pytest.fixture
def c5():
    return RealizedGraph(frozenset(range(5)), frozenset((i, (i + 1) % 5) for i in range(5)), (0, 2))
