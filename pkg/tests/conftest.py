import itertools

import pytest
from hypothesis import strategies as st

from asymcolour import build_graph


def brute_automorphisms(graph, colouring=None):
    """Independent oracle: filter all |V|! bijections by full adjacency
    preservation (both directions, every vertex pair)."""
    found = []
    for p in itertools.permutations(range(graph.n)):
        if colouring is not None and any(colouring[p[v]] != colouring[v] for v in range(graph.n)):
            continue
        if all(
            graph.has_edge(p[u], p[v]) == graph.has_edge(u, v)
            for u in range(graph.n)
            for v in range(u + 1, graph.n)
        ):
            found.append(p)
    return sorted(found)


def atlas_corpus():
    """All connected graphs on 1..7 vertices, relabelled to 0..n-1."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    graphs = []
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= 7 and nx.is_connected(g):
            mapping = {u: i for i, u in enumerate(sorted(g.nodes()))}
            edges = [(mapping[u], mapping[v]) for u, v in g.edges()]
            graphs.append(build_graph(n, edges))
    return graphs


@pytest.fixture(scope="session")
def corpus():
    graphs = atlas_corpus()
    by_n = {}
    for g in graphs:
        by_n[g.n] = by_n.get(g.n, 0) + 1
    # connected graph counts per vertex count, a classical sequence;
    # guards against an incomplete corpus silently weakening the suite
    assert by_n == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
    return graphs


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    """Random connected graph: a random spanning tree plus extra edges."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    edges = set()
    for v in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=v - 1))
        edges.add((parent, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if pairs:
        extras = draw(st.lists(st.sampled_from(pairs), max_size=2 * n, unique=True))
        edges.update(extras)
    return build_graph(n, sorted(edges))


@st.composite
def permutations_of(draw, n):
    values = list(range(n))
    return tuple(draw(st.permutations(values)))
