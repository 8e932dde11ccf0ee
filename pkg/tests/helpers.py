"""Shared fixtures-as-functions and hypothesis strategies."""

from hypothesis import strategies as st

from threshold_influence.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph

C4 = cycle_graph(4)
P3 = path_graph(3)
K3 = complete_graph(3)
K4 = complete_graph(4)
STAR3 = star_graph(3)
# v1..v5 with edges 12, 23, 34, 45, 25, 13, relabelled to 0..4
G5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4), (0, 2)])
TWO_K2 = Graph(4, [(0, 1), (2, 3)])


@st.composite
def graphs(draw, min_n=1, max_n=8, p=None):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if p is None:
        bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    else:
        bits = [draw(st.floats(0, 1)) < p for _ in pairs]
    return Graph(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def graph_and_seeds(draw, min_n=1, max_n=8, max_seeds=None):
    g = draw(graphs(min_n, max_n))
    limit = g.n if max_seeds is None else min(max_seeds, g.n)
    seeds = draw(st.lists(st.integers(0, g.n - 1), unique=True, max_size=limit))
    return g, tuple(sorted(seeds))
