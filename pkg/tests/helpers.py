"""Shared hypothesis strategies for the test suite."""

from hypothesis import strategies as st

from defekt.graphs import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not pairs:
        return Graph(n)
    edges = draw(
        st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))
    )
    return Graph(n, edges)


@st.composite
def nonempty_graphs(draw, min_n: int = 1, max_n: int = 8):
    # at least one edge, for oracles that reject edgeless inputs
    g = draw(graphs(min_n=max(min_n, 2), max_n=max_n))
    if g.m:
        return g
    u = draw(st.integers(0, g.n - 2))
    return Graph(g.n, list(g.edges()) + [(u, u + 1)])
