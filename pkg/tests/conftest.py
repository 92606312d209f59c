import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from spectral_extremal.graph import Graph, graph_from_edges, is_connected


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return graph_from_edges(len(idx), [(idx[u], idx[v]) for u, v in h.edges()])


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        # thread a random spanning path so the graph is connected
        order = draw(st.permutations(range(n)))
        edges += [(min(a, b), max(a, b)) for a, b in zip(order, order[1:])]
    return graph_from_edges(n, set(edges))


def random_connected(rng: random.Random, n: int, p: float, max_deg: int | None = None) -> Graph:
    """Random tree plus extra edges; degrees capped at ``max_deg`` when given."""
    while True:
        deg = [0] * n
        edges = set()
        order = list(range(n))
        rng.shuffle(order)
        ok = True
        for i in range(1, n):
            cands = [u for u in order[:i] if max_deg is None or deg[u] < max_deg]
            if not cands:
                ok = False
                break
            u = rng.choice(cands)
            v = order[i]
            edges.add((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
        if not ok:
            continue
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) in edges or rng.random() >= p:
                    continue
                if max_deg is not None and (deg[u] >= max_deg or deg[v] >= max_deg):
                    continue
                edges.add((u, v))
                deg[u] += 1
                deg[v] += 1
        g = graph_from_edges(n, edges)
        if is_connected(g):
            return g


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
