"""Simple undirected graphs on vertices ``0..n-1`` and the combinatorial helpers built on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import CapabilityError, DomainError, InputError

CANONICAL_MAX_N = 12
EMBED_MAX_PATTERN = 10


class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``. ``masks[v]`` holds the same
    set as an integer bitset; it is built lazily, since only the small-graph code paths
    (enumeration, canonical forms, embeddings) use it.
    """

    __slots__ = ("n", "adj", "_masks", "_edges")

    def __init__(self, n: int, adj: Sequence[Iterable[int]]):
        self.n = int(n)
        sets = [set(a) for a in adj]
        if len(sets) != self.n:
            raise InputError("adjacency length does not match n")
        for v, nb in enumerate(sets):
            if v in nb:
                raise InputError(f"self-loop at {v}")
            for u in nb:
                if not (0 <= u < self.n) or v not in sets[u]:
                    raise InputError(f"asymmetric or out-of-range adjacency at ({v}, {u})")
        self.adj = tuple(tuple(sorted(a)) for a in sets)
        self._masks = None
        self._edges = None

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitsets, built on first use."""
        if self._masks is None:
            out = []
            for nb in self.adj:
                m = 0
                for u in nb:
                    m |= 1 << u
                out.append(m)
            self._masks = tuple(out)
        return self._masks

    # basic queries
    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)
        return list(self._edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.masks[u] >> v) & 1)

    # derived graphs
    def with_edges(self, add: Iterable[tuple[int, int]] = (), remove: Iterable[tuple[int, int]] = ()) -> "Graph":
        es = {(min(u, v), max(u, v)) for u, v in self.edges()}
        for u, v in remove:
            es.discard((min(u, v), max(u, v)))
        for u, v in add:
            es.add((min(u, v), max(u, v)))
        return graph_from_edges(self.n, es)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return graph_from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        idx = {v: i for i, v in enumerate(vertices)}
        return graph_from_edges(
            len(vertices), [(idx[u], idx[v]) for u, v in self.edges() if u in idx and v in idx]
        )

    def remove_vertices(self, drop: Iterable[int]) -> "Graph":
        drop = set(drop)
        return self.induced([v for v in range(self.n) if v not in drop])

    # matrices
    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def sparse_adjacency(self) -> sp.csr_matrix:
        e = np.array(self.edges(), dtype=np.int64).reshape(-1, 2)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows))
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def laplacian_form(self, y: np.ndarray) -> float:
        """``y^T L y``, the sum over edges of ``(y_u - y_v)^2``."""
        e = np.array(self.edges(), dtype=np.int64).reshape(-1, 2)
        if len(e) == 0:
            return 0.0
        d = y[e[:, 0]] - y[e[:, 1]]
        return float(d @ d)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices; duplicate pairs collapse to one edge."""
    if n < 0:
        raise InputError("n must be non-negative")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise InputError(f"self-loop at {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


# standard small graphs, handy in tests and the CLI
def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return graph_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_minus_edge(n: int) -> Graph:
    """``K_n`` with the edge ``{n-2, n-1}`` removed."""
    return complete_graph(n).with_edges(remove=[(n - 2, n - 1)])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    return graph_from_edges(g1.n + g2.n, g1.edges() + [(u + off, v + off) for u, v in g2.edges()])


# connectivity and distances
def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    adj = g.adj
    while q:
        v = q.popleft()
        dv = dist[v] + 1
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dv
                q.append(u)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise InputError("connectivity of the empty graph is undefined")
    if g.n > 64:
        return min(bfs_distances(g, 0)) >= 0
    # bitset flood fill; fast for the small graphs that dominate enumeration
    seen = 1
    frontier = 1
    masks = g.masks
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def components(g: Graph) -> list[list[int]]:
    comp = [-1] * g.n
    out = []
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        part = [s]
        q = deque([s])
        while q:
            v = q.popleft()
            for u in g.adj[v]:
                if comp[u] < 0:
                    comp[u] = len(out)
                    part.append(u)
                    q.append(u)
        out.append(sorted(part))
    return out


def eccentricity(g: Graph, v: int) -> int:
    d = bfs_distances(g, v)
    if min(d) < 0:
        raise DomainError("graph is disconnected")
    return max(d)


def diameter(g: Graph) -> int:
    """Exact diameter by the iFUB scheme.

    Starts from the midpoint of a double sweep and walks the BFS levels inwards from the
    fringe. On path-like graphs this needs only a handful of BFS runs, which matters for the
    tens of thousands of vertices used by the counterexample search.
    """
    if g.n == 0:
        raise DomainError("empty graph")
    d0 = bfs_distances(g, 0)
    if min(d0) < 0:
        raise DomainError("graph is disconnected")
    a = max(range(g.n), key=lambda v: d0[v])
    da = bfs_distances(g, a)
    b = max(range(g.n), key=lambda v: da[v])
    db = bfs_distances(g, b)
    lower = da[b]
    # a vertex halfway along an a-b geodesic
    half = lower // 2
    mid = next(v for v in range(g.n) if da[v] == half and db[v] == lower - half)
    dm = bfs_distances(g, mid)
    levels: dict[int, list[int]] = {}
    for v, d in enumerate(dm):
        levels.setdefault(d, []).append(v)
    top = max(levels)
    lower = max(lower, top)
    i = top
    while i > 0:
        for v in levels[i]:
            lower = max(lower, max(bfs_distances(g, v)))
        if lower > 2 * (i - 1):
            return lower
        i -= 1
    return lower


def coalesce(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Identify ``v1`` of ``g1`` with ``v2`` of ``g2``.

    Vertices of ``g1`` keep their indices. The remaining vertices of ``g2`` follow in their
    original order, and ``v2`` becomes ``v1``.
    """
    if not (0 <= v1 < g1.n and 0 <= v2 < g2.n):
        raise InputError("coalescence vertex out of range")
    mapping = {}
    nxt = g1.n
    for v in range(g2.n):
        if v == v2:
            mapping[v] = v1
        else:
            mapping[v] = nxt
            nxt += 1
    edges = g1.edges() + [(mapping[u], mapping[v]) for u, v in g2.edges()]
    return graph_from_edges(g1.n + g2.n - 1, edges)


# degree profile
@dataclass(frozen=True)
class DegreeProfile:
    sorted_degrees: tuple[int, ...]
    max_deg: int
    min_deg: int
    is_regular: bool


def degree_profile(g: Graph) -> DegreeProfile:
    ds = tuple(sorted(g.degrees(), reverse=True))
    if not ds:
        return DegreeProfile((), 0, 0, True)
    return DegreeProfile(ds, ds[0], ds[-1], ds[0] == ds[-1])


# canonical form
def _refine(adj: tuple[tuple[int, ...], ...], colors: list[int]) -> list[int]:
    """Colour refinement; new colours are ranks of (colour, neighbour-colour multiset)."""
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncls:
            return new
        colors, ncls = new, len(rank)


def _code_for_order(g: Graph, order: Sequence[int]) -> int:
    masks = g.masks
    code = 0
    n = g.n
    for i in range(n):
        mi = masks[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | ((mi >> order[j]) & 1)
    return code


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """Return ``(code, order)``; ``order[i]`` is the vertex placed at canonical position ``i``.

    Individualisation-refinement: refine the degree partition, branch on every vertex of the
    first non-singleton cell, and keep the smallest adjacency bit string over all leaves.
    """
    if g.n > CANONICAL_MAX_N:
        raise CapabilityError(f"canonical_form supports n <= {CANONICAL_MAX_N}, got {g.n}")
    adj = g.adj
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        if len(set(colors)) == g.n:
            order = sorted(range(g.n), key=lambda v: colors[v])
            code = _code_for_order(g, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(g.n):
            if colors[v] == target:
                branched = [2 * c for c in colors]
                branched[v] -= 1
                search(branched)

    search(g.degrees())
    if best[0] is None:  # n == 0
        return 0, []
    return best[0], best[1]


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic (``n <= 12``)."""
    code, _ = canonical_labeling(g)
    nbits = g.n * (g.n - 1) // 2
    return bytes([g.n]) + code.to_bytes((nbits + 7) // 8, "big")


def canonical_graph(g: Graph) -> Graph:
    _, order = canonical_labeling(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return g.relabel(pos)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m or degree_profile(g1) != degree_profile(g2):
        return False
    return canonical_form(g1) == canonical_form(g2)


# induced embeddings
@dataclass(frozen=True)
class Embedding:
    """``mapping[i]`` is the host vertex carrying pattern vertex ``i``."""

    mapping: tuple[int, ...]
    boundary: frozenset[int]

    def image(self) -> set[int]:
        return set(self.mapping)


def _embedding_constraints(pattern: Graph, boundary: frozenset[int]):
    k = pattern.n
    # (earlier pattern vertex j, must_be_adjacent) pairs that constrain vertex i
    checks = []
    for i in range(k):
        row = []
        for j in range(i):
            if pattern.has_edge(i, j):
                row.append((j, True))
            elif not (i in boundary and j in boundary):
                row.append((j, False))
        checks.append(row)
    return checks


def iter_induced_embeddings(
    g: Graph,
    pattern: Graph,
    boundary: Iterable[int] = (),
    required_degrees: Optional[Sequence[int]] = None,
):
    """Yield embeddings in lexicographic order of the host-vertex tuple.

    Pattern edges must be host edges. A pattern non-edge must be a host non-edge unless both
    ends are boundary vertices. ``required_degrees``, when given, pins the host degree of
    every pattern vertex (pattern degree plus its external stubs).
    """
    if pattern.n > EMBED_MAX_PATTERN:
        raise CapabilityError(f"patterns are limited to {EMBED_MAX_PATTERN} vertices")
    boundary = frozenset(boundary)
    k = pattern.n
    if k == 0 or k > g.n:
        return
    checks = _embedding_constraints(pattern, boundary)
    pdeg = pattern.degrees()
    hdeg = g.degrees()
    masks = g.masks
    full = (1 << g.n) - 1
    assign: list[int] = [0] * k
    used = 0

    def ok(i: int, h: int) -> bool:
        if required_degrees is not None:
            if hdeg[h] != required_degrees[i]:
                return False
        elif hdeg[h] < pdeg[i]:
            return False
        mh = masks[h]
        for j, adjacent in checks[i]:
            if bool((mh >> assign[j]) & 1) != adjacent:
                return False
        return True

    def extend(i: int):
        nonlocal used
        if i == k:
            yield Embedding(tuple(assign), boundary)
            return
        cand = full & ~used
        for j, adjacent in checks[i]:
            if adjacent:
                cand &= masks[assign[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            h = low.bit_length() - 1
            if ok(i, h):
                assign[i] = h
                used |= low
                yield from extend(i + 1)
                used &= ~low

    yield from extend(0)


def find_induced_embedding(
    g: Graph,
    pattern: Graph,
    boundary: Iterable[int] = (),
    required_degrees: Optional[Sequence[int]] = None,
) -> Optional[Embedding]:
    """Lexicographically first embedding of ``pattern`` in ``g``, or ``None``."""
    return next(iter_induced_embeddings(g, pattern, boundary, required_degrees), None)
