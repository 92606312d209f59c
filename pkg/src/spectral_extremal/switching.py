"""Rotations and local switchings, their Perron-vector criteria, and a greedy search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InputError
from .graph import Graph, is_connected
from .spectral import PerronData, perron

DEFAULT_TIE_TOL = 1e-9


@dataclass(frozen=True)
class SwitchMove:
    """Replace edges ``uv`` and ``st`` by ``sv`` and ``tu``."""

    s: int
    t: int
    v: int
    u: int


@dataclass(frozen=True)
class RotationMove:
    """Replace edge ``uv`` by ``uw``."""

    u: int
    v: int
    w: int


def switch_is_valid(g: Graph, m: SwitchMove) -> bool:
    s, t, v, u = m.s, m.t, m.v, m.u
    if len({s, t, v, u}) != 4 or not all(0 <= a < g.n for a in (s, t, v, u)):
        return False
    return g.has_edge(u, v) and g.has_edge(s, t) and not g.has_edge(s, v) and not g.has_edge(t, u)


def rotation_is_valid(g: Graph, m: RotationMove) -> bool:
    u, v, w = m.u, m.v, m.w
    if len({u, v, w}) != 3 or not all(0 <= a < g.n for a in (u, v, w)):
        return False
    return g.has_edge(u, v) and not g.has_edge(u, w)


def rotate(g: Graph, m: RotationMove) -> Graph:
    if not rotation_is_valid(g, m):
        raise InputError(f"invalid rotation {m}")
    return g.with_edges(add=[(m.u, m.w)], remove=[(m.u, m.v)])


def local_switch(g: Graph, m: SwitchMove) -> Graph:
    if not switch_is_valid(g, m):
        raise InputError(f"invalid local switching {m}")
    return g.with_edges(add=[(m.s, m.v), (m.t, m.u)], remove=[(m.u, m.v), (m.s, m.t)])


def is_proper_switch(pd: PerronData, m: SwitchMove, tie_tol: float = DEFAULT_TIE_TOL) -> bool:
    """``(x_s - x_u)(x_v - x_t) >= 0`` up to ``tie_tol``; exact ties count as proper."""
    x = pd.x
    return (x[m.s] - x[m.u]) * (x[m.v] - x[m.t]) >= -tie_tol


def rotation_gains(pd: PerronData, m: RotationMove) -> bool:
    """The rotation criterion ``x_w >= x_v``."""
    return pd.x[m.w] >= pd.x[m.v]


def iter_rotations(g: Graph) -> Iterator[RotationMove]:
    for u in range(g.n):
        for v in g.adj[u]:
            for w in range(g.n):
                if w != u and w != v and not g.has_edge(u, w):
                    yield RotationMove(u, v, w)


def iter_switches(g: Graph) -> Iterator[SwitchMove]:
    """All valid moves, lexicographic in ``(s, t, v, u)``."""
    for s in range(g.n):
        for t in g.adj[s]:
            for v in range(g.n):
                if v in (s, t) or g.has_edge(s, v):
                    continue
                for u in g.adj[v]:
                    if u not in (s, t) and not g.has_edge(t, u):
                        yield SwitchMove(s, t, v, u)


def _admissible(h: Graph, delta: int) -> bool:
    ds = h.degrees()
    return max(ds) == delta and min(ds) < delta and is_connected(h)


def improving_search(g: Graph, delta: int, budget: int = 1000, min_gain: float = 1e-12, tol: float = 1e-12) -> Graph:
    """Greedy hill climb over rotations then switchings.

    Each step scans rotations, then switchings, in lexicographic order. It applies the first
    move that passes its Perron criterion, keeps the graph connected, nonregular and of
    maximum degree ``delta``, and raises ``lambda_1`` by more than ``min_gain``. The strict
    gain rules out cycling. Stops after ``budget`` moves or at a local optimum.
    """
    if not _admissible(g, delta):
        raise InputError("input must be connected, nonregular, with maximum degree delta")
    cur = g
    pd = perron(cur, tol)
    for _ in range(budget):
        nxt = None
        for rm in iter_rotations(cur):
            if cur.degree(rm.w) >= delta or not rotation_gains(pd, rm):
                continue
            h = rotate(cur, rm)
            if not _admissible(h, delta):
                continue
            hp = perron(h, tol)
            if hp.lambda1 > pd.lambda1 + min_gain:
                nxt = (h, hp)
                break
        if nxt is None:
            for sm in iter_switches(cur):
                if not is_proper_switch(pd, sm):
                    continue
                h = local_switch(cur, sm)
                if not is_connected(h):
                    continue
                hp = perron(h, tol)
                if hp.lambda1 > pd.lambda1 + min_gain:
                    nxt = (h, hp)
                    break
        if nxt is None:
            break
        cur, pd = nxt
    return cur
