"""Exhaustive search for the connected nonregular graphs of maximum spectral radius.

Graphs are grown one vertex at a time. Every connected graph has a vertex whose removal
leaves it connected, so all connected graphs of maximum degree at most Δ on ``m+1``
vertices arise by attaching a new vertex to a nonempty set of unsaturated vertices of a
graph on ``m`` vertices. Intermediate levels are reduced to one representative per
isomorphism class; the last level is scored by eigenvalue without reduction, and only the
graphs tied at the top are canonicalised.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import CapabilityError, InputError
from .graph import (
    CANONICAL_MAX_N,
    Graph,
    canonical_form,
    degree_profile,
    graph_from_edges,
    is_connected,
)
from .io import to_graph6
from .spectral import PerronData, perron

DEFAULT_CAPS = {2: 12, 3: 10, 4: 8}
DEFAULT_CAP_OTHER = 8
TIE_TOL = 1e-9
RESOLVE_TOL = 1e-13


@dataclass
class Witness:
    graph: Graph
    lambda1: float
    code: bytes

    @property
    def graph6(self) -> str:
        return to_graph6(self.graph)

    @property
    def degrees(self) -> tuple[int, ...]:
        return degree_profile(self.graph).sorted_degrees


@dataclass
class ExtremalReport:
    n: int
    delta: int
    lambda_max: float
    witnesses: list[Witness]
    count_enumerated: int
    level_sizes: list[int] = field(default_factory=list)

    @property
    def degree_profiles(self) -> list[tuple[int, ...]]:
        return [w.degrees for w in self.witnesses]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "lambda_max": self.lambda_max,
            "count_enumerated": self.count_enumerated,
            "witnesses": [
                {
                    "graph6": w.graph6,
                    "canonical": w.code.hex(),
                    "lambda1": w.lambda1,
                    "degrees": list(w.degrees),
                    "edges": [list(e) for e in w.graph.edges()],
                }
                for w in self.witnesses
            ],
        }


def default_cap(delta: int) -> int:
    return DEFAULT_CAPS.get(delta, DEFAULT_CAP_OTHER)


def _subsets(free: list[int], delta: int):
    for r in range(1, min(delta, len(free)) + 1):
        yield from itertools.combinations(free, r)


def _children(g: Graph, delta: int):
    degs = g.degrees()
    free = [v for v in range(g.n) if degs[v] < delta]
    for s in _subsets(free, delta):
        yield g.n, s


def connected_levels(n_max: int, delta: int) -> list[list[Graph]]:
    """``levels[m]`` lists one graph per isomorphism class of connected graphs on ``m``
    vertices with maximum degree at most ``delta``, for ``1 <= m <= n_max``."""
    if n_max > CANONICAL_MAX_N:
        raise CapabilityError(f"levels beyond n={CANONICAL_MAX_N} are not supported")
    levels: list[list[Graph]] = [[], [graph_from_edges(1, [])]]
    for m in range(1, n_max):
        seen: dict[bytes, Graph] = {}
        for g in levels[m]:
            base = g.edges()
            for v, s in _children(g, delta):
                h = graph_from_edges(m + 1, base + [(v, u) for u in s])
                code = canonical_form(h)
                if code not in seen:
                    seen[code] = h
        levels.append([seen[c] for c in sorted(seen)])
    return levels


def _score_parents(args) -> tuple[int, float, list[tuple[float, list[tuple[int, int]]]]]:
    """Score every child of each parent; return the count, best value and near-best children."""
    parents, n, delta = args
    count = 0
    best = -math.inf
    keep: list[tuple[float, list[tuple[int, int]]]] = []
    for edges in parents:
        g = graph_from_edges(n - 1, edges)
        degs = g.degrees()
        free = [v for v in range(n - 1) if degs[v] < delta]
        subsets = list(_subsets(free, delta))
        if not subsets:
            continue
        base = np.zeros((n, n))
        for u, v in edges:
            base[u, v] = base[v, u] = 1.0
        mats = np.repeat(base[None, :, :], len(subsets), axis=0)
        valid = np.zeros(len(subsets), dtype=bool)
        for i, s in enumerate(subsets):
            idx = list(s)
            mats[i, n - 1, idx] = 1.0
            mats[i, idx, n - 1] = 1.0
            new_degs = list(degs) + [len(s)]
            for u in s:
                new_degs[u] += 1
            valid[i] = max(new_degs) == delta and min(new_degs) < delta
        count += int(valid.sum())
        if not valid.any():
            continue
        lams = np.linalg.eigvalsh(mats[valid])[:, -1]
        chosen = [s for s, ok in zip(subsets, valid) if ok]
        top = float(lams.max())
        if top > best:
            best = top
            keep = [(lam, e) for lam, e in keep if lam >= best - 10 * TIE_TOL]
        for lam, s in zip(lams, chosen):
            if lam >= best - 10 * TIE_TOL:
                keep.append((float(lam), edges + [(u, n - 1) for u in s]))
    return count, best, keep


def enumerate_extremal(
    n: int, delta: int, cap: Optional[int] = None, force: bool = False, threads: int = 1
) -> ExtremalReport:
    """Maximum ``lambda_1`` over connected nonregular graphs with ``n`` vertices and maximum
    degree ``delta``, with every extremal graph up to isomorphism.

    Candidates are screened with a dense symmetric eigensolver; those within ``10 * TIE_TOL``
    of the best are re-solved by power iteration at ``RESOLVE_TOL`` and kept if within
    ``TIE_TOL`` of the refined maximum.
    """
    if delta < 2:
        raise InputError("delta must be at least 2")
    if n < delta + 1:
        raise InputError(f"need n >= delta + 1, got n={n}, delta={delta}")
    limit = cap if cap is not None else default_cap(delta)
    if n > limit and not force:
        raise CapabilityError(
            f"n={n} exceeds the oracle cap {limit} for delta={delta}; "
            f"pass force=True (cost grows roughly tenfold per extra vertex)"
        )
    if n > CANONICAL_MAX_N:
        raise CapabilityError(f"oracle supports n <= {CANONICAL_MAX_N}")
    levels = connected_levels(n - 1, delta)
    parents = [g.edges() for g in levels[n - 1]]
    chunks = _split(parents, max(1, threads) * 4 if threads > 1 else 1)
    tasks = [(c, n, delta) for c in chunks]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_score_parents, tasks))
    else:
        results = [_score_parents(t) for t in tasks]
    count = sum(r[0] for r in results)
    best = max((r[1] for r in results), default=-math.inf)
    if best == -math.inf:
        raise InputError(f"no connected nonregular graph with n={n}, delta={delta}")
    near = [e for r in results for lam, e in r[2] if lam >= best - 10 * TIE_TOL]
    refined: dict[bytes, Witness] = {}
    for edges in near:
        g = graph_from_edges(n, edges)
        code = canonical_form(g)
        if code in refined:
            continue
        pd = perron(g, RESOLVE_TOL)
        refined[code] = Witness(graph_from_edges(n, edges), pd.lambda1, code)
    lam_max = max(w.lambda1 for w in refined.values())
    witnesses = sorted(
        (w for w in refined.values() if w.lambda1 >= lam_max - TIE_TOL), key=lambda w: w.code
    )
    return ExtremalReport(n, delta, lam_max, witnesses, count, [len(lv) for lv in levels[1:]])


def _split(items: list, parts: int) -> list[list]:
    parts = max(1, min(parts, len(items)))
    size = math.ceil(len(items) / parts)
    return [items[i : i + size] for i in range(0, len(items), size)]


def enumerate_classes(n: int, delta: int) -> dict[bytes, Graph]:
    """All isomorphism classes of connected nonregular graphs with ``n`` vertices and maximum
    degree exactly ``delta``, keyed by canonical code. Meant for small ``n``."""
    levels = connected_levels(n, delta) if n > 1 else [[], [graph_from_edges(1, [])]]
    out = {}
    for g in levels[n]:
        p = degree_profile(g)
        if p.max_deg == delta and not p.is_regular:
            out[canonical_form(g)] = g
    return out


# structural audit of extremal graphs
@dataclass
class LemmaAudit:
    s_is_clique: bool
    s_size_ok: bool
    neighborhoods_nested: bool
    s_below_t: bool
    deletion_connected: bool
    details: list[str] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(
            (self.s_is_clique, self.s_size_ok, self.neighborhoods_nested, self.s_below_t, self.deletion_connected)
        )

    def to_dict(self) -> dict:
        return {
            "s_is_clique": self.s_is_clique,
            "s_size_ok": self.s_size_ok,
            "neighborhoods_nested": self.neighborhoods_nested,
            "s_below_t": self.s_below_t,
            "deletion_connected": self.deletion_connected,
            "details": list(self.details),
        }


def verify_structure_lemmas(g: Graph, pd: PerronData, delta: int, tol: float = 1e-9) -> LemmaAudit:
    """Check the structural conclusions that every extremal graph satisfies.

    ``S`` is the set of unsaturated vertices and ``T`` the saturated ones. Comparisons of
    Perron components use ``tol`` so that symmetric vertices count as equal.
    """
    x = pd.x
    degs = g.degrees()
    S = [v for v in range(g.n) if degs[v] < delta]
    T = set(v for v in range(g.n) if degs[v] == delta)
    details = []

    clique = all(g.has_edge(u, v) for u, v in itertools.combinations(S, 2))
    if not clique:
        details.append(f"S={S} does not induce a clique")
    size_ok = len(S) <= delta - 1
    if not size_ok:
        details.append(f"|S|={len(S)} exceeds delta-1={delta - 1}")

    nested = True
    nt = {v: set(g.adj[v]) & T for v in S}
    for u, v in itertools.permutations(S, 2):
        if (x[u] <= x[v] + tol) != (nt[u] <= nt[v]):
            nested = False
            details.append(f"nesting fails for u={u}, v={v}")

    below = True
    if S and T:
        below = bool(max(x[v] for v in S) < min(x[v] for v in T))
        if not below:
            details.append("max over S is not below min over T")

    order = sorted(range(g.n), key=lambda v: (-x[v], v))
    deletion = True
    for k in range(1, 4):
        if k >= g.n:
            break
        rest = g.remove_vertices(order[:k])
        if not is_connected(rest):
            deletion = False
            details.append(f"removing the top {k} Perron vertices disconnects the graph")
    return LemmaAudit(clique, size_ok, nested, below, deletion, details)
