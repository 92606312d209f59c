"""Forbidden induced subgraphs, their replacements, and the algebra behind them.

Each pattern is a small graph whose port vertices have a fixed number of stubs, i.e. edges
that leave the pattern. An occurrence in a host is an induced embedding whose vertices have
host degree equal to pattern degree plus stubs. A replacement is a graph on the same number
of vertices together with a rewiring that sends every stub of the pattern to a vertex of
the replacement. Splicing it in keeps the rest of the host untouched.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import CapabilityError, ConsistencyError, InputError
from .gadgets import CAP3_5
from .graph import Embedding, Graph, graph_from_edges, iter_induced_embeddings
from .spectral import perron

SQ2, SQ3, SQ6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)
LABEL_TOL = 1e-8
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class PatternSpec:
    name: str
    delta: int
    names: tuple[str, ...]
    pattern: Graph
    stubs: tuple[int, ...]
    replacement: Optional[Graph] = None
    replacement_names: Optional[tuple[str, ...]] = None
    # rewire[k] is the replacement vertex receiving the k-th stub, stubs taken in vertex order
    rewire: Optional[tuple[int, ...]] = None
    # port vertices that come in symmetric pairs, used to build hosts
    groups: tuple[tuple[int, ...], ...] = ()
    # port pairs whose outside neighbourhoods must coincide in an occurrence
    twins: tuple[tuple[int, ...], ...] = ()

    @property
    def boundary(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.stubs) if s > 0)

    @property
    def required_degrees(self) -> tuple[int, ...]:
        return tuple(d + s for d, s in zip(self.pattern.degrees(), self.stubs))

    @property
    def replacement_stubs(self) -> Optional[tuple[int, ...]]:
        if self.replacement is None:
            return None
        out = [0] * self.pattern.n
        for j in self.rewire:
            out[j] += 1
        return tuple(out)

    @property
    def replacement_degrees(self) -> Optional[tuple[int, ...]]:
        if self.replacement is None:
            return None
        return tuple(d + s for d, s in zip(self.replacement.degrees(), self.replacement_stubs))

    @property
    def preserves_degrees(self) -> bool:
        """Whether splicing in the replacement keeps the host degree multiset."""
        return self.replacement is not None and sorted(self.required_degrees) == sorted(self.replacement_degrees)

    def index(self, name: str) -> int:
        return self.names.index(name)


def _parse(names: str, edges: str) -> tuple[tuple[str, ...], Graph]:
    vs = tuple(names.split())
    pos = {v: i for i, v in enumerate(vs)}
    es = [tuple(pos[a] for a in e.split("-")) for e in edges.split()]
    return vs, graph_from_edges(len(vs), es)


def _spec(name, delta, names, edges, stubs, groups="", repl_names=None, repl_edges=None, rewire=None,
          twins=False) -> PatternSpec:
    vs, g = _parse(names, edges)
    st = [0] * len(vs)
    for item in stubs.split():
        v, c = item.split(":")
        st[vs.index(v)] = int(c)
    grp = tuple(tuple(vs.index(v) for v in part.split(",")) for part in groups.split())
    # only pairs of double ports are twins; single-stub pairs may see different vertices
    tw = tuple(p for p in grp if len(p) == 2 and st[p[0]] == 2) if twins else ()
    if repl_edges is None:
        return PatternSpec(name, delta, vs, g, tuple(st), groups=grp, twins=tw)
    rnames = tuple((repl_names or names).split())
    _, rg = _parse(" ".join(rnames), repl_edges)
    if rewire is None:
        targets = [vs[i] for i, c in enumerate(st) for _ in range(c)]
    else:
        pairs = [p.split(">") for p in rewire.split()]
        if [a for a, _ in pairs] != [vs[i] for i, c in enumerate(st) for _ in range(c)]:
            raise ConsistencyError(f"{name}: rewire list does not follow the pattern stubs")
        targets = [b for _, b in pairs]
    rw = tuple(rnames.index(t) for t in targets)
    return PatternSpec(name, delta, vs, g, tuple(st), rg, rnames, rw, grp, tw)


# Static pattern table. Vertex names follow the drawings; a replacement lists its vertices
# in positional correspondence with the pattern (position i of both sits on the same host
# vertex after splicing).
_M1_EDGES = (
    "u1-v1 u1-w1 v1-w1 u1-v2 v1-v2 w1-v2 u1-w2 v1-w2 w1-w2 v2-v3 w2-w3 v3-w3 "
    "v3-v4 v3-w4 w3-v4 w3-w4"
)
_M_TILDE12 = "v1-v2 v1-w1 v1-w2 v1-v3 w1-v2 w1-w2 w1-w3 v2-w2 v2-v3 w2-w3"

PATTERNS: dict[str, PatternSpec] = {
    "D1": _spec(
        "D1", 3, "p0 p1 p2 p3 p4 p5", "p0-p2 p2-p4 p1-p3 p3-p5 p2-p3",
        "p0:2 p1:2 p4:2 p5:2", "p0,p1 p4,p5",
    ),
    "D2": _spec(
        "D2", 3, "u v p1 p2 p3 p4 p5 p6 q",
        "u-p1 v-p1 p1-p2 p2-p3 p2-p4 p3-p4 p3-p5 p4-p6 p5-p6 p5-q p6-q",
        "u:2 v:2 q:1", "u,v q",
        repl_edges="u-p1 v-p2 p1-p2 p1-p3 p2-p3 p3-p4 p4-p5 p4-p6 p5-p6 p5-q p6-q",
    ),
    "D3": _spec(
        "D3", 3, "n0 n1 n2 n3 n4 n5 q",
        "n0-n1 n0-n2 n1-n2 n2-n3 n3-n4 n3-n5 n4-n5 n4-q n5-q",
        "q:1", "q",
        repl_edges="n0-n1 n1-n2 n1-n3 n2-n3 n2-n4 n3-n5 n4-n5 n4-q n5-q",
    ),
    "D4": _spec(
        "D4", 3, "n0 n1 n2 n3 n4 n5", "n0-n1 n1-n2 n2-n3 n2-n4 n3-n4 n3-n5 n4-n5", "n5:1", "n5",
    ),
    "M1": _spec(
        "M1", 4, "u1 v1 w1 v2 w2 v3 w3 v4 w4", _M1_EDGES, "v4:2 w4:2", "v4,w4",
        repl_edges=_M_TILDE12 + " v3-w3 v3-u1 w3-u1 u1-v4 u1-w4 v4-w4",
        twins=True,
    ),
    "M2": _spec(
        "M2", 4, "u1 v1 w1 v2 w2 v3 w3 v4 w4", _M1_EDGES + " v4-w4", "v4:1 w4:1", "v4,w4",
        repl_edges=_M_TILDE12 + " v3-v4 v3-w4 w3-v4 w3-w4 v4-w4 v4-u1 w4-u1",
        rewire="v4>u1 w4>u1",
        twins=True,
    ),
    "M3": _spec(
        "M3", 4, "v1 w1 v2 w2 v3 w3 v4 w4",
        "v1-v2 v1-w1 v1-w2 v1-v3 w1-v2 w1-w2 w1-w3 v2-w2 v2-v3 w2-w3 v3-v4 v3-w4 w3-v4 w3-w4 v4-w4",
        "v4:1 w4:1", "v4,w4",
        repl_names="v1 w1 v2 w2 v3 w3 u1 u2",
        repl_edges="v1-v2 v1-w1 v1-w2 v1-u1 w1-v2 w1-w2 w1-u1 v2-w2 v2-v3 w2-w3 u1-v3 u1-w3 v3-w3 v3-u2 w3-u2",
        rewire="v4>u2 w4>u2",
        twins=True,
    ),
    "M4": _spec(
        "M4", 4, "u1 v1 w1 v2 w2 v3 w3",
        "u1-v1 u1-w1 v1-w1 u1-v2 u1-w2 v2-w2 v2-v3 v2-w3 w2-v3 w2-w3",
        "v1:2 w1:2 v3:2 w3:2", "v1,w1 v3,w3",
        repl_edges="v1-v2 v1-w2 w1-v2 w1-w2 v2-w2 v2-u1 w2-u1 u1-v3 u1-w3 v3-w3",
        twins=True,
    ),
    "M5": _spec(
        "M5", 4, "u1 v1 w1 v2 w2 v3 w3 v4 w4",
        "u1-v1 u1-w1 v1-w1 u1-v2 u1-w2 v2-w2 v2-v3 v2-w3 w2-v3 w2-w3 v3-w3 v3-v4 w3-w4 v4-w4",
        "v1:2 w1:2 v4:2 w4:2", "v1,w1 v4,w4",
        repl_edges="v1-w1 v1-v2 w1-w2 v2-w2 v2-v3 v2-w3 w2-v3 w2-w3 v3-w3 v3-u1 w3-u1 u1-v4 u1-w4 v4-w4",
        twins=True,
    ),
    "M6": _spec(
        "M6", 4, "u1 u2 v1 w1 v2 w2 v3 w3",
        "v1-w1 v1-u1 w1-u1 u1-v2 u1-w2 v2-w2 v2-u2 w2-u2 v2-v3 w2-w3 u2-v3 u2-w3 v3-w3",
        "v1:2 w1:2 v3:1 w3:1", "v1,w1 v3,w3",
        repl_edges="u1-v1 u1-w1 v1-w1 v1-u2 w1-u2 u2-v2 u2-w2 v2-w2 v2-v3 v2-w3 w2-v3 w2-w3 v3-w3",
        rewire="v1>u1 v1>v1 w1>u1 w1>w1 v3>v3 w3>w3",
        twins=True,
    ),
    "M7": _spec(
        "M7", 4, "u1 u2 v1 w1 v2 w2 v3 w3",
        "v1-w1 v1-u1 w1-u1 u1-v2 u1-w2 v2-w2 v2-v3 v2-u2 w2-u2 w2-w3 u2-v3 u2-w3",
        "v1:2 w1:2 v3:2 w3:2", "v1,w1 v3,w3",
        repl_edges="v1-v2 v1-u1 w1-w2 w1-u1 v2-w2 v2-u1 w2-u1 v2-u2 w2-u2 u2-v3 u2-w3 v3-w3",
        twins=True,
    ),
}


def forbidden_patterns(delta: int) -> list[PatternSpec]:
    if delta == 3:
        keys = ["D1", "D2", "D3", "D4"]
    elif delta == 4:
        keys = [f"M{i}" for i in range(1, 8)]
    else:
        raise CapabilityError(f"forbidden patterns are tabulated for delta 3 and 4 only, got {delta}")
    return [PATTERNS[k] for k in keys]


def _outside(g: Graph, emb: Embedding, i: int) -> list[int]:
    inside = set(emb.mapping)
    return sorted(u for u in g.adj[emb.mapping[i]] if u not in inside)


def is_lemma_configuration(g: Graph, emb: Embedding, spec: PatternSpec) -> bool:
    """Twin ports see the same outside vertices, and the replacement (if any) splices in
    as a simple graph."""
    for i, j in spec.twins:
        if _outside(g, emb, i) != _outside(g, emb, j):
            return False
    if spec.replacement is not None:
        try:
            splice(g, emb, spec)
        except ConsistencyError:
            return False
    return True


def iter_occurrences(g: Graph, spec: PatternSpec, strict: bool = True):
    """Induced embeddings of ``spec.pattern`` whose host degrees match pattern degree plus
    stubs. With ``strict`` only lemma configurations are kept."""
    for emb in iter_induced_embeddings(g, spec.pattern, (), spec.required_degrees):
        if not strict or is_lemma_configuration(g, emb, spec):
            yield emb


def find_occurrence(g: Graph, spec: PatternSpec, strict: bool = True) -> Optional[Embedding]:
    return next(iter_occurrences(g, spec, strict), None)


@dataclass
class Violation:
    pattern: str
    embedding: Embedding

    def to_dict(self) -> dict:
        return {"pattern": self.pattern, "vertices": list(self.embedding.mapping)}


def audit_forbidden(g: Graph, delta: int, strict: bool = True) -> list[Violation]:
    """First occurrence of each forbidden pattern of the given maximum degree.

    ``strict=False`` reports every degree-matched induced copy, including those that are not
    lemma configurations.
    """
    out = []
    for spec in forbidden_patterns(delta):
        emb = find_occurrence(g, spec, strict)
        if emb is not None:
            out.append(Violation(spec.name, emb))
    return out


def splice(host: Graph, emb: Embedding, spec: PatternSpec) -> Graph:
    """Replace the occurrence ``emb`` of ``spec.pattern`` by ``spec.replacement``.

    The external neighbours of each pattern vertex are dealt out to the replacement in the
    order given by ``spec.rewire``. When a vertex carries several stubs, the first ordering of
    its external neighbours that yields a simple graph is used.
    """
    if spec.replacement is None:
        raise InputError(f"{spec.name} has no replacement")
    if len(spec.rewire) != sum(spec.stubs) or spec.replacement.n != spec.pattern.n:
        raise ConsistencyError(f"{spec.name}: port arity of the replacement does not match")
    image = emb.mapping
    inside = set(image)
    for i, j in spec.pattern.edges():
        if not host.has_edge(image[i], image[j]):
            raise ConsistencyError(f"{spec.name}: embedding misses a pattern edge")
    ext = [sorted(u for u in host.adj[h] if u not in inside) for h in image]
    if tuple(len(e) for e in ext) != spec.stubs:
        raise ConsistencyError(f"{spec.name}: host stubs do not match the pattern ports")
    keep = [(u, v) for u, v in host.edges() if u not in inside and v not in inside]
    internal = [(image[i], image[j]) for i, j in spec.replacement.edges()]
    for orders in itertools.product(*(itertools.permutations(e) for e in ext if e)):
        flat = [u for order in orders for u in order]
        new = {(min(image[j], u), max(image[j], u)) for j, u in zip(spec.rewire, flat)}
        if len(new) == len(flat) and not new & set(internal):
            return graph_from_edges(host.n, keep + internal + sorted(new))
    raise ConsistencyError(f"{spec.name}: no simple rewiring of the external edges exists")


def replacement_delta(host: Graph, emb: Embedding, spec: PatternSpec, tol: float = 1e-13) -> float:
    """``lambda_1`` after splicing in the replacement minus ``lambda_1`` of the host."""
    new = splice(host, emb, spec)
    return perron(new, tol).lambda1 - perron(host, tol).lambda1


# Hosts: a pattern with every port group completed by a tail.
def _tail3_single(edges: list, port: int, nxt: int, units: int) -> int:
    """Chain of ``units`` three-regular units hanging off ``port``; the last port keeps one free slot."""
    for _ in range(units):
        b, c1, c2, q = nxt, nxt + 1, nxt + 2, nxt + 3
        edges += [(port, b), (b, c1), (b, c2), (c1, c2), (c1, q), (c2, q)]
        port, nxt = q, nxt + 4
    return nxt


def _tail3_cap(edges: list, port: int, nxt: int, units: int) -> int:
    nxt = _tail3_single(edges, port, nxt, units)
    last = nxt - 1 if units else port
    pos = {v: nxt + i for i, v in enumerate(CAP3_5.vertices)}
    edges += [(pos[a], pos[b]) for a, b in CAP3_5.edges]
    edges.append((last, pos[CAP3_5.port]))
    return nxt + len(CAP3_5.vertices)


def _tail3_pair(edges: list, pair: tuple[int, int], nxt: int, units: int, cap: bool) -> int:
    a, b = pair
    s, t, r = nxt, nxt + 1, nxt + 2
    edges += [(a, s), (a, t), (b, s), (b, t), (s, r), (t, r)]
    return (_tail3_cap if cap else _tail3_single)(edges, r, nxt + 3, units)


def _tail4_pair(edges: list, pair: tuple[int, int], nxt: int, rungs: int) -> int:
    """``rungs`` pairs, each completely joined to the previous one, closed by an edge and a
    vertex of degree 2."""
    a, b = pair
    for _ in range(rungs):
        s, t = nxt, nxt + 1
        edges += [(a, s), (a, t), (b, s), (b, t)]
        a, b, nxt = s, t, nxt + 2
    edges += [(a, b), (a, nxt), (b, nxt)]
    return nxt + 1


def _tail4_split(edges: list, pair: tuple[int, int], nxt: int, rungs: int) -> int:
    """Each port of the pair gets its own neighbour; the two neighbours are adjacent and
    start a pair ladder."""
    a, b = pair
    r1, r2 = nxt, nxt + 1
    edges += [(a, r1), (b, r2), (r1, r2)]
    return _tail4_pair(edges, (r1, r2), nxt + 2, rungs)


def pattern_host(name: str, lengths: tuple[int, ...], cap: bool = False) -> tuple[Graph, Embedding]:
    """A connected host containing the named pattern on vertices ``0..k-1``.

    ``lengths[i]`` sets the size of the tail on port group ``i``. Tails keep the pair
    symmetry of every group, so twin ports carry equal Perron components. With ``cap`` the
    three-regular tails end in a closed cap instead of a vertex of degree 2.
    """
    spec = PATTERNS[name]
    if len(lengths) != len(spec.groups):
        raise InputError(f"{name} has {len(spec.groups)} port groups")
    edges = list(spec.pattern.edges())
    nxt = spec.pattern.n
    for grp, length in zip(spec.groups, lengths):
        st = spec.stubs[grp[0]]
        if spec.delta == 3 and len(grp) == 2 and st == 2:
            nxt = _tail3_pair(edges, grp, nxt, length, cap)
        elif spec.delta == 3 and len(grp) == 1 and st == 1:
            if length < 1 and not cap:
                raise InputError("an open single tail needs at least one unit")
            nxt = (_tail3_cap if cap else _tail3_single)(edges, grp[0], nxt, length)
        elif spec.delta == 4 and len(grp) == 2 and st == 2:
            nxt = _tail4_pair(edges, grp, nxt, length)
        elif spec.delta == 4 and len(grp) == 2 and st == 1:
            nxt = _tail4_split(edges, grp, nxt, length)
        else:  # pragma: no cover - table and builders are kept in step
            raise ConsistencyError(f"no tail builder for group {grp} of {name}")
    host = graph_from_edges(nxt, edges)
    return host, Embedding(tuple(range(spec.pattern.n)), frozenset())


# tail lengths (and cap flag) of the reference host per pattern
DEMO_HOSTS: dict[str, tuple[tuple[int, ...], bool]] = {
    "D1": ((4, 4), True),
    "D2": ((6, 1), False),
    "D3": ((7,), True),
    "D4": ((6,), True),
    "M1": ((12,), False),
    "M2": ((12,), False),
    "M3": ((12,), False),
    "M4": ((10, 2), False),
    "M5": ((10, 2), False),
    "M6": ((10, 2), False),
    "M7": ((10, 2), False),
}


def demo_host(name: str) -> tuple[Graph, Embedding]:
    lengths, cap = DEMO_HOSTS[name]
    return pattern_host(name, lengths, cap)


# Quadratic-form identities behind the replacement lemmas.
@dataclass
class IdentityReport:
    pattern: str
    embedding: Optional[tuple[int, ...]]
    hypothesis_met: bool
    residuals: dict[str, float] = field(default_factory=dict)
    gap: float = float("nan")
    rayleigh_gap: float = float("nan")
    note: str = ""

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def improves(self) -> bool:
        """Whether the test vector on the spliced graph certifies a larger ``lambda_1``."""
        return self.rayleigh_gap < self.gap

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "embedding": list(self.embedding) if self.embedding is not None else None,
            "hypothesis_met": self.hypothesis_met,
            "residuals": dict(self.residuals),
            "max_residual": self.max_residual,
            "gap": self.gap,
            "rayleigh_gap": self.rayleigh_gap,
            "improves": self.improves if self.hypothesis_met else None,
            "note": self.note,
        }


@dataclass(frozen=True)
class _IdentitySpec:
    # label -> pattern vertex names that must share a Perron component
    classes: dict[str, tuple[str, ...]]
    # values on the replacement: label -> (replacement vertex names, formula(lam, L))
    values: Callable[[float, dict], dict[str, tuple[tuple[str, ...], float]]]
    # cited identities: name -> residual, given (lam, L, R, extras)
    cited: Callable[[float, dict, dict, dict], dict[str, float]]
    # pattern vertices whose outside neighbours share one component, stored as label "x"
    outer: tuple[str, ...] = ()
    # the test vector is claimed to keep the Laplacian form
    keeps_laplacian: bool = False
    # replacement labels that solve the eigen-equations on the spliced graph
    solved: tuple[str, ...] = ()


def _rel(pred: dict, L: dict) -> dict[str, float]:
    return {f"relation_{k}": abs(v - L[k]) for k, v in pred.items()}


def poly_f(t):
    """Norm gain of the seven-coefficient test vector on the first replacement with a K4 core."""
    return np.polyval(F_COEFFS, t)


def poly_g(t):
    return np.polyval(G_COEFFS, t)


def poly_h(t):
    return np.polyval(H_COEFFS, t)


F_COEFFS = np.array([
    (21 - 14 * SQ2) / 16,
    (68 * SQ2 - 103) / 8,
    475 / 16 - 159 * SQ2 / 8 + SQ3 - SQ6 / 2,
    455 / 8 + 9 * SQ6 / 2 - 9 * SQ3 - 34 * SQ2,
    1181 * SQ2 / 8 + 19 * SQ3 - 21 * SQ6 / 2 - 3683 / 16,
    21 * SQ2 / 2 + 24 * SQ3 - 6 * SQ6 - 50,
    -260 * SQ2 - 80 * SQ3 + 32 * SQ6 + 451,
])
G_COEFFS = np.array([
    (23 - 16 * SQ2) / 16,
    (58 * SQ2 - 89) / 8,
    SQ3 - 9 * SQ2 / 2 - SQ6 / 2 + 173 / 16,
    7 * SQ6 / 2 - 8 * SQ3 - 56 * SQ2 + 661 / 8,
    275 * SQ2 / 4 + 12 * SQ3 - 7 * SQ6 / 2 - 2221 / 16,
    111 * SQ2 + 32 * SQ3 - 14 * SQ6 - 163,
    -136 * SQ2 - 64 * SQ3 + 16 * SQ6 + 321,
])
H_COEFFS = np.array([
    (10 - 7 * SQ2) / 2,
    32 * SQ2 - 48,
    (306 - 191 * SQ2) / 2,
    103 * SQ2 - 182,
    72 - 36 * SQ2,
])


def _m12_relations(lam, L):
    a = L["a"]
    return {
        "b": (lam - 2) / 2 * a,
        "c": (lam**2 - 2 * lam - 6) / 2 * a,
        "d": (lam**3 - 3 * lam**2 - 5 * lam + 8) / 4 * a,
    }


def m1_x(lam, a, constant_factor: float = 4.0):
    """Value on the four-vertex core of the first K4-core replacement.

    ``constant_factor=1`` is the printed form of the constant term; with it the square
    identity for ``x - y`` fails and ``x(4) != a``. The factor 4 restores both and agrees
    with the norm polynomial ``f``.
    """
    k = (SQ2 - 1) * a / 4
    return k * (-(lam**3) + 5 * lam**2 - (2 - SQ3) * (SQ3 - SQ2) * lam - constant_factor * (SQ6 - 1) * (SQ6 - SQ2))


def _m1_values(lam, L):
    k = (SQ2 - 1) * L["a"] / 4
    x = m1_x(lam, L["a"])
    y = k * (-(lam**3) + 5 * lam**2 + (SQ2 + 1) ** 2 * lam - 4 * SQ2 - 24)
    z = k * (-(lam**3) + (7 + 2 * SQ2) * lam**2 - (3 + 4 * SQ2) * lam - 32 - 12 * SQ2)
    return {"x": (("v1", "w1", "v2", "w2"), x), "y": (("v3", "w3"), y), "z": (("u1",), z)}


def _m1_cited(lam, L, R, ex):
    a, b, c, d = L["a"], L["b"], L["c"], L["d"]
    x, y, z = R["x"], R["y"], R["z"]
    out = _rel(_m12_relations(lam, L), L)
    out["square_xy"] = abs((x - y) ** 2 - 1.5 * (a - b) ** 2)
    out["square_yz"] = abs((y - z) ** 2 - (b - c) ** 2)
    out["square_zd"] = abs((z - d) ** 2 - 2 * (c - d) ** 2)
    out["norm_poly"] = abs(ex["norm2"] - 1 - poly_f(lam) * a * a)
    return out


def _m2_values(lam, L):
    a = L["a"]
    base = (1 - SQ2) * lam**3
    x = a / 4 * (base + (4 * SQ2 - 3) * lam**2 + (4 * SQ2 - SQ6 - 5) * lam - 16 * SQ2 + 4 * SQ6 + 8)
    y = a / 4 * (base + (4 * SQ2 - 3) * lam**2 + (4 * SQ2 - 5) * lam - 16 * SQ2 + 8)
    z = a / 4 * (base + (5 * SQ2 - 3) * lam**2 + (SQ2 - 5) * lam - 20 * SQ2 + 8)
    return {"x": (("v1", "w1", "v2", "w2"), x), "y": (("v3", "w3"), y), "z": (("v4", "w4"), z), "d": (("u1",), L["d"])}


def _m2_cited(lam, L, R, ex):
    out = _rel(_m12_relations(lam, L), L)
    out["norm_poly"] = abs(ex["norm2"] - 1 - poly_g(lam) * L["a"] ** 2)
    return out


def _m3_values(lam, L):
    k = (SQ2 - 1) / 2 * L["a"]
    x = k * (-(lam**2) + 5 * lam + 2 * SQ2 - 2)
    y = k * (-(lam**2) + (2 * SQ2 + 7) * lam - 10 - 6 * SQ2)
    return {"x": (("v1", "w1", "v2", "w2"), x), "y": (("u1", "v3", "w3"), y), "c": (("u2",), L["c"])}


def _m3_cited(lam, L, R, ex):
    a, b, c = L["a"], L["b"], L["c"]
    x, y = R["x"], R["y"]
    out = _rel({"b": (lam - 3) * a, "c": (lam**2 - 3 * lam - 2) / 2 * a}, L)
    out["square_xy"] = abs((x - y) ** 2 - (a - b) ** 2)
    out["square_yc"] = abs((y - c) ** 2 - 2 * (b - c) ** 2)
    out["norm_poly"] = abs(ex["norm2"] - 1 - poly_h(lam) * a * a)
    return out


def _m4_values(lam, L):
    a, d = L["a"], L["d"]
    den = lam**2 - lam - 2
    return {
        "a": (("v1", "w1"), a),
        "x": (("v2", "w2"), 2 * (lam * a + d) / den),
        "y": (("u1",), (4 * a + 2 * (lam - 1) * d) / den),
        "d": (("v3", "w3"), d),
    }


def _m4_cited(lam, L, R, ex):
    a, b, c, d = L["a"], L["b"], L["c"], L["d"]
    x, y = R["x"], R["y"]
    sx, sy = np.linalg.solve(np.array([[lam - 1, -1.0], [-2.0, lam]]), np.array([2 * a, 2 * d]))
    out = {"solve_x": abs(sx - x), "solve_y": abs(sy - y)}
    out["norm"] = abs(ex["norm2"] - (ex["xnorm2"] + 2 * x * x + y * y - b * b - 2 * c * c))
    gap = 4 - lam
    lap = 4 * (a - x) ** 2 + 2 * (x - y) ** 2 + 2 * (y - d) ** 2 - (2 * (a - b) ** 2 + 2 * (b - c) ** 2 + 4 * (c - d) ** 2)
    out["laplacian_change"] = abs(ex["lap_change"] - lap)
    out["bound_ratio"] = abs(
        (lap + gap) / ex["norm2"] - gap * ((lam - 2) ** 2 + 2 * (a * a - d * d) * gap) / ((lam - 2) ** 2 + 4 * (a * a - d * d))
    )
    return out


def _m5_relations(lam, L):
    a, h = L["a"], L["h"]
    den = lam**3 - 2 * lam**2 - 5 * lam + 2
    return {
        "b": (2 * (lam - 3) * (lam + 1) * a + 4 * h) / den,
        "c": 2 * ((lam - 1) * a + lam * h) / den,
        "d": (4 * a + (lam - 2) * (lam + 1) * h) / den,
    }


def _m5_values(lam, L):
    a, h = L["a"], L["h"]
    den = lam**3 - 2 * lam**2 - 5 * lam + 2
    return {
        "x": (("v2", "w2"), ((lam - 2) * (lam + 1) * a + 4 * h) / den),
        "y": (("v3", "w3"), 2 * (lam * a + (lam - 1) * h) / den),
        "z": (("u1",), (4 * a + 2 * (lam - 3) * (lam + 1) * h) / den),
    }


def _m6_relations(lam, L):
    x, y = L["x"], L["y"]
    den = lam**4 - 2 * lam**3 - 5 * lam**2 + 6 * lam + 4
    return {
        "a": (2 * (lam**3 - lam**2 - 4 * lam) * x + 2 * (lam + 2) * y) / den,
        "b": (2 * (2 * lam**2 - 2 * lam - 4) * x + 2 * (lam**2 + lam - 2) * y) / den,
        "c": (4 * lam * x + (lam**3 + lam**2 - 4 * lam - 4) * y) / den,
        "d": (8 * x + 2 * (lam**3 - lam**2 - 4 * lam + 2) * y) / den,
    }


def _m6_values(lam, L):
    x, y = L["x"], L["y"]
    den = lam**4 - 2 * lam**3 - 5 * lam**2 + 6 * lam + 4
    return {
        "al1": (("u1",), (2 * (lam**3 - lam**2 - 4 * lam + 2) * x + 8 * y) / den),
        "al2": (("v1", "w1"), ((lam**3 + lam**2 - 4 * lam - 4) * x + 4 * lam * y) / den),
        "al3": (("u2",), (2 * (lam**2 + lam - 2) * x + 2 * (2 * lam**2 - 2 * lam - 4) * y) / den),
        "al4": (("v2", "w2"), (2 * (lam + 2) * x + 2 * (lam**3 - lam**2 - 4 * lam) * y) / den),
        "y": (("v3", "w3"), y),
    }


def _m7_relations(lam, L):
    a, h = L["a"], L["h"]
    q = lam**2 - lam - 4
    return {
        "b": (2 * (lam**2 - lam - 2) * a + 2 * (lam + 2) * h) / (lam * q),
        "c": (2 * a + (lam + 2) * h) / q,
        "d": (4 * a + 2 * (lam**2 - 2) * h) / (lam * q),
    }


def _m7_values(lam, L):
    a, h = L["a"], L["h"]
    q = lam**2 - lam - 4
    return {
        "x": (("u1",), (2 * (lam**2 - 2) * a + 4 * h) / (lam * q)),
        "y": (("v2", "w2"), ((lam + 2) * a + 2 * h) / q),
        "z": (("u2",), (2 * (lam + 2) * a + 2 * (lam**2 - lam - 2) * h) / (lam * q)),
    }


def _d2_values(lam, L):
    s, t, e = L["s"], L["t"], L["e"]
    return {"s": (("p1", "p2"), s), "w": (("p3",), s + e - t)}


def _d2_cited(lam, L, R, ex):
    s, t, e = L["s"], L["t"], L["e"]
    return {"norm": abs(ex["norm2"] - ex["xnorm2"] - 2 * (s - t) * (s + e))}


def _d3_values(lam, L):
    a, b, c, d = L["a"], L["b"], L["c"], L["d"]
    return {"p": (("n1",), a + c - b), "r": (("n2", "n3"), a + d - b)}


def _d3_cited(lam, L, R, ex):
    a = L["a"]
    out = _rel(
        {"b": (lam - 1) * a, "c": (lam**2 - lam - 2) * a, "d": (lam**3 - lam**2 - 3 * lam + 1) / 2 * a}, L
    )
    poly = (lam**3 + 3 * lam**2 - lam - 8) * (lam**2 - 3 * lam + 1) * (lam - 2) - 3
    out["norm_poly"] = abs(ex["norm2"] - ex["xnorm2"] - a * a / 2 * poly)
    return out


_IDENTITIES: dict[str, _IdentitySpec] = {
    "D2": _IdentitySpec(
        {"s": ("p1",), "t": ("p2",), "e": ("p3", "p4"), "f": ("p5", "p6")}, _d2_values, _d2_cited, keeps_laplacian=True
    ),
    "D3": _IdentitySpec(
        {"a": ("n0", "n1"), "b": ("n2",), "c": ("n3",), "d": ("n4", "n5")}, _d3_values, _d3_cited, keeps_laplacian=True
    ),
    "M1": _IdentitySpec(
        {"a": ("u1", "v1", "w1"), "b": ("v2", "w2"), "c": ("v3", "w3"), "d": ("v4", "w4")},
        _m1_values, _m1_cited, keeps_laplacian=True,
    ),
    "M2": _IdentitySpec(
        {"a": ("u1", "v1", "w1"), "b": ("v2", "w2"), "c": ("v3", "w3"), "d": ("v4", "w4")},
        _m2_values, _m2_cited, keeps_laplacian=True,
    ),
    "M3": _IdentitySpec(
        {"a": ("v1", "w1", "v2", "w2"), "b": ("v3", "w3"), "c": ("v4", "w4")},
        _m3_values, _m3_cited, keeps_laplacian=True,
    ),
    "M4": _IdentitySpec(
        {"a": ("v1", "w1"), "b": ("u1",), "c": ("v2", "w2"), "d": ("v3", "w3")},
        _m4_values, _m4_cited, solved=("x", "y"),
    ),
    "M5": _IdentitySpec(
        {"a": ("v1", "w1"), "b": ("u1",), "c": ("v2", "w2"), "d": ("v3", "w3"), "h": ("v4", "w4")},
        _m5_values, lambda lam, L, R, ex: _rel(_m5_relations(lam, L), L), solved=("x", "y", "z"),
    ),
    "M6": _IdentitySpec(
        {"a": ("v1", "w1"), "b": ("u1",), "c": ("v2", "w2"), "d": ("u2",), "y": ("v3", "w3")},
        _m6_values, lambda lam, L, R, ex: _rel(_m6_relations(lam, L), L),
        outer=("v1", "w1"), solved=("al1", "al2", "al3", "al4"),
    ),
    "M7": _IdentitySpec(
        {"a": ("v1", "w1"), "b": ("u1",), "c": ("v2", "w2"), "d": ("u2",), "h": ("v3", "w3")},
        _m7_values, lambda lam, L, R, ex: _rel(_m7_relations(lam, L), L), solved=("x", "y", "z"),
    ),
}


def _measure(spec: PatternSpec, ident: _IdentitySpec, host: Graph, emb: Embedding, x: np.ndarray, tol: float):
    """Label values read off the Perron vector, or ``None`` if a class is not constant."""
    L = {}
    for label, vs in ident.classes.items():
        vals = [x[emb.mapping[spec.index(v)]] for v in vs]
        if max(vals) - min(vals) > tol:
            return None
        L[label] = float(np.mean(vals))
    if ident.outer:
        inside = set(emb.mapping)
        vals = [x[u] for v in ident.outer for u in host.adj[emb.mapping[spec.index(v)]] if u not in inside]
        if not vals or max(vals) - min(vals) > tol:
            return None
        L["x"] = float(np.mean(vals))
    return L


def _identity_report(host: Graph, emb: Embedding, spec: PatternSpec, delta: int, tol: float, pd) -> Optional[IdentityReport]:
    ident = _IDENTITIES[spec.name]
    x = pd.x
    lam = pd.lambda1
    L = _measure(spec, ident, host, emb, x, tol)
    if L is None:
        return None
    new = splice(host, emb, spec)
    rnames = spec.replacement_names
    y = x.copy()
    R = {}
    placed = {}
    for label, (vs, val) in ident.values(lam, L).items():
        R[label] = val
        for v in vs:
            h = emb.mapping[rnames.index(v)]
            y[h] = val
            placed[h] = label
    # labels the replacement inherits unchanged from the pattern side
    for label in ("a", "b", "c", "d", "h", "y"):
        if label in L and label not in R:
            R[label] = L[label]
    x_lap = host.laplacian_form(x)
    y_lap = new.laplacian_form(y)
    ex = {"norm2": float(y @ y), "xnorm2": float(x @ x), "lap_change": y_lap - x_lap}
    res = dict(ident.cited(lam, L, R, ex))
    if ident.keeps_laplacian:
        res["laplacian"] = abs(y_lap - x_lap)
    if ident.solved:
        free = sorted(h for h, lab in placed.items() if lab in ident.solved)
        idx = {h: i for i, h in enumerate(free)}
        m = np.zeros((len(free), len(free)))
        rhs = np.zeros(len(free))
        for h in free:
            i = idx[h]
            m[i, i] = lam
            for u in new.adj[h]:
                if u in idx:
                    m[i, idx[u]] -= 1.0
                else:
                    rhs[i] += y[u]
        sol = np.linalg.solve(m, rhs)
        for h in free:
            res[f"solved_{placed[h]}"] = max(res.get(f"solved_{placed[h]}", 0.0), abs(sol[idx[h]] - y[h]))
    slack = delta - np.array(new.degrees(), dtype=float)
    rq = (float(slack @ (y * y)) + y_lap) / float(y @ y)
    x_slack = delta - np.array(host.degrees(), dtype=float)
    gap = (float(x_slack @ (x * x)) + x_lap) / float(x @ x)
    return IdentityReport(spec.name, emb.mapping, True, res, gap, rq)


def _m1_note(lam, host, emb, spec, x) -> str:
    a = x[emb.mapping[spec.index("u1")]]
    b = x[emb.mapping[spec.index("v2")]]
    y = _m1_values(lam, {"a": a})["y"][1]
    r = abs((m1_x(lam, a, 1.0) - y) ** 2 - 1.5 * (a - b) ** 2)
    return f"printed constant term of x gives square_xy residual {r:.3e}; the factor-4 constant is used"


def quadratic_form_identities(host: Graph, delta: Optional[int] = None, tol: float = LABEL_TOL,
                              max_embeddings: int = 200) -> list[IdentityReport]:
    """Evaluate the replacement identities at every tabulated pattern found in ``host``.

    For each pattern the occurrences are scanned until one carries the equal-label classes
    of the drawing within ``tol``. Patterns absent from the host are skipped; an occurrence
    whose labels never line up is reported with ``hypothesis_met=False``.
    """
    delta = host.max_degree() if delta is None else delta
    pd = perron(host, 1e-13)
    out = []
    for spec in forbidden_patterns(delta):
        if spec.name not in _IDENTITIES:
            continue
        first = None
        rep = None
        for count, emb in enumerate(iter_occurrences(host, spec)):
            if count >= max_embeddings:
                break
            first = first or emb
            rep = _identity_report(host, emb, spec, delta, tol, pd)
            if rep is not None:
                if spec.name == "M1":
                    rep.note = _m1_note(pd.lambda1, host, emb, spec, pd.x)
                break
        if rep is None and first is not None:
            rep = IdentityReport(spec.name, first.mapping, False, note="equal-label classes not constant on this host")
        if rep is not None:
            out.append(rep)
    return out


# Sign suites
@dataclass
class SignReport:
    polynomial: str
    claim: str
    interval: tuple[float, float]
    samples: int
    min_value: float
    claim_holds: bool

    def to_dict(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "claim": self.claim,
            "interval": list(self.interval),
            "samples": self.samples,
            "min_value": self.min_value,
            "claim_holds": self.claim_holds,
        }


def _open_grid(lo: float, hi: float, samples: int) -> np.ndarray:
    return np.linspace(lo, hi, samples + 2)[1:-1]


def _point(name, fn, t, sign) -> SignReport:
    v = float(fn(t))
    if sign == 0:
        return SignReport(name, f"{name}({t:g}) = 0", (t, t), 1, -abs(v), abs(v) <= ZERO_TOL)
    rel = ">" if sign > 0 else "<"
    return SignReport(name, f"{name}({t:g}) {rel} 0", (t, t), 1, sign * v, sign * v > 0)


def _interval(name, fn, lo, hi, samples=1000) -> SignReport:
    vals = fn(_open_grid(lo, hi, samples))
    m = float(np.min(vals))
    return SignReport(name, f"{name} > 0 on ({lo:g}, {hi:g})", (lo, hi), samples, m, m > 0)


def delta3_pair_coefficients(lam):
    """Coefficients of ``x_{3k}^2`` and ``x_1^2`` in ``f - g`` for the cubic end comparison.

    Both lower bound ``f`` and upper bound ``g`` are linear in the two squares, so
    ``g < f`` for every admissible vector exactly when both coefficients are positive.
    """
    lam = np.asarray(lam, dtype=float)
    a = (4 * lam**5 - 8 * lam**4 - 31 * lam**3 - 4 * lam**2 + 75 * lam + 78) / (4 * (lam + 1) * (lam - 2))
    b = (lam**3 - 4 * lam**2 - 5 * lam + 6) / ((3 - lam) * (lam - 1) ** 2 * (lam - 2))
    c = (lam + 2) * (2 * lam**3 - 2 * lam**2 - 3 * lam - 3) / (4 * (lam + 1) * (lam - 2))
    d = (2 * lam**5 - 7 * lam**4 + 13 * lam**3 - 23 * lam**2 + 13 * lam - 6) / (
        (lam - 3) ** 2 * (lam + 1) * (lam - 1) ** 2 * (lam - 2)
    )
    # f = -a X + b Y,  g = c X - d Y
    return -a - c, b + d


def d3_norm_poly(lam):
    return (lam**3 + 3 * lam**2 - lam - 8) * (lam**2 - 3 * lam + 1) * (lam - 2) - 3


def polynomial_suite(samples: int = 1000, pair_samples: int = 500) -> list[SignReport]:
    out: list[SignReport] = []
    suites = [
        ("f", poly_f, [(0, 1), (2, -1), (3.5, 1), (5, -1), (7, 1), (4, 0)], (3.5, 4.0)),
        ("g", poly_g, [(0, 1), (3, -1), (3.7, 1), (5, -1), (32, 1), (4, 0)], (3.7, 4.0)),
        ("h", poly_h, [(0, 1), (2, -1), (3, 1), (5, -1), (50, 1), (4, 0)], (3.0, 4.0)),
    ]
    for name, fn, points, (lo, hi) in suites:
        out += [_point(name, fn, t, s) for t, s in points]
        out.append(_interval(name, fn, lo, hi, samples))
    grid = _open_grid(2.8, 3.0, pair_samples)
    cx, cy = delta3_pair_coefficients(grid)
    m = float(min(cx.min(), cy.min()))
    out.append(SignReport("f3-g3", "g < f on (2.8, 3), both square coefficients of f - g positive",
                          (2.8, 3.0), pair_samples, m, m > 0))
    out.append(_interval("d3_norm", d3_norm_poly, 2.8, 3.0, pair_samples))
    return out
