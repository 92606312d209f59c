"""Builders for the extremal chains, the spine graphs ``G^p_{Δ,k-1}``, the coalescence
families, degree-sequence realisations, and the trigonometric test vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError, InputError
from .gadgets import CAP3_5, CAP3_7, CAP4, UNIT3, UNIT4, Gadget
from .graph import Graph, coalesce, components, graph_from_edges, is_connected
from .switching import SwitchMove, local_switch


# chains assembled from gadgets
class _Chain:
    def __init__(self, cap: Gadget):
        self.index: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.port = self._place(cap, None)

    def _place(self, gad: Gadget, port: int | None) -> int:
        local = {}
        for name in gad.vertices:
            if name == "P" and port is not None:
                local[name] = port
            else:
                local[name] = len(self.index)
                self.index[f"{name}#{len(self.index)}"] = local[name]
        self.edges += [(local[a], local[b]) for a, b in gad.edges]
        return local[gad.port]

    def add_unit(self, unit: Gadget) -> None:
        self.port = self._place(unit, self.port)

    def add_pendant(self) -> None:
        v = len(self.index)
        self.index[f"pendant#{v}"] = v
        self.edges.append((self.port, v))

    def graph(self) -> Graph:
        return graph_from_edges(len(self.index), self.edges)


def extremal_delta3(n: int, allow_small: bool = False) -> Graph:
    """The chain of diamonds that maximises ``lambda_1`` among connected nonregular graphs
    of maximum degree 3 on ``n`` vertices.

    Cap by ``n mod 4`` (5-vertex cap for residues 1, 2; 7-vertex cap for 3, 0), then
    four-vertex units, then a pendant vertex for even ``n``. Vertices are numbered along the
    chain from the cap. ``allow_small`` also builds the unit-free instances ``n = 5, 6, 7``.
    """
    lo = 5 if allow_small else 8
    if n < lo:
        raise CapabilityError(f"extremal_delta3 needs n >= {lo}, got {n}")
    r = n % 4
    cap = CAP3_5 if r in (1, 2) else CAP3_7
    pendant = r in (2, 0)
    units = (n - len(cap.vertices) - int(pendant)) // 4
    ch = _Chain(cap)
    for _ in range(units):
        ch.add_unit(UNIT3)
    if pendant:
        ch.add_pendant()
    g = ch.graph()
    assert g.n == n
    return g


CAP4_SIZE = {r: len(g.vertices) for r, g in CAP4.items()}


def extremal_delta4(n: int, allow_small: bool = False) -> Graph:
    """Δ=4 analogue: a cap chosen by ``n mod 5`` followed by K4 units of five vertices.

    ``allow_small`` also builds the unit-free caps on 6 to 9 vertices.
    """
    lo = 6 if allow_small else 10
    if n < lo:
        raise CapabilityError(f"extremal_delta4 needs n >= {lo}, got {n}")
    cap = CAP4[n % 5]
    units = (n - len(cap.vertices)) // 5
    ch = _Chain(cap)
    for _ in range(units):
        ch.add_unit(UNIT4)
    g = ch.graph()
    assert g.n == n
    return g


# parameters of the coalescence families
@dataclass(frozen=True)
class FamilySpec:
    delta: int
    n: int
    k: int
    alpha: int
    p: int

    @classmethod
    def from_order(cls, delta: int, n: int) -> "FamilySpec":
        """Split ``n = k(Δ+1) + α`` with ``1 <= α <= Δ+1``.

        When ``Δ+1`` divides ``n`` the remainder is taken as ``α = Δ+1``, which lowers
        ``k`` by one relative to ``n/(Δ+1)``.
        """
        if delta < 3:
            raise InputError("delta must be at least 3")
        r = n % (delta + 1)
        alpha = r if r > 0 else delta + 1
        k = (n - alpha) // (delta + 1)
        p = delta - 1 if delta % 2 else delta - 2
        return cls(delta, n, k, alpha, p)

    @classmethod
    def from_k(cls, delta: int, k: int, alpha: int = 1) -> "FamilySpec":
        return cls.from_order(delta, k * (delta + 1) + alpha)

    @property
    def residue_class(self) -> tuple[int, int]:
        return self.delta % 2, self.n % 2


def g_family(delta: int, k: int, p: int) -> Graph:
    """``G^p_{Δ,k-1}``: spine vertices ``u_1..u_k`` threaded through ``k-1`` copies of ``K_Δ``.

    ``u_i`` (index ``i-1``) is joined to the first ``p`` vertices of clique ``i`` and to the
    last ``Δ-p`` vertices of clique ``i-1``. Clique ``i`` occupies indices
    ``k + (i-1)Δ .. k + iΔ - 1``.
    """
    if delta < 2 or k < 2 or not (1 <= p <= delta - 1):
        raise InputError(f"invalid parameters delta={delta}, k={k}, p={p}")
    n = k * (delta + 1) - delta
    edges = []

    def clique(i: int) -> list[int]:
        base = k + (i - 1) * delta
        return list(range(base, base + delta))

    for i in range(1, k):
        c = clique(i)
        edges += [(a, b) for x, a in enumerate(c) for b in c[x + 1 :]]
        edges += [(i - 1, v) for v in c[:p]]
        edges += [(i, v) for v in c[p:]]
    return graph_from_edges(n, edges)


# degree sequences
def is_graphic(seq) -> bool:
    """Erdős–Gallai test."""
    d = sorted((int(x) for x in seq), reverse=True)
    if any(x < 0 for x in d) or sum(d) % 2:
        return False
    n = len(d)
    prefix = 0
    for r in range(1, n + 1):
        prefix += d[r - 1]
        tail = sum(min(x, r) for x in d[r:])
        if prefix > r * (r - 1) + tail:
            return False
    return True


def havel_hakimi(seq) -> Graph:
    """Deterministic Havel–Hakimi realisation; vertex ``i`` receives degree ``seq[i]``."""
    if not is_graphic(seq):
        raise InputError(f"sequence {list(seq)} is not graphic")
    rem = [int(x) for x in seq]
    edges = []
    while True:
        order = sorted(range(len(rem)), key=lambda v: (-rem[v], v))
        v = order[0]
        if rem[v] == 0:
            break
        targets = order[1 : rem[v] + 1]
        for u in targets:
            edges.append((v, u))
            rem[u] -= 1
        rem[v] = 0
    return graph_from_edges(len(rem), edges)


def _non_bridge_edge(g: Graph, comp: list[int]) -> tuple[int, int] | None:
    cs = set(comp)
    sub_edges = [(u, v) for u, v in g.edges() if u in cs]
    for e in sub_edges:
        h = g.with_edges(remove=[e])
        if e[1] in _reach(h, e[0]):
            return e
    return None


def _reach(g: Graph, s: int) -> set[int]:
    seen = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def realize_connected(seq) -> Graph:
    """Connected realisation of a nonincreasing graphic sequence with ``d_{n-1} >= 2``, ``d_n >= 1``.

    Havel–Hakimi first; then, while disconnected, take a non-bridge edge ``u1 v1`` in a
    component of minimum degree at least 2 and any edge ``u2 v2`` of another component and
    switch them to ``u1 u2``, ``v1 v2``, which merges the two components.
    """
    seq = [int(x) for x in seq]
    if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
        raise InputError("sequence must be nonincreasing")
    if not is_graphic(seq):
        raise InputError(f"sequence {seq} is not graphic")
    if len(seq) >= 2 and (seq[-2] < 2 or seq[-1] < 1):
        raise CapabilityError("connected realisation needs d_{n-1} >= 2 and d_n >= 1")
    g = havel_hakimi(seq)
    while not is_connected(g):
        comps = components(g)
        degs = g.degrees()
        first = next(c for c in comps if min(degs[v] for v in c) >= 2)
        other = next(c for c in comps if c is not first)
        u1, v1 = _non_bridge_edge(g, first)
        u2 = other[0]
        v2 = g.adj[u2][0]
        g = local_switch(g, SwitchMove(s=u1, t=v1, v=u2, u=v2))
    return g


def near_regular_sequence(delta: int, m: int, i: int) -> list[int]:
    """``(Δ, ..., Δ, Δ - i)`` of length ``m``."""
    return [delta] * (m - 1) + [delta - i]


def h_family(delta: int, n: int) -> Graph:
    """Member of the coalescence family on ``n`` vertices.

    Odd Δ, odd n: ``G^{Δ-1} ⊙ F`` at ``u_k`` with ``F`` realising ``(Δ,…,Δ,Δ-1)`` on
    ``Δ+α+1`` vertices. Odd Δ, even n: ``F`` on ``Δ+α`` vertices plus a pendant vertex at
    ``u_1``. Even Δ: ``G^{Δ-2} ⊙ F`` with ``F`` realising ``(Δ,…,Δ,Δ-2)`` on ``Δ+α+1``
    vertices. ``F`` is the deterministic output of ``realize_connected`` and is glued at its
    low-degree vertex. Numbering: spine, cliques, ``F``, then the pendant.
    """
    spec = FamilySpec.from_order(delta, n)
    if spec.k < 2:
        raise InputError(f"n={n} gives k={spec.k}; need k >= 2")
    d, k, a, p = spec.delta, spec.k, spec.alpha, spec.p
    pendant = d % 2 == 1 and n % 2 == 0
    if d % 2:
        f_order = d + a if pendant else d + a + 1
        f = realize_connected(near_regular_sequence(d, f_order, 1))
    else:
        f = realize_connected(near_regular_sequence(d, d + a + 1, 2))
    g = coalesce(g_family(d, k, p), k - 1, f, f.n - 1)
    if pendant:
        g = graph_from_edges(g.n + 1, g.edges() + [(0, g.n)])
    assert g.n == n
    return g


# test vectors and the closed-form bound
@dataclass(frozen=True)
class TestVector:
    z: np.ndarray
    a: np.ndarray
    b: np.ndarray
    f_value: float

    __test__ = False  # keep pytest from collecting this class


def z_values(k: int) -> np.ndarray:
    j = np.arange(1, k + 1)
    return np.sin((2 * j - 1) * math.pi / (4 * k))


def test_vector(spec: FamilySpec) -> TestVector:
    d, p = spec.delta, spec.p
    z = z_values(spec.k)
    a = ((p + 1) * z[:-1] + (d - p) * z[1:]) / (d + 1)
    b = (p * z[:-1] + (d + 1 - p) * z[1:]) / (d + 1)
    return TestVector(z, a, b, float(z[-1]))


test_vector.__test__ = False


def assembled_vector(spec: FamilySpec, g: Graph | None = None) -> np.ndarray:
    """The test vector laid out on the vertices of ``h_family(spec.delta, spec.n)``.

    Spine ``u_j`` gets ``z_j``; the ``p`` vertices of clique ``j`` joined to ``u_j`` get
    ``a_j`` and the rest ``b_j``; ``F`` gets ``z_k``; the pendant vertex, if any, gets 0,
    which leaves the quotient identical to the pendant-free graph's.
    """
    tv = test_vector(spec)
    d, k, p = spec.delta, spec.k, spec.p
    y = np.full(spec.n, tv.f_value)
    y[:k] = tv.z
    for i in range(1, k):
        base = k + (i - 1) * d
        y[base : base + p] = tv.a[i - 1]
        y[base + p : base + d] = tv.b[i - 1]
    if d % 2 == 1 and spec.n % 2 == 0:
        y[-1] = 0.0
    return y


def trig_sums(k: int) -> dict[str, float]:
    """Closed forms of the three sums used to simplify the bound.

    ``sum_sq`` is ``k/2``: the cosines ``cos((2j-1)π/2k)`` cancel in pairs. The value
    ``(k+1)/2`` that is sometimes quoted overstates the denominator, and the resulting bound
    then drops below the Rayleigh quotient it is meant to dominate.
    """
    return {
        "sum_diff_sq": 2 * (k - 1) * math.sin(math.pi / (4 * k)) ** 2,
        "sum_sq": k / 2,
        "sum_adjacent": (k - 1) / 2 * math.cos(math.pi / (2 * k)),
    }


def gap_upper_closed_form(spec: FamilySpec) -> float:
    """Closed-form upper bound on ``Δ - λ_1`` for the coalescence family."""
    d, p, k = spec.delta, spec.p, spec.k
    if k < 2:
        raise InputError("need k >= 2")
    s = trig_sums(k)
    z1 = math.sin(math.pi / (4 * k))
    num = (d - p) * (d + 1) ** 2 * z1**2 + p * (d - p) * (d + 1) * s["sum_diff_sq"]
    coeff = d**3 - (2 * p - 3) * d**2 + (2 * p * p - 4 * p + 3) * d + 4 * p * p + 1
    den = coeff * s["sum_sq"] + 2 * p * (d - p) * (d + 2) * s["sum_adjacent"]
    return num / den


def gap_upper_rayleigh_form(spec: FamilySpec) -> float:
    """The unsimplified quotient, before the sums over ``a_j``, ``b_j`` are expanded."""
    tv = test_vector(spec)
    d, p, a = spec.delta, spec.p, spec.alpha
    z = tv.z
    num = (d - p) * z[0] ** 2 + p * (d - p) / (d + 1) * float(np.sum(np.diff(z) ** 2))
    f_extra = d + a - 1 if (d % 2 == 1 and spec.n % 2 == 0) else d + a
    den = f_extra * z[-1] ** 2 + float(z @ z) + p * float(tv.a @ tv.a) + (d - p) * float(tv.b @ tv.b)
    return num / den
