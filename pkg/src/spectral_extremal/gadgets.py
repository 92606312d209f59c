"""Static edge tables for the end caps and repeating units of the Δ=3 and Δ=4 extremal chains.

Each cap lists its vertex names in the order they are numbered and names the port, a cut
vertex of degree 2 where the chain continues. A unit hangs off the current port and
exposes a new port. The counts are pinned in ``tests/test_gadgets.py``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Gadget:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    port: str


def _g(vertices: str, edges: str, port: str) -> Gadget:
    es = tuple(tuple(e.split("-")) for e in edges.split())
    return Gadget(tuple(vertices.split()), es, port)


# Δ = 3: the diamond K4 - v2w2 with u1 joined to its two degree-2 vertices
CAP3_5 = _g("v1 w1 v2 w2 u1", "v1-v2 v2-u1 u1-w2 w2-w1 w1-v1 v1-w2 v2-w1", "u1")

# Δ = 3: six degree-3 vertices closing a ladder, u1 joined to the two right corners
CAP3_7 = _g(
    "v1 w1 v2 w2 v3 w3 u1",
    "v1-v2 v2-v3 v3-u1 u1-w3 w3-w2 w2-w1 w1-v1 v1-w2 v2-w1 v3-w3",
    "u1",
)

# Δ = 3 repeating unit: port P - b, b - c1, b - c2, c1 - c2, c1 - P', c2 - P'
UNIT3 = _g("P b c1 c2 Q", "P-b b-c1 b-c2 c1-c2 c1-Q c2-Q", "Q")

# Δ = 4 caps, keyed by n mod 5
CAP4 = {
    0: _g(
        "u1 v1 w1 v2 w2 v3 w3 v4 w4 u2",
        "u1-v1 v1-v2 v2-v3 v3-v4 v4-u2 u2-w4 w4-w3 w3-w2 w2-w1 w1-u1 "
        "u1-v2 v2-w1 w1-v1 v1-w2 w2-u1 v3-w3 w3-v4 v4-w4 w4-v3",
        "u2",
    ),
    1: _g(
        "u1 v1 w1 v2 w2 u2",
        "u1-v1 v1-v2 v2-u2 u2-w2 w2-w1 w1-u1 u1-v2 v2-w1 w1-v1 v1-w2 w2-u1",
        "u2",
    ),
    2: _g(
        "v1 w1 v2 w2 v3 w3 u1",
        "v1-v2 v2-v3 v3-u1 u1-w3 w3-w2 w2-w1 w1-v1 v1-v3 v3-w3 w3-w1 w1-v2 v2-w2 w2-v1",
        "u1",
    ),
    3: _g(
        "v1 w1 v2 w2 u1 v3 w3 u2",
        "v1-v2 v2-v3 v3-u2 u2-w3 w3-w2 w2-w1 w1-v1 v1-u1 u1-w1 w1-v2 v2-w2 w2-v1 "
        "v3-u1 u1-w3 w3-v3",
        "u2",
    ),
    4: _g(
        "v1 w1 v2 w2 v3 w3 v4 w4 u1",
        "v1-v2 v2-v3 v3-v4 v4-u1 u1-w4 w4-w3 w3-w2 w2-w1 w1-v1 v1-w2 w2-v2 v2-w1 "
        "w1-w3 w3-v4 v4-w4 w4-v3 v3-v1",
        "u1",
    ),
}

# Δ = 4 repeating unit: a K4 on {s, t, s2, t2}, port P joined to s, t and the new port to s2, t2
UNIT4 = _g("P s t s2 t2 Q", "P-s P-t s-t s-s2 s-t2 t-s2 t-t2 s2-t2 s2-Q t2-Q", "Q")
