import pytest

from spectral_extremal.gadgets import CAP3_5, CAP3_7, CAP4, UNIT3, UNIT4, Gadget


def _degrees(g: Gadget) -> dict[str, int]:
    deg = {v: 0 for v in g.vertices}
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    return deg


@pytest.mark.parametrize(
    "gad, nv, ne",
    [
        (CAP3_5, 5, 7),
        (CAP3_7, 7, 10),
        (UNIT3, 5, 6),
        (CAP4[0], 10, 19),
        (CAP4[1], 6, 11),
        (CAP4[2], 7, 13),
        (CAP4[3], 8, 15),
        (CAP4[4], 9, 17),
        (UNIT4, 6, 10),
    ],
)
def test_counts(gad, nv, ne):
    assert len(gad.vertices) == nv
    assert len(set(gad.vertices)) == nv
    assert len({frozenset(e) for e in gad.edges}) == ne
    assert all(a != b and a in gad.vertices and b in gad.vertices for a, b in gad.edges)


@pytest.mark.parametrize("gad, delta", [(CAP3_5, 3), (CAP3_7, 3)] + [(c, 4) for c in CAP4.values()])
def test_caps_are_saturated_except_the_port(gad, delta):
    deg = _degrees(gad)
    # the port takes one chain edge for delta 3 and two for delta 4
    assert deg[gad.port] == delta - (1 if delta == 3 else 2)
    assert all(d == delta for v, d in deg.items() if v != gad.port)


def test_units_saturate_their_interior():
    for unit, delta in ((UNIT3, 3), (UNIT4, 4)):
        deg = _degrees(unit)
        inner = [v for v in unit.vertices if v not in ("P", "Q")]
        assert all(deg[v] == delta for v in inner)
        assert deg["P"] + deg["Q"] == delta
