import numpy as np
import pytest

from spectral_extremal.constructions import extremal_delta3, extremal_delta4
from spectral_extremal.errors import InputError
from spectral_extremal.graph import graph_from_edges, is_connected, path_graph
from spectral_extremal.spectral import perron
from spectral_extremal.switching import (
    RotationMove,
    SwitchMove,
    improving_search,
    is_proper_switch,
    iter_rotations,
    iter_switches,
    local_switch,
    rotate,
    rotation_is_valid,
    switch_is_valid,
)

from conftest import random_connected


def test_switch_validity_and_effect():
    # two disjoint edges uv = (1, 0) and st = (2, 3)
    g = graph_from_edges(4, [(0, 1), (2, 3)])
    m = SwitchMove(s=2, t=3, v=0, u=1)
    assert switch_is_valid(g, m)
    h = local_switch(g, m)
    assert sorted(h.edges()) == [(0, 2), (1, 3)]
    assert not switch_is_valid(g, SwitchMove(2, 3, 0, 0))
    with pytest.raises(InputError):
        local_switch(g, SwitchMove(0, 2, 1, 3))


def test_rotation_validity_and_effect():
    g = path_graph(4)
    m = RotationMove(u=1, v=0, w=3)
    assert rotation_is_valid(g, m)
    assert sorted(rotate(g, m).edges()) == [(1, 2), (1, 3), (2, 3)]
    assert not rotation_is_valid(g, RotationMove(1, 2, 0))
    with pytest.raises(InputError):
        rotate(g, RotationMove(0, 2, 3))


def test_iterators_yield_only_valid_moves(rng):
    g = random_connected(rng, 9, 0.3)
    sw = list(iter_switches(g))
    assert sw and all(switch_is_valid(g, m) for m in sw)
    assert sw == sorted(sw, key=lambda m: (m.s, m.t, m.v, m.u))
    assert all(rotation_is_valid(g, m) for m in iter_rotations(g))


def test_switches_preserve_degrees_and_proper_ones_do_not_lose(rng):
    for _ in range(40):
        g = random_connected(rng, rng.randint(6, 16), 0.25)
        pd = perron(g, 1e-12)
        moves = list(iter_switches(g))
        if not moves:
            continue
        m = rng.choice(moves)
        h = local_switch(g, m)
        assert h.degrees() == g.degrees()
        if is_proper_switch(pd, m) and is_connected(h):
            assert perron(h, 1e-12).lambda1 >= pd.lambda1 - 1e-9


def test_exact_ties_count_as_proper():
    g = graph_from_edges(4, [(0, 1), (2, 3)])
    pd = type("P", (), {"x": np.ones(4)})()
    assert is_proper_switch(pd, SwitchMove(2, 3, 0, 1))


def test_improving_search_never_decreases(rng):
    for _ in range(5):
        g = random_connected(rng, 10, 0.2, max_deg=3)
        if g.max_degree() != 3 or min(g.degrees()) == 3:
            continue
        h = improving_search(g, 3, budget=50)
        assert perron(h).lambda1 >= perron(g).lambda1 - 1e-12
        assert h.max_degree() == 3 and min(h.degrees()) < 3 and is_connected(h)


def test_improving_search_fixed_points_on_extremal_graphs():
    for g, d in ((extremal_delta3(12), 3), (extremal_delta4(11), 4)):
        assert improving_search(g, d, budget=5) == g


def test_improving_search_rejects_bad_input():
    with pytest.raises(InputError):
        improving_search(path_graph(4), 3)
