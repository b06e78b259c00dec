"""Union-find components and group actions on them."""
import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charposet.errors import ActionNotCompatible
from charposet.gamma import s_component_action, s_poset
from charposet.poset import action_on_components, components
from util import cached_group


def test_components_trivial_cases():
    assert components(3, [(0, 1), (1, 2)]).count == 1
    assert components(0, []).count == 0
    part = components(5, [(0, 1), (2, 3)])
    assert part.count == 3
    assert sorted(part.component_sizes) == [1, 2, 2]


def test_component_numbering_is_canonical():
    part = components(6, [(4, 5), (1, 2)])
    # ids are assigned by minimum contained node
    assert part.component_of[0] == 0
    assert part.component_of[1] == part.component_of[2] == 1
    assert part.component_of[3] == 2
    assert part.component_of[4] == part.component_of[5] == 3
    assert part.representatives == (0, 1, 3, 4)


@given(st.integers(1, 40), st.data())
@settings(max_examples=60)
def test_components_against_networkx(n, data):
    edges = data.draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        max_size=60))
    part = components(n, edges)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    oracle = list(nx.connected_components(g))
    assert part.count == len(oracle)
    for comp in oracle:
        ids = {part.component_of[v] for v in comp}
        assert len(ids) == 1


def test_action_p_group_is_trivial():
    G = cached_group("D(4)")
    spos = s_poset(G, 2, 0)
    act = s_component_action(spos)
    assert len(act.orbit) == 1
    assert act.stabilizer.order == G.order


def test_action_a5_orbit_and_stabilizer():
    spos = s_poset(cached_group("A(5)"), 2, 0)
    act = s_component_action(spos)
    assert len(act.orbit) == 5
    assert act.stabilizer.order == 12


def test_action_sl23_orbit_and_stabilizer():
    spos = s_poset(cached_group("SL(2,3)"), 3, 0)
    act = s_component_action(spos)
    assert len(act.orbit) == 4
    assert act.stabilizer.order == 6


def test_orbit_stabilizer_identity_across_catalog():
    for text, p in [("S(4)", 2), ("S(4)", 3), ("A(4)", 3), ("PSL(2,5)", 5),
                    ("SL(2,3)", 2), ("Q(16)", 2)]:
        G = cached_group(text)
        spos = s_poset(G, p, 0)
        act = s_component_action(spos)
        assert len(act.orbit) * act.stabilizer.order == G.order


def test_incompatible_action_rejected():
    G = cached_group("C(2)")
    part = components(2, [])
    # the identity element must act as the identity map
    bad = [(1, 0), (0, 1)]
    with pytest.raises(ActionNotCompatible):
        action_on_components(G, part, bad)


def test_non_permutation_rejected():
    G = cached_group("C(2)")
    part = components(2, [])
    with pytest.raises(ActionNotCompatible):
        action_on_components(G, part, [(0, 0), (0, 0)])
