"""Token-game engine: enabling, firing, exploration, witnesses, DOT export."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attacknets.petri import (Arc, Marking, NotEnabledError, PetriNet,
                              StateCapError, enabled, explore, find_path, fire,
                              to_dot, validate_net)
from oracles import assert_wellformed_dot, marking_keys, naive_reachable, random_net


def simple_net():
    return PetriNet("simple", ["p", "q"], ["t"], [Arc("p", "t"), Arc("t", "q")])


# ---------------------------------------------------------------- markings

def test_marking_drops_zero_counts():
    assert Marking({"a": 0, "b": 1}) == Marking({"b": 1})
    assert hash(Marking({"a": 0, "b": 1})) == hash(Marking({"b": 1}))


def test_marking_rejects_negative_counts():
    with pytest.raises(ValueError):
        Marking({"a": -1})


def test_marking_tokens_default_zero():
    m = Marking({"a": 2})
    assert m.tokens("a") == 2
    assert m.tokens("missing") == 0


# -------------------------------------------------------------- validation

def test_validate_accepts_wellformed_net():
    assert validate_net(simple_net()) == []


def test_validate_rejects_place_to_place_arc():
    net = PetriNet("bad", ["p", "q"], ["t"], [Arc("p", "q")])
    violations = validate_net(net)
    assert any("non-bipartite" in v for v in violations)


def test_validate_rejects_transition_to_transition_arc():
    net = PetriNet("bad", ["p"], ["t", "u"], [Arc("t", "u")])
    assert any("non-bipartite" in v for v in validate_net(net))


def test_validate_flags_shared_identifier():
    net = PetriNet("bad", ["x"], ["x"], [])
    assert any("both a place and a transition" in v for v in validate_net(net))


def test_validate_flags_undeclared_endpoint_and_duplicates():
    net = PetriNet("bad", ["p"], ["t"],
                   [Arc("p", "t"), Arc("p", "t"), Arc("ghost", "t")])
    violations = validate_net(net)
    assert any("duplicate arc" in v for v in violations)
    assert any("undeclared endpoint 'ghost'" in v for v in violations)


def test_validate_flags_bad_weight_read_flag_and_marking():
    net = PetriNet("bad", ["p"], ["t"],
                   [Arc("p", "t", weight=0), Arc("t", "p", read_only=True)],
                   Marking({"nowhere": 1}))
    violations = validate_net(net)
    assert any("weight" in v for v in violations)
    assert any("read arcs" in v for v in violations)
    assert any("undeclared place 'nowhere'" in v for v in violations)


# ------------------------------------------------------- enabling / firing

def test_enabled_single_transition():
    net = simple_net()
    assert enabled(net, Marking({"p": 1})) == {"t"}
    assert enabled(net, Marking()) == set()


def test_enabled_respects_weights():
    net = PetriNet("w", ["p"], ["t"], [Arc("p", "t", weight=2)])
    assert enabled(net, Marking({"p": 1})) == set()
    assert enabled(net, Marking({"p": 2})) == {"t"}


def test_enabled_rejects_unknown_place_in_marking():
    with pytest.raises(ValueError):
        enabled(simple_net(), Marking({"mystery": 1}))


def test_fire_moves_token():
    net = simple_net()
    assert fire(net, Marking({"p": 1}), "t") == Marking({"q": 1})


def test_fire_read_arc_retains_source():
    net = PetriNet("r", ["p", "q"], ["t"],
                   [Arc("p", "t", read_only=True), Arc("t", "q")])
    assert fire(net, Marking({"p": 1}), "t") == Marking({"p": 1, "q": 1})


def test_fire_disabled_transition_raises():
    net = simple_net()
    with pytest.raises(NotEnabledError):
        fire(net, Marking(), "t")


def test_fire_unknown_transition_raises():
    with pytest.raises(ValueError):
        fire(simple_net(), Marking({"p": 1}), "nope")


# -------------------------------------------------------------- exploration

def test_explore_no_transitions_single_deadlocked_node():
    net = PetriNet("lonely", ["p"], [], [])
    graph = explore(net, Marking({"p": 1}), bound=1)
    assert graph.nodes == frozenset({Marking({"p": 1})})
    assert graph.deadlocks == graph.nodes
    assert graph.truncated is False
    assert graph.edges == ()


def test_explore_self_loop_truncates_at_bound():
    # t consumes one token from p and puts two back: unbounded growth.
    net = PetriNet("grow", ["p"], ["t"], [Arc("p", "t"), Arc("t", "p", weight=2)])
    graph = explore(net, Marking({"p": 1}), bound=3)
    assert graph.truncated is True
    assert all(m.tokens("p") <= 3 for m in graph.nodes)


def test_explore_diamond_counts():
    net = PetriNet("diamond", ["a", "b"], ["ta", "tb"],
                   [Arc("a", "ta"), Arc("b", "tb")])
    graph = explore(net, Marking({"a": 1, "b": 1}), bound=1)
    # {a,b} -> {b} / {a} -> {} : four markings, one deadlock.
    assert len(graph.nodes) == 4
    assert graph.deadlocks == frozenset({Marking()})
    assert len(graph.edges) == 4


def test_explore_edges_replay_via_fire():
    net, m0 = random_net(random.Random(7))
    graph = explore(net, m0, bound=2)
    for source, t, target in graph.edges:
        assert fire(net, source, t) == target
        assert source in graph.nodes and target in graph.nodes


def test_explore_state_cap_raises_named_error():
    # Ten independent one-shot places: 2^10 reachable markings.
    places = [f"p{i}" for i in range(10)]
    sinks = [f"q{i}" for i in range(10)]
    transitions = [f"t{i}" for i in range(10)]
    arcs = [Arc(p, t) for p, t in zip(places, transitions)]
    arcs += [Arc(t, q) for t, q in zip(transitions, sinks)]
    net = PetriNet("boom", places + sinks, transitions, arcs)
    with pytest.raises(StateCapError) as err:
        explore(net, Marking({p: 1 for p in places}), bound=1, max_nodes=100)
    assert "100" in str(err.value)


def test_explore_matches_oracle_on_200_random_nets():
    rng = random.Random(20200)
    for _ in range(200):
        net, m0 = random_net(rng)
        bound = rng.randint(1, 2)
        graph = explore(net, m0, bound=bound)
        assert marking_keys(graph.nodes) == naive_reachable(net, m0, bound)


def test_explore_deterministic():
    net, m0 = random_net(random.Random(99))
    first = explore(net, m0, bound=2)
    second = explore(net, m0, bound=2)
    assert first == second
    assert first.edges == second.edges  # ordering included


# ----------------------------------------------------------------- witnesses

def test_find_path_empty_when_start_satisfies():
    net = simple_net()
    assert find_path(net, Marking({"p": 1}), lambda m: True) == []


def test_find_path_absent_when_unreachable():
    net = simple_net()
    assert find_path(net, Marking(), lambda m: m.tokens("q") > 0) is None


def test_find_path_shortest_with_lexicographic_tie_break():
    # Two routes of equal length from a to c; tb < tz alphabetically loses to ta.
    net = PetriNet("tie", ["a", "b1", "b2", "c"], ["ta", "tz", "u1", "u2"],
                   [Arc("a", "ta"), Arc("ta", "b1"), Arc("b1", "u1"), Arc("u1", "c"),
                    Arc("a", "tz"), Arc("tz", "b2"), Arc("b2", "u2"), Arc("u2", "c")])
    path = find_path(net, Marking({"a": 1}), lambda m: m.tokens("c") > 0)
    assert path == ["ta", "u1"]


def test_find_path_witness_replays():
    rng = random.Random(31)
    for _ in range(50):
        net, m0 = random_net(rng)
        target = sorted(net.place_ids)[0]
        path = find_path(net, m0, lambda m: m.tokens(target) > 0, bound=2)
        if path is None:
            continue
        m = m0
        for t in path:
            assert t in enabled(net, m)
            m = fire(net, m, t)
        assert m.tokens(target) > 0


def test_find_path_deterministic():
    net, m0 = random_net(random.Random(4))
    goal = lambda m: len(m) == 0
    assert find_path(net, m0, goal, bound=2) == find_path(net, m0, goal, bound=2)


# ---------------------------------------------------------------- properties

@st.composite
def nets_with_marking(draw):
    n_places = draw(st.integers(1, 6))
    n_transitions = draw(st.integers(1, 6))
    places = [f"p{i}" for i in range(n_places)]
    transitions = [f"t{i}" for i in range(n_transitions)]
    arcs = []
    for t in transitions:
        for p in draw(st.lists(st.sampled_from(places), unique=True, max_size=3)):
            arcs.append(Arc(p, t, draw(st.integers(1, 2)), draw(st.booleans())))
        for p in draw(st.lists(st.sampled_from(places), unique=True, max_size=3)):
            arcs.append(Arc(t, p, draw(st.integers(1, 2))))
    counts = {p: draw(st.integers(0, 3)) for p in places}
    return PetriNet("prop net", places, transitions, arcs), Marking(counts)


@given(nets_with_marking())
@settings(max_examples=150, deadline=None)
def test_property_enabling_soundness(net_and_marking):
    net, m = net_and_marking
    expected = set()
    for t in net.transition_ids:
        ins = [a for a in net.arcs if a.target == t]
        if all(m.tokens(a.source) >= a.weight for a in ins):
            expected.add(t)
    assert enabled(net, m) == expected


@given(nets_with_marking())
@settings(max_examples=150, deadline=None)
def test_property_firing_conservation(net_and_marking):
    net, m = net_and_marking
    for t in sorted(enabled(net, m)):
        result = fire(net, m, t)
        for p in net.place_ids:
            consumed = sum(a.weight for a in net.input_arcs(t)
                           if a.source == p and not a.read_only)
            produced = sum(a.weight for a in net.output_arcs(t) if a.target == p)
            assert result.tokens(p) == m.tokens(p) - consumed + produced
            assert result.tokens(p) >= 0


@given(nets_with_marking())
@settings(max_examples=150, deadline=None)
def test_property_read_arc_neutrality(net_and_marking):
    net, m = net_and_marking
    for t in sorted(enabled(net, m)):
        if not net.input_arcs(t):
            continue
        if all(a.read_only for a in net.input_arcs(t)):
            result = fire(net, m, t)
            for p in net.place_ids:
                assert result.tokens(p) >= m.tokens(p)


# ----------------------------------------------------------------- DOT export

def test_dot_single_place():
    net = PetriNet("one", ["p"], [], [])
    text = to_dot(net)
    nodes, edges = assert_wellformed_dot(text)
    assert nodes == ['"p"']
    assert edges == []
    assert "shape=circle" in text


def test_dot_two_places_one_transition():
    net = PetriNet("fig", ["p1", "p2"], ["t1"], [Arc("p1", "t1"), Arc("t1", "p2")])
    nodes, edges = assert_wellformed_dot(to_dot(net))
    assert len(nodes) == 3
    assert len(edges) == 2


def test_dot_renders_tokens_weights_and_read_arcs():
    net = PetriNet("decor", ["p", "q"], ["t"],
                   [Arc("p", "t", weight=2, read_only=True), Arc("t", "q")])
    text = to_dot(net, Marking({"p": 1}))
    assert_wellformed_dot(text)
    assert 'label="p [1]"' in text
    assert 'label="q [0]"' in text
    assert "style=dashed" in text
    assert 'label="2"' in text


def test_dot_escapes_quotes_in_names():
    net = PetriNet('tricky "name"', ['pl"ace'], [], [])
    text = to_dot(net)
    assert_wellformed_dot(text)


def test_dot_deterministic():
    net, m0 = random_net(random.Random(8))
    assert to_dot(net, m0) == to_dot(net, m0)
