"""Independent oracles used by the test suite.

Everything in here deliberately re-derives results from first principles
(raw arc scans, explicit work-lists, a separate closure algorithm, a small
DOT grammar) so the production code is checked against a second, unrelated
implementation rather than against itself.
"""

from __future__ import annotations

import random
import re

from attacknets.petri import Arc, Marking, PetriNet


def naive_reachable(net: PetriNet, m0: Marking, bound: int) -> set:
    """Reachable markings (as frozensets of (place, count) pairs).

    Depth-first enumeration with an explicit stack; enabling and firing are
    recomputed from the raw arc list on every step.
    """
    transitions = sorted(net.transition_ids)
    inputs = {t: [a for a in net.arcs if a.target == t and a.source in net.place_ids]
              for t in transitions}
    outputs = {t: [a for a in net.arcs if a.source == t and a.target in net.place_ids]
               for t in transitions}

    start = frozenset(m0.items())
    seen = set()
    stack = [start]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        counts = dict(current)
        for t in transitions:
            if not all(counts.get(a.source, 0) >= a.weight for a in inputs[t]):
                continue
            nxt = dict(counts)
            for a in inputs[t]:
                if not a.read_only:
                    nxt[a.source] = nxt.get(a.source, 0) - a.weight
            for a in outputs[t]:
                nxt[a.target] = nxt.get(a.target, 0) + a.weight
            if all(v <= bound for v in nxt.values()):
                stack.append(frozenset((p, n) for p, n in nxt.items() if n))
    return seen


def marking_keys(markings) -> set:
    """Canonical frozenset keys for a collection of Marking values."""
    return {frozenset(m.items()) for m in markings}


def random_net(rng: random.Random, max_places: int = 8,
               max_transitions: int = 8) -> tuple:
    """A small random net plus a random initial marking (as a Marking)."""
    n_places = rng.randint(1, max_places)
    n_transitions = rng.randint(1, max_transitions)
    places = [f"p{i}" for i in range(n_places)]
    transitions = [f"t{i}" for i in range(n_transitions)]
    arcs = []
    for t in transitions:
        for p in rng.sample(places, rng.randint(0, min(3, n_places))):
            arcs.append(Arc(p, t, rng.randint(1, 2), rng.random() < 0.25))
        for p in rng.sample(places, rng.randint(0, min(3, n_places))):
            arcs.append(Arc(t, p, rng.randint(1, 2)))
    marking = Marking({p: rng.randint(0, 2) for p in places})
    return PetriNet("random net", places, transitions, arcs), marking


def closure_oracle(edges: dict, start: int) -> set:
    """Transitive closure of one node via iterated matrix-style squaring.

    ``edges`` maps node -> iterable of successor nodes.  Implemented as
    repeated boolean composition until a fixpoint, unlike the production
    breadth-first walk.
    """
    nodes = sorted(set(edges) | {n for targets in edges.values() for n in targets})
    reach = {(a, b) for a, targets in edges.items() for b in targets}
    changed = True
    while changed:
        changed = False
        for a, b in list(reach):
            for b2, c in list(reach):
                if b == b2 and (a, c) not in reach:
                    reach.add((a, c))
                    changed = True
    return {b for a, b in reach if a == start}


_DOT_TOKEN = re.compile(
    r'\s*(?:(?P<quoted>"(?:[^"\\]|\\.)*")|(?P<punct>->|[{}\[\];=,])'
    r'|(?P<word>[A-Za-z0-9_.]+))')


def _tokenize_dot(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _DOT_TOKEN.match(text, pos)
        if not match:
            if text[pos:].strip() == "":
                break
            raise AssertionError(f"unexpected DOT text at offset {pos}: {text[pos:pos+20]!r}")
        pos = match.end()
        if match.group("quoted") is not None:
            tokens.append(("id", match.group("quoted")))
        elif match.group("word") is not None:
            tokens.append(("id", match.group("word")))
        else:
            tokens.append((match.group("punct"), match.group("punct")))
    return tokens


def assert_wellformed_dot(text: str) -> tuple:
    """Check ``text`` against a small DOT grammar; returns (nodes, edges).

    Accepts: ``digraph ID? { stmt* }`` where each statement is a node
    (``ID [attrs];``), an edge (``ID -> ID [attrs];``) or a bare attribute
    assignment (``ID=ID;``), with optional ``[key=value, ...]`` lists.
    """
    tokens = _tokenize_dot(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind):
        nonlocal pos
        token = peek()
        assert token[0] == kind, f"expected {kind!r}, got {token!r} at token {pos}"
        pos += 1
        return token[1]

    assert take("id") == "digraph"
    if peek()[0] == "id":
        take("id")
    take("{")
    nodes, edges = [], []
    while peek()[0] != "}":
        first = take("id")
        kind = peek()[0]
        if kind == "=":
            take("=")
            take("id")
        elif kind == "->":
            take("->")
            second = take("id")
            _maybe_attrs(tokens, lambda: pos, take, peek)
            edges.append((first, second))
        else:
            _maybe_attrs(tokens, lambda: pos, take, peek)
            nodes.append(first)
        take(";")
    take("}")
    assert pos == len(tokens), "trailing tokens after closing brace"
    return nodes, edges


def _maybe_attrs(tokens, _pos, take, peek):
    if peek()[0] != "[":
        return
    take("[")
    while peek()[0] != "]":
        take("id")
        take("=")
        take("id")
        if peek()[0] == ",":
            take(",")
    take("]")
