"""Place/transition nets with exact token-game semantics.

The central object is :class:`PetriNet`, an immutable net ``N = (P, T, F, M0)``
over string identifiers.  Markings assign non-negative token counts to places;
zero counts are normalized away so that equal markings always compare (and
hash) identically.  On top of the net the module provides the classic
operations: enabling, firing, bounded breadth-first state-space exploration,
shortest-witness search, and DOT export.

Arcs may be flagged *read-only* (test arcs): they require tokens for enabling
but consume nothing when the transition fires.  This is how persistent
conditions such as standing attacker capabilities are modelled.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

DEFAULT_STATE_CAP = 1_000_000


class NotEnabledError(ValueError):
    """Raised when a transition is fired in a marking that does not enable it."""


class StateCapError(RuntimeError):
    """Raised when exploration exceeds the hard cap on distinct markings."""

    def __init__(self, cap: int):
        super().__init__(f"state space exceeded the hard cap of {cap} markings")
        self.cap = cap


@dataclass(frozen=True)
class Arc:
    """A weighted arc between a place and a transition (either direction).

    ``read_only`` is permitted only on place->transition arcs and marks a test
    arc: the tokens are required for enabling but are not consumed.
    """

    source: str
    target: str
    weight: int = 1
    read_only: bool = False


class Marking:
    """An immutable assignment of token counts to places.

    Entries with zero tokens are dropped on construction, so two markings that
    agree on every place are equal and hash alike regardless of how they were
    built.  Unmentioned places hold zero tokens.
    """

    __slots__ = ("_counts", "_key")

    def __init__(self, counts: Optional[Mapping[str, int]] = None):
        cleaned = {}
        for place in sorted(counts or {}):
            count = counts[place]
            if count < 0:
                raise ValueError(f"negative token count for place {place!r}")
            if count:
                cleaned[place] = int(count)
        self._counts = cleaned
        self._key = tuple(cleaned.items())

    def tokens(self, place: str) -> int:
        """Token count at ``place`` (0 if absent)."""
        return self._counts.get(place, 0)

    def places(self) -> Iterator[str]:
        """Marked places, in identifier order."""
        return iter(self._counts)

    def items(self):
        return self._counts.items()

    def as_dict(self) -> dict:
        return dict(self._counts)

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Marking):
            return self._key == other._key
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {n}" for p, n in self._counts.items())
        return f"Marking({{{inner}}})"


def _as_label_map(items: Union[Mapping[str, Optional[str]], Iterable]) -> dict:
    """Normalize places/transitions input to an id -> optional-label dict."""
    if isinstance(items, Mapping):
        return dict(items)
    out = {}
    for entry in items:
        if isinstance(entry, str):
            out[entry] = None
        else:
            ident, label = entry
            out[ident] = label
    return out


class PetriNet:
    """An immutable place/transition net.

    ``places`` and ``transitions`` accept either an iterable of identifiers,
    an iterable of ``(identifier, label)`` pairs, or a mapping from identifier
    to optional human-readable label.  The constructor is deliberately
    permissive about structure; use :func:`validate_net` to obtain the list of
    structural violations (an empty list means the net is well formed).
    """

    __slots__ = ("_name", "_places", "_transitions", "_arcs",
                 "_initial", "_inputs", "_outputs")

    def __init__(self, name: str,
                 places: Union[Mapping[str, Optional[str]], Iterable],
                 transitions: Union[Mapping[str, Optional[str]], Iterable],
                 arcs: Iterable[Arc],
                 initial_marking: Optional[Marking] = None):
        self._name = name
        self._places = _as_label_map(places)
        self._transitions = _as_label_map(transitions)
        self._arcs = tuple(arcs)
        self._initial = initial_marking if initial_marking is not None else Marking()
        # Pre-computed views used by the token game; arcs with endpoints that
        # are not declared transitions simply do not show up here.
        inputs = {t: [] for t in self._transitions}
        outputs = {t: [] for t in self._transitions}
        for arc in self._arcs:
            if arc.target in inputs and arc.source in self._places:
                inputs[arc.target].append(arc)
            if arc.source in outputs and arc.target in self._places:
                outputs[arc.source].append(arc)
        self._inputs = {t: tuple(v) for t, v in inputs.items()}
        self._outputs = {t: tuple(v) for t, v in outputs.items()}

    @property
    def name(self) -> str:
        return self._name

    @property
    def places(self) -> dict:
        """Mapping of place id to optional label (copy)."""
        return dict(self._places)

    @property
    def transitions(self) -> dict:
        """Mapping of transition id to optional label (copy)."""
        return dict(self._transitions)

    @property
    def place_ids(self) -> frozenset:
        return frozenset(self._places)

    @property
    def transition_ids(self) -> frozenset:
        return frozenset(self._transitions)

    @property
    def arcs(self) -> tuple:
        return self._arcs

    @property
    def initial_marking(self) -> Marking:
        return self._initial

    def place_label(self, place: str) -> Optional[str]:
        return self._places.get(place)

    def transition_label(self, transition: str) -> Optional[str]:
        return self._transitions.get(transition)

    def input_arcs(self, transition: str) -> tuple:
        """Arcs feeding ``transition`` from declared places."""
        return self._inputs.get(transition, ())

    def output_arcs(self, transition: str) -> tuple:
        """Arcs from ``transition`` to declared places."""
        return self._outputs.get(transition, ())

    def _eq_key(self):
        return (self._name,
                frozenset(self._places.items()),
                frozenset(self._transitions.items()),
                frozenset(self._arcs),
                self._initial)

    def __eq__(self, other) -> bool:
        if isinstance(other, PetriNet):
            return self._eq_key() == other._eq_key()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._eq_key())

    def __repr__(self) -> str:
        return (f"PetriNet({self._name!r}, {len(self._places)} places, "
                f"{len(self._transitions)} transitions, {len(self._arcs)} arcs)")


@dataclass(frozen=True)
class ReachabilityGraph:
    """The explored state space of a net under a per-place token bound."""

    root: Marking
    nodes: frozenset
    edges: tuple  # of (Marking, transition id, Marking)
    bound: int
    truncated: bool
    deadlocks: frozenset


def validate_net(net: PetriNet) -> list:
    """Return every structural violation of the net as a human-readable string.

    An empty list means the net is valid.  Checked: disjoint place/transition
    namespaces, bipartite arcs with declared endpoints, positive weights,
    read flags only on place->transition arcs, no duplicate (source, target)
    pairs, and an initial marking confined to declared places.
    """
    violations = []
    places = net.place_ids
    transitions = net.transition_ids

    for ident in sorted(places & transitions):
        violations.append(
            f"identifier {ident!r} is declared as both a place and a transition")

    seen_pairs = set()
    for arc in net.arcs:
        where = f"arc {arc.source} -> {arc.target}"
        src_place = arc.source in places
        src_trans = arc.source in transitions
        tgt_place = arc.target in places
        tgt_trans = arc.target in transitions
        if not (src_place or src_trans):
            violations.append(f"{where}: undeclared endpoint {arc.source!r}")
        if not (tgt_place or tgt_trans):
            violations.append(f"{where}: undeclared endpoint {arc.target!r}")
        if (src_place and tgt_place) or (src_trans and tgt_trans):
            violations.append(
                f"{where}: non-bipartite arc (must connect a place and a transition)")
        if arc.weight < 1:
            violations.append(f"{where}: weight must be a positive integer")
        if arc.read_only and not (src_place and tgt_trans):
            violations.append(
                f"{where}: read arcs are only permitted from a place to a transition")
        pair = (arc.source, arc.target)
        if pair in seen_pairs:
            violations.append(f"{where}: duplicate arc for this source/target pair")
        seen_pairs.add(pair)

    for place in net.initial_marking:
        if place not in places:
            violations.append(f"initial marking assigns tokens to undeclared place {place!r}")

    return violations


def _check_marked_places(net: PetriNet, m: Marking) -> None:
    for place in m:
        if place not in net.place_ids:
            raise ValueError(f"marking mentions undeclared place {place!r}")


def enabled(net: PetriNet, m: Marking) -> set:
    """The set of transitions enabled in marking ``m``.

    A transition is enabled iff every input arc's weight is covered by the
    tokens on its source place (read arcs count the same for enabling).
    """
    _check_marked_places(net, m)
    result = set()
    for t in net.transition_ids:
        if _is_enabled(net, m, t):
            result.add(t)
    return result


def _is_enabled(net: PetriNet, m: Marking, t: str) -> bool:
    return all(m.tokens(arc.source) >= arc.weight for arc in net.input_arcs(t))


def fire(net: PetriNet, m: Marking, t: str) -> Marking:
    """Fire transition ``t`` in marking ``m`` and return the successor marking.

    Consuming input arcs subtract their weight, output arcs add theirs, and
    read arcs leave their place untouched.  Firing a transition that is not
    enabled raises :class:`NotEnabledError`.
    """
    _check_marked_places(net, m)
    if t not in net.transition_ids:
        raise ValueError(f"unknown transition {t!r}")
    if not _is_enabled(net, m, t):
        raise NotEnabledError(f"transition {t!r} is not enabled in {m!r}")
    counts = m.as_dict()
    for arc in net.input_arcs(t):
        if not arc.read_only:
            counts[arc.source] = counts.get(arc.source, 0) - arc.weight
    for arc in net.output_arcs(t):
        counts[arc.target] = counts.get(arc.target, 0) + arc.weight
    return Marking(counts)


def _successors(net: PetriNet, m: Marking, bound: int):
    """Yield (transition, successor) pairs in canonical order.

    Successors that would push any place above ``bound`` are reported with a
    ``None`` marking so callers can record truncation.
    """
    for t in sorted(net.transition_ids):
        if not _is_enabled(net, m, t):
            continue
        succ = fire(net, m, t)
        if any(n > bound for _, n in succ.items()):
            yield t, None
        else:
            yield t, succ


def explore(net: PetriNet, m0: Marking, bound: int = 1,
            max_nodes: int = DEFAULT_STATE_CAP) -> ReachabilityGraph:
    """Breadth-first state-space exploration from ``m0``.

    Firings that would push a place above ``bound`` tokens are not expanded;
    encountering one sets ``truncated`` on the result.  Exceeding ``max_nodes``
    distinct markings raises :class:`StateCapError`.  Output is deterministic:
    nodes are expanded in discovery order and successors in transition-id
    order.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    _check_marked_places(net, m0)

    nodes = {m0}
    edges = []
    deadlocks = set()
    truncated = False
    queue = deque([m0])
    while queue:
        m = queue.popleft()
        fired = False
        for t, succ in _successors(net, m, bound):
            fired = True
            if succ is None:
                truncated = True
                continue
            if succ not in nodes:
                if len(nodes) >= max_nodes:
                    raise StateCapError(max_nodes)
                nodes.add(succ)
                queue.append(succ)
            edges.append((m, t, succ))
        if not fired:
            deadlocks.add(m)
    return ReachabilityGraph(root=m0, nodes=frozenset(nodes), edges=tuple(edges),
                             bound=bound, truncated=truncated,
                             deadlocks=frozenset(deadlocks))


def find_path(net: PetriNet, m0: Marking, goal: Callable[[Marking], bool],
              bound: int = 1, max_nodes: int = DEFAULT_STATE_CAP) -> Optional[list]:
    """Shortest firing sequence from ``m0`` to a marking satisfying ``goal``.

    Returns a list of transition ids (empty if ``m0`` already satisfies the
    goal) or ``None`` when no reachable marking within ``bound`` satisfies it.
    Among shortest sequences the lexicographically least one is returned, so
    witnesses are reproducible.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    _check_marked_places(net, m0)

    if goal(m0):
        return []
    parents = {m0: None}  # marking -> (predecessor, transition)
    queue = deque([m0])
    while queue:
        m = queue.popleft()
        for t, succ in _successors(net, m, bound):
            if succ is None or succ in parents:
                continue
            if len(parents) >= max_nodes:
                raise StateCapError(max_nodes)
            parents[succ] = (m, t)
            if goal(succ):
                path = []
                node = succ
                while parents[node] is not None:
                    node, fired = parents[node]
                    path.append(fired)
                path.reverse()
                return path
            queue.append(succ)
    return None


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(net: PetriNet, m: Optional[Marking] = None) -> str:
    """Render the net in DOT format (places as circles, transitions as boxes).

    When a marking is given, token counts are appended to place labels.
    Output is deterministic for a given net and marking.
    """
    lines = [f"digraph {_dot_quote(net.name)} {{", "  rankdir=LR;"]
    for place in sorted(net.place_ids):
        label = place
        if m is not None:
            label = f"{place} [{m.tokens(place)}]"
        lines.append(f"  {_dot_quote(place)} [shape=circle, label={_dot_quote(label)}];")
    for t in sorted(net.transition_ids):
        lines.append(f"  {_dot_quote(t)} [shape=box, label={_dot_quote(t)}];")
    for arc in sorted(net.arcs, key=lambda a: (a.source, a.target)):
        attrs = []
        if arc.weight != 1:
            attrs.append(f"label={_dot_quote(str(arc.weight))}")
        if arc.read_only:
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_quote(arc.source)} -> {_dot_quote(arc.target)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
