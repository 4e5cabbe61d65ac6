"""Analysis queries over attack models.

* :func:`feasibility` - which outcomes a given attacker profile can reach,
  with a shortest transition witness per reachable outcome and, per blocked
  outcome, the smallest set of extra capabilities that would unblock it.
* :func:`minimal_precondition_sets` - the minimal sets of precondition
  places that suffice to reach a goal outcome, ignoring capability gates.
* :func:`influence_closure` / :func:`influence_edges` - which attacks an
  attack enables, directly and transitively.
* STRIDE / vulnerability pivots over the built-in catalog.

Reachability questions are answered on the 1-bounded token game (each
place holds at most one token), which is exact for the built-in models:
their full seeds explore without truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from attacknets.catalog import (
    AttackModel,
    Capability,
    CapabilityProfile,
    StrideThreat,
    VulnerabilityClass,
    builtin_models,
    get_model,
    seed_marking,
    seedable_places,
)
from attacknets.petri import DEFAULT_STATE_CAP, Marking, explore, find_path

__all__ = [
    "FeasibilityReport",
    "PreconditionCut",
    "attacks_exposing",
    "attacks_for",
    "feasibility",
    "influence_closure",
    "influence_edges",
    "minimal_precondition_sets",
    "quantum_impacted_attacks",
    "stride_matrix",
    "vulnerability_matrix",
]

_CAP_ORDER = (Capability.CLASSICAL, Capability.QUANTUM, Capability.PHYSICAL)


@dataclass(frozen=True)
class FeasibilityReport:
    """Which outcomes a capability profile can reach on one attack model.

    ``witnesses`` maps each reachable outcome to a shortest firing
    sequence; ``blocked`` maps each unreachable outcome to the smallest
    set of additional capabilities that would make it reachable, or to
    ``None`` if no capability set helps.
    """

    attack: AttackModel
    profile: CapabilityProfile
    reachable_goals: FrozenSet[str]
    witnesses: Dict[str, Tuple[str, ...]]
    blocked: Dict[str, Optional[FrozenSet[Capability]]]


def _goal_reached(model: AttackModel, places: set, goal: str,
                  bound: int, max_nodes: int) -> Optional[Tuple[str, ...]]:
    seed = Marking({place: 1 for place in places})
    path = find_path(model.net, seed, lambda m: m.tokens(goal) >= 1,
                     bound=bound, max_nodes=max_nodes)
    return None if path is None else tuple(path)


def feasibility(model: AttackModel, profile: CapabilityProfile, *,
                bound: int = 1,
                max_nodes: int = DEFAULT_STATE_CAP) -> FeasibilityReport:
    """Seed every precondition the profile may hold and probe each outcome.

    The net's own initial marking is ignored: the question asked is "what
    can an attacker with these capabilities achieve from a standing start".
    """
    allowed = seedable_places(model, profile)
    missing = [c for c in _CAP_ORDER if c not in profile.capabilities]
    reachable = set()
    witnesses: Dict[str, Tuple[str, ...]] = {}
    blocked: Dict[str, Optional[FrozenSet[Capability]]] = {}
    for goal in sorted(model.postconditions):
        witness = _goal_reached(model, allowed, goal, bound, max_nodes)
        if witness is not None:
            reachable.add(goal)
            witnesses[goal] = witness
            continue
        blocked[goal] = None
        for size in range(1, len(missing) + 1):
            for extras in itertools.combinations(missing, size):
                widened = CapabilityProfile(
                    profile.capabilities | frozenset(extras))
                wider = seedable_places(model, widened)
                if _goal_reached(model, wider, goal, bound, max_nodes) is not None:
                    blocked[goal] = frozenset(extras)
                    break
            if blocked[goal] is not None:
                break
    return FeasibilityReport(model, profile, frozenset(reachable),
                             witnesses, blocked)


@dataclass(frozen=True)
class PreconditionCut:
    """The minimal precondition sets that reach one goal outcome."""

    attack: AttackModel
    goal: str
    sets: Tuple[Tuple[str, ...], ...]


def minimal_precondition_sets(model: AttackModel, goal: str, *,
                              bound: int = 1,
                              max_nodes: int = DEFAULT_STATE_CAP
                              ) -> PreconditionCut:
    """Every minimal set of precondition places from which ``goal`` is
    reachable, ignoring capability gates.

    A set is minimal when removing any one place makes the goal
    unreachable; supersets of sufficient sets are pruned during the
    size-ascending enumeration, so the result is an antichain.
    """
    if goal not in model.postconditions:
        raise ValueError(
            f"{goal!r} is not a postcondition of {model.name!r}")
    places = sorted(model.precondition_places)
    if len(places) > 16:
        raise ValueError(
            f"{model.name!r} has {len(places)} precondition places; "
            f"cut-set enumeration is limited to 16")
    minimal: List[Tuple[str, ...]] = []
    for size in range(0, len(places) + 1):
        for combo in itertools.combinations(places, size):
            chosen = set(combo)
            if any(set(found) <= chosen for found in minimal):
                continue
            if _goal_reached(model, chosen, goal, bound, max_nodes) is not None:
                minimal.append(combo)
    minimal.sort(key=lambda s: (len(s), s))
    return PreconditionCut(model, goal, tuple(minimal))


def influence_edges() -> Dict[int, FrozenSet[int]]:
    """Direct influence edges of the catalog: attack number -> enabled
    attack numbers."""
    return {int(model.id): model.influences for model in builtin_models()}


def influence_closure(attack: int) -> FrozenSet[int]:
    """All attacks transitively enabled by ``attack``.

    The attack itself is excluded unless it can be re-reached through a
    cycle of influence edges.
    """
    start = int(get_model(attack).id)
    edges = influence_edges()
    seen: set = set()
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for target in edges[node]:
            if target not in seen:
                seen.add(target)
                frontier.append(target)
    return frozenset(seen)


def stride_matrix() -> Dict[int, FrozenSet[StrideThreat]]:
    """Attack number -> STRIDE threats, for the whole catalog."""
    return {int(model.id): model.stride for model in builtin_models()}


def vulnerability_matrix() -> Dict[int, FrozenSet[VulnerabilityClass]]:
    """Attack number -> vulnerability classes, for the whole catalog."""
    return {int(model.id): model.vulnerabilities for model in builtin_models()}


def attacks_exposing(threat: StrideThreat) -> List[int]:
    """Attack numbers exposing one STRIDE threat, ascending."""
    return [int(model.id) for model in builtin_models()
            if threat in model.stride]


def attacks_for(vulnerability: VulnerabilityClass) -> List[int]:
    """Attack numbers exploiting one vulnerability class, ascending."""
    return [int(model.id) for model in builtin_models()
            if vulnerability in model.vulnerabilities]


def quantum_impacted_attacks() -> FrozenSet[int]:
    """Attack numbers whose models gain power from quantum resources."""
    return frozenset(int(model.id) for model in builtin_models()
                     if model.quantum_impacted)
