"""JSON payload builders shared by the HTTP service and the CLI.

Both front ends emit exactly these shapes, so scripted clients can treat
``attacknets <cmd> --json`` output and service responses interchangeably.
Every list is emitted in a fixed order (identifiers lexicographic, STRIDE
letters in S/T/R/I/D/E order, enum names in declaration order, attack
numbers ascending) and markings omit zero counts, so equal inputs always
produce byte-identical JSON.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from attacknets.analysis import (
    FeasibilityReport,
    PreconditionCut,
    influence_closure,
)
from attacknets.catalog import (
    AttackModel,
    Capability,
    CapabilityProfile,
    Motivation,
    StrideThreat,
    VulnerabilityClass,
    get_model,
)
from attacknets.petri import Marking, PetriNet, enabled, to_dot

__all__ = [
    "capability_names",
    "chains_payload",
    "cuts_payload",
    "feasibility_payload",
    "marking_payload",
    "model_detail",
    "model_summary",
    "motivation_names",
    "session_payload",
    "stride_letters",
    "vulnerability_names",
]

_CAP_ORDER = (Capability.CLASSICAL, Capability.QUANTUM, Capability.PHYSICAL)


def stride_letters(threats: FrozenSet[StrideThreat]) -> List[str]:
    return [member.value for member in StrideThreat if member in threats]


def vulnerability_names(classes: FrozenSet[VulnerabilityClass]) -> List[str]:
    return [member.value for member in VulnerabilityClass if member in classes]


def motivation_names(motivations: FrozenSet[Motivation]) -> List[str]:
    return [member.value for member in Motivation if member in motivations]


def capability_names(capabilities: Iterable[Capability]) -> List[str]:
    capabilities = set(capabilities)
    return [member.value for member in _CAP_ORDER if member in capabilities]


def marking_payload(marking: Marking) -> Dict[str, int]:
    return {place: marking.tokens(place) for place in sorted(marking.places())}


def model_summary(model: AttackModel) -> dict:
    return {
        "id": int(model.id) if model.id is not None else None,
        "name": model.name,
        "quantumImpacted": model.quantum_impacted,
        "stride": stride_letters(model.stride),
        "vulnerabilities": vulnerability_names(model.vulnerabilities),
        "motivations": motivation_names(model.motivations),
        "influences": sorted(model.influences),
    }


def _net_payload(net: PetriNet, model: AttackModel) -> dict:
    pre = {spec.place: spec for spec in model.preconditions}

    def place_entry(pid: str) -> dict:
        spec = pre.get(pid)
        if spec is not None:
            kind = "pre"
        elif pid in model.postconditions:
            kind = "post"
        else:
            kind = "internal"
        return {
            "id": pid,
            "label": net.place_label(pid),
            "kind": kind,
            "capability": (spec.capability.value
                           if spec is not None and spec.capability is not None
                           else None),
            "group": spec.group if spec is not None else None,
        }

    return {
        "name": net.name,
        "places": [place_entry(pid) for pid in sorted(net.place_ids)],
        "transitions": [{"id": tid, "label": net.transition_label(tid)}
                        for tid in sorted(net.transition_ids)],
        "arcs": [{"source": arc.source, "target": arc.target,
                  "weight": arc.weight, "readOnly": arc.read_only}
                 for arc in sorted(net.arcs,
                                   key=lambda a: (a.source, a.target))],
        "initialMarking": marking_payload(net.initial_marking),
    }


def model_detail(model: AttackModel) -> dict:
    detail = model_summary(model)
    detail.update({
        "net": _net_payload(model.net, model),
        "preconditions": [
            {"place": spec.place,
             "capability": (spec.capability.value
                            if spec.capability is not None else None),
             "group": spec.group}
            for spec in model.preconditions],
        "postconditions": sorted(model.postconditions),
        "provenanceNote": model.provenance_note,
        "dot": to_dot(model.net),
    })
    return detail


def feasibility_payload(report: FeasibilityReport) -> dict:
    model = report.attack
    return {
        "attack": int(model.id) if model.id is not None else None,
        "name": model.name,
        "profile": capability_names(report.profile.capabilities),
        "reachableGoals": sorted(report.reachable_goals),
        "witnesses": {goal: list(report.witnesses[goal])
                      for goal in sorted(report.witnesses)},
        "blockedGoals": {
            goal: (capability_names(extras) if extras is not None else None)
            for goal, extras in sorted(report.blocked.items())},
    }


def cuts_payload(cut: PreconditionCut) -> dict:
    model = cut.attack
    return {
        "attack": int(model.id) if model.id is not None else None,
        "name": model.name,
        "goal": cut.goal,
        "sets": [list(chosen) for chosen in cut.sets],
    }


def chains_payload(attack: int) -> dict:
    model = get_model(attack)
    return {
        "attack": int(model.id),
        "name": model.name,
        "direct": sorted(model.influences),
        "closure": sorted(influence_closure(attack)),
    }


def session_payload(model: AttackModel, profile: CapabilityProfile,
                    chosen: FrozenSet[str], marking: Marking,
                    history: Tuple[str, ...],
                    session_id: Optional[str] = None) -> dict:
    payload = {}
    if session_id is not None:
        payload["sessionId"] = session_id
    fireable = enabled(model.net, marking)
    payload.update({
        "attack": int(model.id) if model.id is not None else None,
        "name": model.name,
        "profile": capability_names(profile.capabilities),
        "chosen": sorted(chosen),
        "marking": marking_payload(marking),
        "enabled": [{"id": tid, "label": model.net.transition_label(tid)}
                    for tid in sorted(fireable)],
        "satisfiedPostconditions": sorted(
            place for place in model.postconditions
            if marking.tokens(place) >= 1),
        "history": list(history),
    })
    return payload
