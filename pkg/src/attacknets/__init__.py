"""Attack-net modelling toolkit: Petri-net engine, blockchain attack catalog,
analysis queries, textual model format, HTTP session service and CLI.

The HTTP service lives in :mod:`attacknets.service` and is imported lazily
on purpose, so that using the engine or the catalog never requires the web
stack.
"""

from attacknets.analysis import (FeasibilityReport, PreconditionCut,
                                 attacks_exposing, attacks_for, feasibility,
                                 influence_closure, influence_edges,
                                 minimal_precondition_sets,
                                 quantum_impacted_attacks, stride_matrix,
                                 vulnerability_matrix)
from attacknets.catalog import (AttackId, AttackModel, Capability,
                                CapabilityError, CapabilityProfile,
                                FULL_PROFILE, Motivation, PreconditionSpec,
                                StrideThreat, VulnerabilityClass,
                                builtin_models, get_model, seed_marking,
                                seedable_places)
from attacknets.dsl import (ParseDiagnostic, ParseResult, SourceSpan, parse,
                            serialize)
from attacknets.petri import (Arc, Marking, NotEnabledError, PetriNet,
                              ReachabilityGraph, StateCapError, enabled,
                              explore, find_path, fire, to_dot, validate_net)

__version__ = "0.1.0"

__all__ = [
    "Arc", "AttackId", "AttackModel", "Capability", "CapabilityError",
    "CapabilityProfile", "FULL_PROFILE", "FeasibilityReport", "Marking",
    "Motivation", "NotEnabledError", "ParseDiagnostic", "ParseResult",
    "PetriNet", "PreconditionCut", "PreconditionSpec", "ReachabilityGraph",
    "SourceSpan", "StateCapError", "StrideThreat", "VulnerabilityClass",
    "attacks_exposing", "attacks_for", "builtin_models", "enabled", "explore",
    "feasibility", "find_path", "fire", "get_model", "influence_closure",
    "influence_edges", "minimal_precondition_sets", "parse",
    "quantum_impacted_attacks", "seed_marking", "seedable_places", "serialize",
    "stride_matrix", "to_dot", "validate_net", "vulnerability_matrix",
    "__version__",
]
