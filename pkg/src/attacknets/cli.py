"""Command-line front end for the attack catalog, analysis and token game.

Subcommands: ``list``, ``show``, ``reach``, ``cuts``, ``chains``,
``stride``, ``vulns``, ``export-dot``, ``check``, ``simulate``, ``serve``.
Every query subcommand accepts ``--json``, emitting exactly the payloads
the HTTP service returns.  Attacks are addressed by number or by a
case-insensitive unique prefix of their name; numbers win when the
argument is all digits.

Exit codes: 0 success; 1 the analysis answered "no/unreachable"; 2 usage
error; 3 input or parse error; 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import List, Optional

from attacknets import wire
from attacknets.analysis import (
    attacks_exposing,
    attacks_for,
    feasibility,
    minimal_precondition_sets,
)
from attacknets.catalog import (
    AttackModel,
    CapabilityProfile,
    StrideThreat,
    VulnerabilityClass,
    builtin_models,
    get_model,
    seedable_places,
    seed_marking,
)
from attacknets.dsl import parse
from attacknets.petri import (
    Marking,
    NotEnabledError,
    StateCapError,
    enabled,
    fire,
    to_dot,
)

__all__ = ["main"]

_ALL_CAPABILITIES = "classical,quantum,physical"
_STRIDE_CHOICES = [member.value for member in StrideThreat]
_VULN_CHOICES = [member.value for member in VulnerabilityClass]


class _UsageError(Exception):
    """Bad command line (exit 2)."""


class _InputError(Exception):
    """Bad input value: unknown attack, place, capability, file (exit 3)."""


def _resolve_attack(text: str) -> AttackModel:
    if re.fullmatch(r"[0-9]+", text):
        try:
            return get_model(int(text))
        except KeyError:
            raise _InputError(f"unknown attack id {text}") from None
    matches = [model for model in builtin_models()
               if model.name.lower().startswith(text.lower())]
    if len(matches) == 1:
        return matches[0]
    if not matches:
        raise _InputError(f"no attack named {text!r}")
    names = ", ".join(model.name for model in matches)
    raise _InputError(f"ambiguous attack name {text!r} (matches: {names})")


def _resolve_profile(text: str) -> CapabilityProfile:
    names = [part.strip() for part in text.split(",") if part.strip()]
    try:
        return CapabilityProfile.from_names(names)
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _styled(text: str, color: bool) -> str:
    return f"\x1b[1m{text}\x1b[0m" if color else text


def _join(values, empty="(none)") -> str:
    values = list(values)
    return " ".join(values) if values else empty


# -- subcommand handlers ------------------------------------------------------

def _cmd_list(args) -> int:
    models = builtin_models()
    if args.json:
        _emit_json([wire.model_summary(model) for model in models])
        return 0
    width = max(len(model.name) for model in models)
    print(_styled(f"{'id':>2}  {'name':<{width}}  quantum  stride", args.color))
    for model in models:
        letters = ", ".join(wire.stride_letters(model.stride))
        quantum = "yes" if model.quantum_impacted else "no"
        print(f"{int(model.id):>2}  {model.name:<{width}}  {quantum:<7}  {letters}")
    return 0


def _describe_place(model: AttackModel, place: str) -> str:
    spec = next((s for s in model.preconditions if s.place == place), None)
    notes = []
    if spec is not None and spec.capability is not None:
        notes.append(spec.capability.value)
    if spec is not None and spec.group is not None:
        notes.append(f"group {spec.group}")
    suffix = f" [{', '.join(notes)}]" if notes else ""
    return f"  {place}{suffix}  {model.net.place_label(place)}"


def _cmd_show(args) -> int:
    model = _resolve_attack(args.attack)
    if args.json:
        _emit_json(wire.model_detail(model))
        return 0
    net = model.net
    number = f" (attack {int(model.id)})" if model.id is not None else ""
    print(_styled(f"{model.name}{number}", args.color))
    print(f"quantum-impacted: {'yes' if model.quantum_impacted else 'no'}")
    print(f"STRIDE: {', '.join(wire.stride_letters(model.stride))}")
    print("vulnerabilities: "
          + ", ".join(wire.vulnerability_names(model.vulnerabilities)))
    print("motivations: " + ", ".join(wire.motivation_names(model.motivations)))
    print("influences: " + (", ".join(str(n) for n in sorted(model.influences))
                            or "(none)"))
    print()
    print("preconditions:")
    for spec in model.preconditions:
        print(_describe_place(model, spec.place))
    internal = sorted(net.place_ids - model.precondition_places
                      - model.postconditions)
    if internal:
        print("internal places:")
        for place in internal:
            print(f"  {place}  {net.place_label(place)}")
    print("postconditions:")
    for place in sorted(model.postconditions):
        print(f"  {place}  {net.place_label(place)}")
    print("transitions:")
    for tid in sorted(net.transition_ids):
        print(f"  {tid}  {net.transition_label(tid)}")
    print("arcs:")
    for arc in sorted(net.arcs, key=lambda a: (a.source, a.target)):
        weight = f" * {arc.weight}" if arc.weight != 1 else ""
        read = " (read)" if arc.read_only else ""
        print(f"  {arc.source} -> {arc.target}{weight}{read}")
    if model.provenance_note:
        print("provenance:")
        print(f"  {model.provenance_note}")
    return 0


def _cmd_reach(args) -> int:
    model = _resolve_attack(args.attack)
    profile = _resolve_profile(args.profile)
    if args.goal is not None and args.goal not in model.postconditions:
        raise _InputError(
            f"{args.goal!r} is not a postcondition of {model.name!r}")
    report = feasibility(model, profile)
    if args.json:
        _emit_json(wire.feasibility_payload(report))
    goals = [args.goal] if args.goal is not None else sorted(model.postconditions)
    failed = False
    for goal in goals:
        if goal in report.reachable_goals:
            line = " ".join(report.witnesses[goal])
        else:
            failed = True
            extras = report.blocked.get(goal)
            line = "unreachable"
            if extras:
                line += f" (acquire: {', '.join(wire.capability_names(extras))})"
        if not args.json:
            print(line if args.goal is not None else f"{goal}: {line}")
    return 1 if failed else 0


def _cmd_cuts(args) -> int:
    model = _resolve_attack(args.attack)
    try:
        cut = minimal_precondition_sets(model, args.goal)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    if args.json:
        _emit_json(wire.cuts_payload(cut))
        return 0
    for chosen in cut.sets:
        print(" ".join(chosen))
    return 0


def _cmd_chains(args) -> int:
    model = _resolve_attack(args.attack)
    payload = wire.chains_payload(int(model.id))
    if args.json:
        _emit_json(payload)
        return 0

    def described(numbers) -> str:
        if not numbers:
            return "(none)"
        return ", ".join(f"{n} ({get_model(n).name})" for n in numbers)

    print(f"direct: {described(payload['direct'])}")
    print(f"transitive: {described(payload['closure'])}")
    return 0


def _cmd_stride(args) -> int:
    if (args.attack is None) == (args.threat is None):
        raise _UsageError("give an attack or --threat, not both")
    if args.threat is not None:
        numbers = attacks_exposing(StrideThreat(args.threat))
        if args.json:
            _emit_json(numbers)
        else:
            for number in numbers:
                print(f"{number} {get_model(number).name}")
        return 0
    model = _resolve_attack(args.attack)
    letters = wire.stride_letters(model.stride)
    if args.json:
        _emit_json(letters)
    else:
        print(", ".join(letters))
    return 0


def _cmd_vulns(args) -> int:
    if (args.attack is None) == (args.vuln_class is None):
        raise _UsageError("give an attack or --class, not both")
    if args.vuln_class is not None:
        numbers = attacks_for(VulnerabilityClass(args.vuln_class))
        if args.json:
            _emit_json(numbers)
        else:
            for number in numbers:
                print(f"{number} {get_model(number).name}")
        return 0
    model = _resolve_attack(args.attack)
    names = wire.vulnerability_names(model.vulnerabilities)
    if args.json:
        _emit_json(names)
    else:
        print(", ".join(names))
    return 0


def _cmd_export_dot(args) -> int:
    model = _resolve_attack(args.attack)
    text = to_dot(model.net)
    if args.output is not None:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return 0


def _cmd_check(args) -> int:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read {args.file}: {exc}") from None
    result = parse(text)
    for diagnostic in result.diagnostics:
        print(f"{args.file}:{diagnostic}", file=sys.stderr)
    if result.model is None:
        return 3
    print(f"ok: {result.model.name}")
    return 0


def _print_state(model: AttackModel, marking: Marking, history: List[str]) -> None:
    assignments = [f"{place}={marking.tokens(place)}"
                   for place in sorted(marking.places())]
    print(f"marking: {_join(assignments, '(empty)')}")
    print(f"enabled: {_join(sorted(enabled(model.net, marking)))}")
    print("satisfied: " + _join(sorted(
        place for place in model.postconditions
        if marking.tokens(place) >= 1)))
    print(f"history: {_join(history)}")


def _cmd_simulate(args) -> int:
    model = _resolve_attack(args.attack)
    profile = _resolve_profile(args.profile)
    if args.chosen is not None:
        chosen = frozenset(part.strip() for part in args.chosen.split(",")
                           if part.strip())
    else:
        chosen = frozenset(seedable_places(model, profile))
    try:
        marking = seed_marking(model, profile, chosen)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    history: List[str] = []

    if args.interactive:
        while True:
            _print_state(model, marking, history)
            try:
                line = input("fire> ")
            except EOFError:
                break
            transition = line.strip()
            if not transition or transition in ("quit", "exit"):
                break
            try:
                marking = fire(model.net, marking, transition)
                history.append(transition)
            except NotEnabledError:
                print(f"not enabled: {transition}", file=sys.stderr)
            except ValueError:
                print(f"unknown transition: {transition}", file=sys.stderr)
        print("final state:")
        _print_state(model, marking, history)
        return 0

    script = [part.strip() for part in (args.script or "").split(",")
              if part.strip()]
    for transition in script:
        try:
            marking = fire(model.net, marking, transition)
        except NotEnabledError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except ValueError as exc:
            raise _InputError(str(exc)) from None
        history.append(transition)
    if args.json:
        _emit_json(wire.session_payload(model, profile, chosen,
                                        marking, tuple(history)))
    else:
        _print_state(model, marking, history)
    return 0


def _cmd_serve(args) -> int:
    from attacknets.service import serve

    serve(bind=args.bind, port=args.port)
    return 0


# -- parser -------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attacknets",
        description="Petri-net toolkit for modelling blockchain attacks.")
    parser.add_argument("--color", action="store_true",
                        help="use ANSI styling in human output")
    commands = parser.add_subparsers(dest="command", required=True,
                                     metavar="command")

    def command(name, handler, help_text, *, json_flag=True):
        sub = commands.add_parser(name, help=help_text, description=help_text)
        sub.set_defaults(handler=handler)
        if json_flag:
            sub.add_argument("--json", action="store_true",
                             help="emit the service-api JSON payload")
        return sub

    command("list", _cmd_list, "list the built-in attack models")

    sub = command("show", _cmd_show, "print one model's net and metadata")
    sub.add_argument("attack", help="attack number or unique name prefix")

    sub = command("reach", _cmd_reach,
                  "shortest firing sequences reaching attack outcomes")
    sub.add_argument("attack")
    sub.add_argument("--profile", default=_ALL_CAPABILITIES,
                     help="comma-separated capabilities (default: all)")
    sub.add_argument("--goal", help="one postcondition place (default: all)")

    sub = command("cuts", _cmd_cuts,
                  "minimal precondition sets reaching a goal")
    sub.add_argument("attack")
    sub.add_argument("--goal", required=True, help="a postcondition place")

    sub = command("chains", _cmd_chains,
                  "direct and transitive influenced attacks")
    sub.add_argument("attack")

    sub = command("stride", _cmd_stride, "STRIDE lookups")
    sub.add_argument("attack", nargs="?")
    sub.add_argument("--threat", choices=_STRIDE_CHOICES,
                     help="list attacks exposing one threat")

    sub = command("vulns", _cmd_vulns, "vulnerability class lookups")
    sub.add_argument("attack", nargs="?")
    sub.add_argument("--class", dest="vuln_class", choices=_VULN_CHOICES,
                     help="list attacks exploiting one class")

    sub = command("export-dot", _cmd_export_dot,
                  "write the net in Graphviz DOT form", json_flag=False)
    sub.add_argument("attack")
    sub.add_argument("-o", "--output", help="output file (default: stdout)")

    sub = command("check", _cmd_check,
                  "parse and validate an .apnet document", json_flag=False)
    sub.add_argument("file")

    sub = command("simulate", _cmd_simulate, "play the token game")
    sub.add_argument("attack")
    sub.add_argument("--profile", default=_ALL_CAPABILITIES)
    sub.add_argument("--chosen",
                     help="comma-separated precondition places to seed "
                          "(default: all the profile allows)")
    sub.add_argument("--script", help="comma-separated transitions to fire")
    sub.add_argument("--interactive", action="store_true",
                     help="read transitions from standard input")

    sub = command("serve", _cmd_serve, "run the HTTP service",
                  json_flag=False)
    sub.add_argument("--bind", help="bind address (default: env or 127.0.0.1)")
    sub.add_argument("--port", type=int,
                     help="port (default: env or 8741)")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except StateCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
