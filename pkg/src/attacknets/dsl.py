"""Line-oriented text format (``.apnet``) for attack models.

A document is a sequence of statements, one per line; ``#`` starts a
comment and blank lines are ignored.  The first statement must be the net
header.  Forward references are allowed: arcs and markings may mention
places and transitions declared further down.

::

    net "Replay"
    place P1 kind=pre "A hard fork has occurred, ..."
    place P2 kind=pre cap=classical group=ways "Attacker has copied ..."
    place P3 kind=post "One transaction is validated twice ..."
    place I1 "An internal milestone"          # kind defaults to internal
    transition T_exec "Replay the copied transactions ..."
    arc P1 -> T_exec
    read P2 -> T_exec                         # test-without-consume
    arc T_exec -> P3 * 2                      # weighted arc
    marking P1=1
    meta id = 13
    meta stride = S, T
    meta quantum = false

Place attributes: ``kind=pre|post|internal`` (default ``internal``),
``cap=classical|quantum|physical|any`` and ``group=NAME`` (both only on
``kind=pre`` places; ``cap`` defaults to ``any``).  Meta keys: ``id``,
``influences``, ``motivations``, ``provenance``, ``quantum``, ``stride``,
``vulns``; unknown meta keys are warnings, every other irregularity is an
error.  Labels and the ``provenance`` value are double-quoted strings with
``\\\\``, ``\\"``, ``\\n``, ``\\r`` and ``\\t`` escapes.

:func:`parse` returns a :class:`ParseResult` whose diagnostics carry
1-based line/column spans; the model is only built when there are no
errors.  :func:`serialize` emits a canonical form (sorted declarations,
default attributes omitted) that :func:`parse` maps back to an equal
model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from attacknets.catalog import (
    AttackId,
    AttackModel,
    Capability,
    Motivation,
    PreconditionSpec,
    StrideThreat,
    VulnerabilityClass,
)
from attacknets.petri import Arc, Marking, PetriNet, validate_net

__all__ = [
    "SourceSpan",
    "ParseDiagnostic",
    "ParseResult",
    "parse",
    "serialize",
]


@dataclass(frozen=True)
class SourceSpan:
    """1-based line and column of a region of source text."""

    line: int
    column: int
    length: int


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str  # "error" or "warning"
    message: str
    span: SourceSpan

    def __str__(self) -> str:
        return (f"{self.span.line}:{self.span.column}: "
                f"{self.severity}: {self.message}")


@dataclass
class ParseResult:
    """Outcome of parsing a document: a model unless any error occurred."""

    model: Optional[AttackModel]
    diagnostics: List[ParseDiagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.model is not None

    def errors(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]

    def warnings(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == "warning"]


# --------------------------------------------------------------------------
# Tokenizer
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # "word", "string", "arrow", "star", "equals", "comma"
    text: str  # raw source text
    value: str  # decoded value (unescaped for strings)
    column: int  # 1-based
    length: int

    def span(self, line: int) -> SourceSpan:
        return SourceSpan(line, self.column, self.length)


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_INT_RE = re.compile(r"[0-9]+\Z")
# A word never starts or ends with "-", so "A->B" splits into word/arrow/word.
_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t]+)"
    r"|(?P<arrow>->)"
    r"|(?P<star>\*)"
    r"|(?P<equals>=)"
    r"|(?P<comma>,)"
    r"|(?P<word>[A-Za-z0-9_]+(?:-[A-Za-z0-9_]+)*)"
)

_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}
_QUOTE_MAP = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _quote(text: str) -> str:
    return '"' + "".join(_QUOTE_MAP.get(ch, ch) for ch in text) + '"'


class _Tokenizer:
    def __init__(self, reporter):
        self._error = reporter

    def tokenize(self, line: str, lineno: int) -> Optional[List[_Token]]:
        """Tokens for one line, or None if the line fails to tokenize."""
        tokens: List[_Token] = []
        pos = 0
        while pos < len(line):
            ch = line[pos]
            if ch == "#":
                break
            if ch == '"':
                token = self._scan_string(line, lineno, pos)
                if token is None:
                    return None
                tokens.append(token)
                pos += token.length
                continue
            match = _TOKEN_RE.match(line, pos)
            if match is None:
                self._error(f"unexpected character {ch!r}",
                            SourceSpan(lineno, pos + 1, 1))
                return None
            if match.lastgroup != "ws":
                text = match.group()
                tokens.append(_Token(match.lastgroup, text, text,
                                     pos + 1, len(text)))
            pos = match.end()
        return tokens

    def _scan_string(self, line: str, lineno: int, start: int) -> Optional[_Token]:
        parts: List[str] = []
        pos = start + 1
        while pos < len(line):
            ch = line[pos]
            if ch == '"':
                raw = line[start:pos + 1]
                return _Token("string", raw, "".join(parts),
                              start + 1, len(raw))
            if ch == "\\":
                if pos + 1 >= len(line) or line[pos + 1] not in _ESCAPES:
                    found = line[pos:pos + 2]
                    self._error(f"unknown escape sequence {found!r}",
                                SourceSpan(lineno, pos + 1, 2))
                    return None
                parts.append(_ESCAPES[line[pos + 1]])
                pos += 2
                continue
            parts.append(ch)
            pos += 1
        self._error("unterminated string",
                    SourceSpan(lineno, start + 1, len(line) - start))
        return None


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

_PLACE_KINDS = ("pre", "post", "internal")
_CAP_NAMES = ("classical", "quantum", "physical", "any")
_META_KEYS = ("id", "influences", "motivations", "provenance",
              "quantum", "stride", "vulns")

_STRIDE_BY_LETTER = {member.value: member for member in StrideThreat}
_VULN_BY_NAME = {member.value: member for member in VulnerabilityClass}
_MOTIVE_BY_NAME = {member.value: member for member in Motivation}


@dataclass
class _PlaceDecl:
    label: str
    kind: str
    capability: Optional[Capability]
    group: Optional[str]


class _Parser:
    def __init__(self):
        self.diagnostics: List[ParseDiagnostic] = []
        self.name: Optional[str] = None
        self.places: Dict[str, _PlaceDecl] = {}
        self.transitions: Dict[str, str] = {}
        self.arcs: List[Arc] = []
        self.marking: Dict[str, int] = {}
        self.meta: Dict[str, object] = {}
        self._arc_pairs: set = set()
        self._header_span: Optional[SourceSpan] = None

    # -- diagnostics -------------------------------------------------------

    def error(self, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(ParseDiagnostic("error", message, span))

    def warning(self, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(ParseDiagnostic("warning", message, span))

    # -- driver ------------------------------------------------------------

    def parse(self, text: str) -> ParseResult:
        tokenizer = _Tokenizer(self.error)
        lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
        statements: List[Tuple[int, List[_Token]]] = []
        for lineno, line in enumerate(lines, start=1):
            tokens = tokenizer.tokenize(line, lineno)
            if tokens:
                statements.append((lineno, tokens))

        declarations = {"net": self._stmt_net, "place": self._stmt_place,
                        "transition": self._stmt_transition}
        uses = {"arc": self._stmt_arc, "read": self._stmt_arc,
                "marking": self._stmt_marking, "meta": self._stmt_meta}

        # First pass declares names so arcs and markings may appear anywhere.
        deferred: List[Tuple[int, List[_Token]]] = []
        for index, (lineno, tokens) in enumerate(statements):
            head = tokens[0]
            if index == 0 and not (head.kind == "word" and head.text == "net"):
                self.error("expected a net header as the first statement",
                           head.span(lineno))
            if head.kind == "word" and head.text in declarations:
                declarations[head.text](lineno, tokens)
            elif head.kind == "word" and head.text in uses:
                deferred.append((lineno, tokens))
            else:
                self.error(f"unknown directive {head.text!r}", head.span(lineno))
        for lineno, tokens in deferred:
            uses[tokens[0].text](lineno, tokens)

        if self.name is None and not self.errors_present():
            last = len(lines)
            self.error("expected a net header as the first statement",
                       SourceSpan(max(last, 1), 1, 1))

        if self.errors_present():
            return ParseResult(None, self.diagnostics)
        return ParseResult(self._build(), self.diagnostics)

    def errors_present(self) -> bool:
        return any(d.severity == "error" for d in self.diagnostics)

    # -- statement handlers --------------------------------------------------

    def _stmt_net(self, lineno: int, tokens: List[_Token]) -> None:
        if self.name is not None:
            self.error("duplicate net header", tokens[0].span(lineno))
            return
        rest = tokens[1:]
        if len(rest) != 1 or rest[0].kind != "string":
            self.error("expected a quoted net name", tokens[0].span(lineno))
            return
        self.name = rest[0].value
        self._header_span = tokens[0].span(lineno)

    def _declare(self, name_token: _Token, lineno: int) -> Optional[str]:
        if name_token.kind != "word" or not _IDENT_RE.match(name_token.text):
            self.error(f"invalid identifier {name_token.text!r}",
                       name_token.span(lineno))
            return None
        name = name_token.text
        if name in self.places or name in self.transitions:
            self.error(f"duplicate identifier {name!r}", name_token.span(lineno))
            return None
        return name

    def _stmt_place(self, lineno: int, tokens: List[_Token]) -> None:
        if len(tokens) < 2:
            self.error("expected a place identifier", tokens[0].span(lineno))
            return
        name = self._declare(tokens[1], lineno)
        if name is None:
            return
        decl = _PlaceDecl(name, "internal", None, None)
        seen_attrs: set = set()
        gated_spans: Dict[str, SourceSpan] = {}
        rest = tokens[2:]
        index = 0
        while index < len(rest):
            token = rest[index]
            if token.kind == "string":
                if index != len(rest) - 1:
                    extra = rest[index + 1]
                    self.error(f"unexpected token {extra.text!r} after the label",
                               extra.span(lineno))
                decl.label = token.value
                break
            if (token.kind != "word" or index + 2 >= len(rest)
                    or rest[index + 1].kind != "equals"
                    or rest[index + 2].kind != "word"):
                self.error(f"unexpected token {token.text!r}", token.span(lineno))
                break
            key, value_token = token.text, rest[index + 2]
            value = value_token.text
            index += 3
            if key in seen_attrs:
                self.error(f"duplicate attribute {key!r}", token.span(lineno))
                continue
            seen_attrs.add(key)
            if key == "kind":
                if value not in _PLACE_KINDS:
                    self.error(f"unknown kind {value!r} (expected one of "
                               f"{', '.join(_PLACE_KINDS)})",
                               value_token.span(lineno))
                    continue
                decl.kind = value
            elif key == "cap":
                if value not in _CAP_NAMES:
                    self.error(f"unknown capability {value!r} (expected one of "
                               f"{', '.join(_CAP_NAMES)})",
                               value_token.span(lineno))
                    continue
                decl.capability = None if value == "any" else Capability(value)
                gated_spans[key] = token.span(lineno)
            elif key == "group":
                if not _IDENT_RE.match(value):
                    self.error(f"invalid identifier {value!r}",
                               value_token.span(lineno))
                    continue
                decl.group = value
                gated_spans[key] = token.span(lineno)
            else:
                self.error(f"unknown place attribute {key!r}", token.span(lineno))
        if decl.kind != "pre":
            for key, span in sorted(gated_spans.items()):
                self.error(f"attribute {key!r} is only allowed on places "
                           f"declared kind=pre", span)
        self.places[name] = decl

    def _stmt_transition(self, lineno: int, tokens: List[_Token]) -> None:
        if len(tokens) < 2:
            self.error("expected a transition identifier", tokens[0].span(lineno))
            return
        name = self._declare(tokens[1], lineno)
        if name is None:
            return
        label = name
        rest = tokens[2:]
        if rest:
            if len(rest) != 1 or rest[0].kind != "string":
                self.error(f"unexpected token {rest[0].text!r}",
                           rest[0].span(lineno))
                return
            label = rest[0].value
        self.transitions[name] = label

    def _endpoint_kind(self, name: str) -> Optional[str]:
        if name in self.places:
            return "place"
        if name in self.transitions:
            return "transition"
        return None

    def _stmt_arc(self, lineno: int, tokens: List[_Token]) -> None:
        read_only = tokens[0].text == "read"
        rest = tokens[1:]
        shape_ok = (len(rest) in (3, 5)
                    and rest[0].kind == "word" and rest[1].kind == "arrow"
                    and rest[2].kind == "word"
                    and (len(rest) == 3 or rest[3].kind == "star"))
        if not shape_ok:
            self.error("expected 'SOURCE -> TARGET' with an optional "
                       "'* WEIGHT'", tokens[0].span(lineno))
            return
        source, target = rest[0].text, rest[2].text
        weight = 1
        if len(rest) == 5:
            weight_token = rest[4]
            if not _INT_RE.match(weight_token.text) or int(weight_token.text) < 1:
                self.error("arc weight must be a positive integer",
                           weight_token.span(lineno))
                return
            weight = int(weight_token.text)
        for name, token in ((source, rest[0]), (target, rest[2])):
            if self._endpoint_kind(name) is None:
                self.error(f"undeclared arc endpoint {name!r}", token.span(lineno))
                return
        source_kind = self._endpoint_kind(source)
        target_kind = self._endpoint_kind(target)
        if source_kind == target_kind:
            self.error("an arc must connect a place and a transition",
                       tokens[0].span(lineno))
            return
        if read_only and source_kind != "place":
            self.error("a read arc must go from a place to a transition",
                       tokens[0].span(lineno))
            return
        if (source, target) in self._arc_pairs:
            self.error(f"duplicate arc {source!r} -> {target!r}",
                       tokens[0].span(lineno))
            return
        self._arc_pairs.add((source, target))
        self.arcs.append(Arc(source, target, weight, read_only))

    def _stmt_marking(self, lineno: int, tokens: List[_Token]) -> None:
        rest = tokens[1:]
        if not rest:
            self.error("expected at least one PLACE=COUNT assignment",
                       tokens[0].span(lineno))
            return
        index = 0
        while index < len(rest):
            if (index + 2 >= len(rest) or rest[index].kind != "word"
                    or rest[index + 1].kind != "equals"):
                self.error("expected PLACE=COUNT", rest[index].span(lineno))
                return
            place_token, count_token = rest[index], rest[index + 2]
            place = place_token.text
            if place not in self.places:
                self.error(f"marking mentions undeclared place {place!r}",
                           place_token.span(lineno))
                return
            if place in self.marking:
                self.error(f"duplicate marking assignment for {place!r}",
                           place_token.span(lineno))
                return
            if count_token.kind != "word" or not _INT_RE.match(count_token.text):
                self.error("marking tokens must be a non-negative integer",
                           count_token.span(lineno))
                return
            self.marking[place] = int(count_token.text)
            index += 3

    def _stmt_meta(self, lineno: int, tokens: List[_Token]) -> None:
        rest = tokens[1:]
        if (len(rest) < 2 or rest[0].kind != "word"
                or rest[1].kind != "equals"):
            self.error("expected 'meta KEY = VALUE'", tokens[0].span(lineno))
            return
        key_token, values = rest[0], rest[2:]
        key = key_token.text
        if key not in _META_KEYS:
            self.warning(f"unknown meta key {key!r} ignored",
                         key_token.span(lineno))
            return
        if key in self.meta:
            self.error(f"duplicate meta key {key!r}", key_token.span(lineno))
            return
        if not values:
            self.error(f"expected a value for meta key {key!r}",
                       key_token.span(lineno))
            return
        parsed = self._parse_meta_value(key, values, lineno)
        if parsed is not None:
            self.meta[key] = parsed

    def _comma_separated(self, values: List[_Token], lineno: int
                         ) -> Optional[List[_Token]]:
        items: List[_Token] = []
        expect_value = True
        for token in values:
            if expect_value:
                if token.kind != "word":
                    self.error(f"unexpected token {token.text!r}",
                               token.span(lineno))
                    return None
                items.append(token)
            elif token.kind != "comma":
                self.error(f"expected ',' between values, got {token.text!r}",
                           token.span(lineno))
                return None
            expect_value = not expect_value
        if expect_value:  # trailing comma
            self.error("expected a value after ','",
                       values[-1].span(lineno))
            return None
        return items

    def _parse_meta_value(self, key: str, values: List[_Token],
                          lineno: int) -> Optional[object]:
        if key == "provenance":
            if len(values) != 1 or values[0].kind != "string":
                self.error("expected a quoted string for meta key 'provenance'",
                           values[0].span(lineno))
                return None
            return values[0].value
        if key == "quantum":
            text = values[0].text
            if len(values) != 1 or text not in ("true", "false"):
                self.error(f"expected true or false, got {values[0].text!r}",
                           values[0].span(lineno))
                return None
            return text == "true"
        if key == "id":
            if len(values) != 1 or not _INT_RE.match(values[0].text):
                self.error(f"malformed integer {values[0].text!r}",
                           values[0].span(lineno))
                return None
            number = int(values[0].text)
            if not 1 <= number <= 13:
                self.error(f"attack id must be between 1 and 13, got {number}",
                           values[0].span(lineno))
                return None
            return AttackId(number)
        items = self._comma_separated(values, lineno)
        if items is None:
            return None
        if key == "influences":
            targets = []
            for token in items:
                if not _INT_RE.match(token.text):
                    self.error(f"malformed integer {token.text!r}",
                               token.span(lineno))
                    return None
                number = int(token.text)
                if not 1 <= number <= 13:
                    self.error("influence targets must be attack numbers "
                               f"between 1 and 13, got {number}",
                               token.span(lineno))
                    return None
                targets.append(number)
            return frozenset(targets)
        lookup, what = {
            "stride": (_STRIDE_BY_LETTER, "STRIDE letter"),
            "vulns": (_VULN_BY_NAME, "vulnerability class"),
            "motivations": (_MOTIVE_BY_NAME, "motivation"),
        }[key]
        members = []
        for token in items:
            member = lookup.get(token.text)
            if member is None:
                self.error(f"unknown {what} {token.text!r}", token.span(lineno))
                return None
            members.append(member)
        return frozenset(members)

    # -- model construction --------------------------------------------------

    def _build(self) -> Optional[AttackModel]:
        header = self._header_span or SourceSpan(1, 1, 1)
        net = PetriNet(
            self.name,
            {name: decl.label for name, decl in self.places.items()},
            self.transitions,
            self.arcs,
            Marking(self.marking),
        )
        for problem in validate_net(net):
            self.error(problem, header)
        preconditions = tuple(
            PreconditionSpec(name, decl.capability, decl.group)
            for name, decl in self.places.items() if decl.kind == "pre")
        postconditions = frozenset(
            name for name, decl in self.places.items() if decl.kind == "post")
        derived = any(spec.capability is Capability.QUANTUM
                      for spec in preconditions)
        quantum = self.meta.get("quantum", derived)
        if quantum != derived:
            self.error(
                f"meta quantum = {'true' if quantum else 'false'} contradicts "
                f"the precondition capabilities (derived "
                f"{'true' if derived else 'false'})", header)
        if self.errors_present():
            return None
        return AttackModel(
            net=net,
            preconditions=preconditions,
            postconditions=postconditions,
            stride=self.meta.get("stride", frozenset()),
            vulnerabilities=self.meta.get("vulns", frozenset()),
            influences=self.meta.get("influences", frozenset()),
            motivations=self.meta.get("motivations", frozenset()),
            quantum_impacted=quantum,
            provenance_note=self.meta.get("provenance", ""),
            id=self.meta.get("id"),
        )


def parse(text: str) -> ParseResult:
    """Parse an ``.apnet`` document into an :class:`AttackModel`."""
    return _Parser().parse(text)


# --------------------------------------------------------------------------
# Serializer
# --------------------------------------------------------------------------

def serialize(model: AttackModel) -> str:
    """Render a model in canonical ``.apnet`` form.

    Declarations are sorted, default attributes (``kind=internal``,
    ``cap=any``, weight 1, labels equal to the identifier) are omitted and
    meta lines come last in fixed key order, so equal models always
    serialize to identical text.
    """
    net = model.net
    pre = {spec.place: spec for spec in model.preconditions}
    lines = [f"net {_quote(net.name)}"]
    for pid in sorted(net.place_ids):
        parts = [f"place {pid}"]
        spec = pre.get(pid)
        if spec is not None:
            parts.append("kind=pre")
            if spec.capability is not None:
                parts.append(f"cap={spec.capability.value}")
            if spec.group is not None:
                parts.append(f"group={spec.group}")
        elif pid in model.postconditions:
            parts.append("kind=post")
        label = net.place_label(pid)
        if label != pid:
            parts.append(_quote(label))
        lines.append(" ".join(parts))
    for tid in sorted(net.transition_ids):
        label = net.transition_label(tid)
        if label != tid:
            lines.append(f"transition {tid} {_quote(label)}")
        else:
            lines.append(f"transition {tid}")
    for arc in sorted(net.arcs, key=lambda a: (a.source, a.target)):
        directive = "read" if arc.read_only else "arc"
        suffix = f" * {arc.weight}" if arc.weight != 1 else ""
        lines.append(f"{directive} {arc.source} -> {arc.target}{suffix}")
    marking = net.initial_marking
    if marking:
        assignments = " ".join(f"{place}={marking.tokens(place)}"
                               for place in sorted(marking.places()))
        lines.append(f"marking {assignments}")
    if model.id is not None:
        lines.append(f"meta id = {int(model.id)}")
    if model.influences:
        lines.append("meta influences = "
                     + ", ".join(str(n) for n in sorted(model.influences)))
    if model.motivations:
        lines.append("meta motivations = " + ", ".join(
            m.value for m in Motivation if m in model.motivations))
    if model.provenance_note:
        lines.append(f"meta provenance = {_quote(model.provenance_note)}")
    lines.append(f"meta quantum = {'true' if model.quantum_impacted else 'false'}")
    if model.stride:
        lines.append("meta stride = " + ", ".join(
            s.value for s in StrideThreat if s in model.stride))
    if model.vulnerabilities:
        lines.append("meta vulns = " + ", ".join(
            v.value for v in VulnerabilityClass if v in model.vulnerabilities))
    return "\n".join(lines) + "\n"
