"""Line-based measure files.

::

    # comments start with '#'
    universe: a b c
    kind: mass
    m {a} = 3/5
    m {b,c} = 0.4

Kinds and their entry lines:

=======  ====================  =============================================
kind     entry                 defaults
=======  ====================  =============================================
table    ``g {a,b} = 3/5``     {} -> 0 and the full set -> 1; all others required
mass     ``m {a} = 1/2``       none; nonempty sets, positive values, sum 1
prob     ``p a = 1/2``         missing atoms 0; sum 1
poss     ``pi a = 1``          missing atoms 0; max 1
=======  ====================  =============================================

Values are ``p/q`` fractions or decimal literals, both read exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import SetFunction, Universe
from .errors import (
    DuplicateEntry,
    MissingEntry,
    ParseError,
    UniverseError,
    UnknownAtom,
    ValidationError,
)
from .measures import MassAssignment, PossibilityDistribution, ProbabilityDistribution

KINDS = ("table", "mass", "prob", "poss")
_ENTRY_KEY = {"table": "g", "mass": "m", "prob": "p", "poss": "pi"}

_NUMBER_RE = re.compile(r"[+-]?(\d+(/\d+)?|\d+\.\d*|\.\d+)\Z")
_SET_ENTRY_RE = re.compile(r"(?P<key>\w+)\s*(?P<set>\{[^}]*\}?)\s*=\s*(?P<value>\S.*?)?\s*\Z")
_ATOM_ENTRY_RE = re.compile(r"(?P<key>\w+)\s+(?P<atom>\S+)\s*=\s*(?P<value>\S.*?)?\s*\Z")


@dataclass(frozen=True)
class MeasureSpec:
    universe: Universe
    kind: str
    value: SetFunction | MassAssignment | ProbabilityDistribution | PossibilityDistribution


def parse_value(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    text = text.strip()
    if not _NUMBER_RE.match(text):
        raise ParseError(f"bad number {text!r}", line, column)
    return Fraction(text)


def parse_event(universe: Universe, text: str, line: int | None = None, column: int = 1) -> int:
    """Read a set literal such as ``{a, b}``; whitespace inside braces is ignored."""
    s = text.strip()
    offset = column + (len(text) - len(text.lstrip()))
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError(f"malformed set literal {s!r}", line, offset)
    inner = s[1:-1]
    if not inner.strip():
        return 0
    mask = 0
    pos = 1
    for part in inner.split(","):
        name = part.strip()
        col = offset + pos + (len(part) - len(part.lstrip()))
        if not name:
            raise ParseError(f"empty element in set literal {s!r}", line, col)
        try:
            bit = 1 << universe.index(name)
        except KeyError:
            raise UnknownAtom(f"unknown atom {name!r}", line, col) from None
        if mask & bit:
            raise ParseError(f"atom {name!r} repeated in set literal", line, col)
        mask |= bit
        pos += len(part) + 1
    return mask


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield no, body.rstrip()


def _header(lines, key: str):
    try:
        no, body = next(lines)
    except StopIteration:
        raise ParseError(f"missing '{key}:' line") from None
    m = re.match(r"\s*" + key + r"\s*:(.*)\Z", body)
    if not m:
        col = len(body) - len(body.lstrip()) + 1
        raise ParseError(f"expected '{key}: ...'", no, col)
    rest = m.group(1)
    return no, rest, m.start(1) + 1 + len(rest) - len(rest.lstrip())


def parse_measure_file(text: str) -> MeasureSpec:
    lines = _content_lines(text)
    no, rest, col = _header(lines, "universe")
    names = rest.split()
    try:
        universe = Universe(tuple(names))
    except UniverseError as exc:
        raise ParseError(str(exc), no, col) from None

    no, rest, col = _header(lines, "kind")
    kind = rest.strip()
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", no, col)

    entries: dict[int, Fraction] = {}
    where: dict[int, int] = {}
    key = _ENTRY_KEY[kind]
    by_set = kind in ("table", "mass")
    for no, body in lines:
        indent = len(body) - len(body.lstrip())
        m = (_SET_ENTRY_RE if by_set else _ATOM_ENTRY_RE).match(body.strip())
        if not m:
            raise ParseError(f"cannot read entry for kind {kind!r}", no, indent + 1)
        if m.group("key") != key:
            raise ParseError(f"expected '{key}' entries for kind {kind!r}", no, indent + 1)
        if m.group("value") is None:
            raise ParseError("missing value", no, indent + len(body.strip()) + 1)
        vcol = indent + m.start("value") + 1
        value = parse_value(m.group("value"), no, vcol)
        if by_set:
            target = parse_event(universe, m.group("set"), no, indent + m.start("set") + 1)
        else:
            name = m.group("atom")
            try:
                target = universe.index(name)
            except KeyError:
                raise UnknownAtom(f"unknown atom {name!r}", no, indent + m.start("atom") + 1) from None
        if target in entries:
            label = universe.format(target) if by_set else universe.atoms[target]
            raise DuplicateEntry(f"{label} already given on line {where[target]}", no, indent + 1)
        entries[target] = value
        where[target] = no

    return MeasureSpec(universe, kind, _build(universe, kind, entries))


def _build(universe: Universe, kind: str, entries: dict[int, Fraction]):
    if kind == "table":
        table = []
        for ev in universe.events():
            if ev in entries:
                table.append(entries[ev])
            elif ev == 0:
                table.append(Fraction(0))
            elif ev == universe.full:
                table.append(Fraction(1))
            else:
                raise MissingEntry(f"no value for {universe.format(ev)}")
        return SetFunction(universe, tuple(table))
    if kind == "mass":
        if not entries:
            raise ValidationError("mass file has no entries")
        return MassAssignment(universe, entries)
    values = tuple(entries.get(i, Fraction(0)) for i in range(universe.size))
    if kind == "prob":
        return ProbabilityDistribution(universe, values)
    return PossibilityDistribution(universe, values)


def _lines_for(value) -> tuple[Universe, str, list[str]]:
    if isinstance(value, SetFunction):
        u = value.universe
        return u, "table", [f"g {u.format(ev)} = {v}" for ev, v in enumerate(value.table)]
    if isinstance(value, MassAssignment):
        u = value.universe
        return u, "mass", [f"m {u.format(ev)} = {v}" for ev, v in sorted(value.m.items())]
    if isinstance(value, ProbabilityDistribution):
        u = value.universe
        return u, "prob", [f"p {a} = {v}" for a, v in zip(u.atoms, value.p)]
    if isinstance(value, PossibilityDistribution):
        u = value.universe
        return u, "poss", [f"pi {a} = {v}" for a, v in zip(u.atoms, value.pi)]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit_measure_file(value) -> str:
    """Canonical text: universe order, entries by bit mask, fractions in lowest terms."""
    if isinstance(value, MeasureSpec):
        value = value.value
    u, kind, body = _lines_for(value)
    return "\n".join([f"universe: {' '.join(u.atoms)}", f"kind: {kind}", *body]) + "\n"
