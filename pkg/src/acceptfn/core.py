"""Finite universes, events as bit masks, exact set-function tables.

Events are plain ``int`` bit masks: bit ``i`` set means atom ``i`` of the
universe belongs to the event.  All values are :class:`fractions.Fraction`;
nothing in the package rounds.
"""

from __future__ import annotations

import math
import re
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (
    BadAtomName,
    DuplicateAtom,
    NotAConfidenceMeasure,
    TooManyAtoms,
    ValidationError,
)

MAX_ATOMS = 16

_ATOM_RE = re.compile(r"[A-Za-z0-9_]+\Z")

Value = Fraction | int | str


def to_fraction(value: Value) -> Fraction:
    """Exact conversion; floats are refused because they are already rounded."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or decimal string")
    return Fraction(value)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_subsets(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class Universe:
    """An ordered, finite set of named atoms (1 to 16 of them)."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise BadAtomName("a universe needs at least one atom")
        if len(atoms) > MAX_ATOMS:
            raise TooManyAtoms(f"{len(atoms)} atoms given, at most {MAX_ATOMS} allowed")
        for name in atoms:
            if not isinstance(name, str) or not _ATOM_RE.match(name):
                raise BadAtomName(f"bad atom name {name!r}")
        seen = set()
        for name in atoms:
            if name in seen:
                raise DuplicateAtom(f"atom {name!r} appears twice")
            seen.add(name)

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full(self) -> int:
        return (1 << len(self.atoms)) - 1

    @property
    def n_events(self) -> int:
        return 1 << len(self.atoms)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.atoms)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown atom {name!r}") from None

    def event(self, names: Iterable[str] | str = ()) -> int:
        """Bit mask of the named atoms; a bare string is one atom name."""
        if isinstance(names, str):
            names = [names]
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def singleton(self, i: int) -> int:
        return 1 << i

    def complement(self, event: int) -> int:
        return self.full ^ event

    def members(self, event: int) -> list[str]:
        return [self.atoms[i] for i in iter_bits(event)]

    def format(self, event: int) -> str:
        return "{" + ",".join(self.members(event)) + "}"

    def events(self) -> range:
        return range(self.n_events)


def make_universe(names: Sequence[str]) -> Universe:
    return Universe(tuple(names))


@dataclass(frozen=True)
class Violation:
    rule: str
    events: tuple[int, ...]
    values: tuple[Fraction, ...]

    def describe(self, universe: Universe) -> str:
        sets = ", ".join(universe.format(e) for e in self.events)
        vals = ", ".join(str(v) for v in self.values)
        return f"{self.rule} at ({sets}) with values ({vals})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=True)
class SetFunction:
    """A full table of exact values indexed by event bit mask.

    Values must lie in [0, 1].  The confidence-measure axioms are *not*
    enforced here; see :func:`validate_confidence`.
    """

    universe: Universe
    table: tuple[Fraction, ...] = field(repr=False)

    def __post_init__(self):
        table = tuple(to_fraction(v) for v in self.table)
        if len(table) != self.universe.n_events:
            raise ValidationError(
                f"table has {len(table)} entries, expected {self.universe.n_events}"
            )
        for ev, v in enumerate(table):
            if v < 0 or v > 1:
                raise ValidationError(
                    f"value {v} at {self.universe.format(ev)} is outside [0, 1]"
                )
        object.__setattr__(self, "table", table)

    @classmethod
    def from_callable(cls, universe: Universe, fn: Callable[[int], Value]) -> SetFunction:
        return cls(universe, tuple(fn(ev) for ev in universe.events()))

    def __call__(self, event: int) -> Fraction:
        return self.table[event]

    def __repr__(self):
        return f"SetFunction({' '.join(self.universe.atoms)}: {len(self.table)} entries)"

    @cached_property
    def confidence_report(self) -> ValidationReport:
        return validate_confidence(self)

    def require_confidence(self) -> None:
        report = self.confidence_report
        if not report.ok:
            raise NotAConfidenceMeasure(report)

    @cached_property
    def scaled(self) -> np.ndarray:
        """The table times the common denominator, as integers.

        Order comparisons on the result agree exactly with the rational table,
        which is what the vectorized sweeps rely on.
        """
        denom = math.lcm(*(v.denominator for v in self.table))
        ints = [v.numerator * (denom // v.denominator) for v in self.table]
        if denom < 2**62:
            return np.array(ints, dtype=np.int64)
        return np.array(ints, dtype=object)


@dataclass(frozen=True)
class SignedMass:
    """Möbius inverse of a set function; entries may be negative."""

    universe: Universe
    values: tuple[Fraction, ...] = field(repr=False)

    def __getitem__(self, event: int) -> Fraction:
        return self.values[event]

    def nonzero(self) -> dict[int, Fraction]:
        return {ev: v for ev, v in enumerate(self.values) if v != 0}

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def most_negative(self) -> tuple[int, Fraction]:
        """Event with the smallest entry (lowest bit mask on ties)."""
        ev = min(range(len(self.values)), key=lambda e: (self.values[e], e))
        return ev, self.values[ev]

    def zeta(self) -> tuple[Fraction, ...]:
        """Sum the masses back over subsets: inverse of :func:`moebius`."""
        vals = list(self.values)
        for i in range(self.universe.size):
            bit = 1 << i
            for ev in range(len(vals)):
                if ev & bit:
                    vals[ev] += vals[ev ^ bit]
        return tuple(vals)


def strictly_greater(x, y) -> np.ndarray:
    """Elementwise ``x > y`` as a real boolean array, also for object-dtype tables."""
    return np.asarray(x > y, dtype=bool)


def validate_confidence(f: SetFunction) -> ValidationReport:
    """Check g(empty)=0, g(universe)=1 and monotonicity.

    Monotonicity is checked on covering pairs (A, A plus one atom) only,
    which is equivalent by transitivity.
    """
    u = f.universe
    t = f.table
    violations = []
    if t[0] != 0:
        violations.append(Violation("empty", (0,), (t[0],)))
    if t[u.full] != 1:
        violations.append(Violation("total", (u.full,), (t[u.full],)))
    for ev in u.events():
        for i in range(u.size):
            bit = 1 << i
            if not ev & bit and t[ev] > t[ev | bit]:
                violations.append(Violation("monotone", (ev, ev | bit), (t[ev], t[ev | bit])))
    return ValidationReport(tuple(violations))


def moebius(f: SetFunction) -> SignedMass:
    """m(A) = sum over B subset of A of (-1)^|A-B| f(B), by the fast in-place transform."""
    vals = list(f.table)
    for i in range(f.universe.size):
        bit = 1 << i
        for ev in range(len(vals)):
            if ev & bit:
                vals[ev] -= vals[ev ^ bit]
    return SignedMass(f.universe, tuple(vals))


@dataclass(frozen=True)
class BeliefCheck:
    is_belief: bool
    mass: SignedMass
    witness: int | None = None

    def __bool__(self):
        return self.is_belief


def is_belief_function(f: SetFunction) -> BeliefCheck:
    """A confidence measure is a belief function iff its Möbius inverse is non-negative.

    On failure the witness is the event holding the most negative mass.
    """
    f.require_confidence()
    m = moebius(f)
    ev, low = m.most_negative()
    if low < 0:
        return BeliefCheck(False, m, ev)
    return BeliefCheck(True, m)


def dual(f: SetFunction) -> SetFunction:
    """h(A) = 1 - f(complement of A)."""
    full = f.universe.full
    t = f.table
    return SetFunction(f.universe, tuple(1 - t[full ^ ev] for ev in range(len(t))))
