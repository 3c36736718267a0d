"""Belief bases, kernels and the acceptance-function decision.

A confidence measure g accepts A when g(A) > g(complement A).  It is an
acceptance function when its accepted events are closed under intersection.

Fast decision: let K be the intersection of all accepted events.  Every
accepted event contains K, so if K is itself accepted then for accepted A, B
we get g(A & B) >= g(K) > g(not K) >= g(not (A & B)), i.e. the base is
closed.  Conversely a closed base contains the intersection of its members,
which is K.  Hence g is an acceptance function iff its kernel is accepted.
:func:`is_acceptance_bruteforce` checks closure pair by pair and is the
independent oracle for this shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import SetFunction, is_subset, popcount
from .errors import IndifferenceLevelMismatch, UniverseTooLargeForOracle
from .measures import MassAssignment, ProbabilityDistribution, from_mass, from_probability

ORACLE_MAX_ATOMS = 10


def accepted_set(f: SetFunction) -> list[int]:
    """Events A with f(A) > f(complement A), in increasing bit-mask order."""
    f.require_confidence()
    full = f.universe.full
    t = f.table
    return [ev for ev in f.universe.events() if t[ev] > t[full ^ ev]]


def kernel(f: SetFunction) -> int:
    """Intersection of the accepted events; empty when two accepted events are disjoint."""
    k = f.universe.full
    for ev in accepted_set(f):
        k &= ev
    return k


@dataclass(frozen=True)
class AcceptanceReport:
    is_acceptance: bool
    kernel: int
    kernel_value: Fraction
    complement_value: Fraction
    accepted_count: int
    indifference_level: Fraction | None = None
    failure_witness: str | None = None

    def __bool__(self):
        return self.is_acceptance


def is_acceptance(f: SetFunction) -> AcceptanceReport:
    acc = accepted_set(f)
    u = f.universe
    K = u.full
    for ev in acc:
        K &= ev
    Kc = u.full ^ K
    gK, gKc = f(K), f(Kc)
    if not gK > gKc:
        return AcceptanceReport(
            False, K, gK, gKc, len(acc),
            failure_witness=f"kernel {u.format(K)} not accepted: {gK} <= {gKc}",
        )
    level = None
    if popcount(K) >= 2:
        level = _indifference_level(f, K)
    return AcceptanceReport(True, K, gK, gKc, len(acc), indifference_level=level)


def undecided_events(universe, K: int) -> list[int]:
    """Events that neither contain K nor avoid it."""
    return [ev for ev in universe.events() if ev & K and ev & K != K]


def _indifference_level(f: SetFunction, K: int) -> Fraction:
    values = {f(ev) for ev in undecided_events(f.universe, K)}
    if len(values) != 1:
        raise IndifferenceLevelMismatch(
            f"undecided events of kernel {f.universe.format(K)} take values {sorted(values)}"
        )
    (k,) = values
    if not f(f.universe.full ^ K) <= k <= f(K):
        raise IndifferenceLevelMismatch(f"indifference level {k} outside [g(not K), g(K)]")
    return k


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    witness: tuple[int, int] | None = None

    def __bool__(self):
        return self.holds


def is_acceptance_bruteforce(f: SetFunction) -> OracleVerdict:
    """Pairwise closure check of the belief base, straight from the definition.

    The witness is the first failing pair (A, B), A <= B, in bit-mask order.
    """
    if f.universe.size > ORACLE_MAX_ATOMS:
        raise UniverseTooLargeForOracle(
            f"oracle limited to {ORACLE_MAX_ATOMS} atoms, got {f.universe.size}"
        )
    f.require_confidence()
    full = f.universe.full
    t = f.table
    acc = [ev for ev in range(full + 1) if t[ev] > t[full ^ ev]]
    for i, a in enumerate(acc):
        for b in acc[i:]:
            both = a & b
            if not t[both] > t[full ^ both]:
                return OracleVerdict(False, (a, b))
    return OracleVerdict(True)


@dataclass(frozen=True)
class UnitKernel:
    event: int | None
    witness: tuple[int, int] | None = None


def unit_kernel(f: SetFunction) -> UnitKernel:
    """Smallest event of confidence 1, when the certain events form a filter."""
    f.require_confidence()
    u = f.universe
    units = [ev for ev in u.events() if f(ev) == 1]
    k_star = u.full
    for ev in units:
        k_star &= ev
    if f(k_star) == 1:
        return UnitKernel(k_star)
    for i, a in enumerate(units):
        for b in units[i + 1:]:
            if f(a & b) < 1:
                return UnitKernel(None, (a, b))
    raise AssertionError("unit family not closed but no failing pair found")


# Classifiers for belief functions and probabilities.


@dataclass(frozen=True)
class SingletonMajority:
    atom: int
    label = "singleton-majority"

    @property
    def kernel(self) -> int:
        return 1 << self.atom


@dataclass(frozen=True)
class FocalCore:
    core: int
    label = "focal-core"

    @property
    def kernel(self) -> int:
        return self.core


@dataclass(frozen=True)
class TwinSingletons:
    first: int
    second: int
    label = "twin-singletons"

    @property
    def kernel(self) -> int:
        return (1 << self.first) | (1 << self.second)


@dataclass(frozen=True)
class MajorityAtom:
    atom: int
    label = "majority-atom"

    @property
    def kernel(self) -> int:
        return 1 << self.atom


@dataclass(frozen=True)
class HalfHalfPair:
    first: int
    second: int
    label = "half-half-pair"

    @property
    def kernel(self) -> int:
        return (1 << self.first) | (1 << self.second)


@dataclass(frozen=True)
class NotAcceptance:
    """Two accepted events whose intersection is not accepted."""

    witness: tuple[int, int]
    label = "not-acceptance"
    kernel = None


BeliefClassification = SingletonMajority | FocalCore | TwinSingletons | NotAcceptance
ProbClassification = MajorityAtom | HalfHalfPair | NotAcceptance


def _closure_witness(f: SetFunction) -> tuple[int, int]:
    full = f.universe.full
    t = f.table
    acc = [ev for ev in range(full + 1) if t[ev] > t[full ^ ev]]
    for i, a in enumerate(acc):
        for b in acc[i + 1:]:
            if not t[a & b] > t[full ^ (a & b)]:
                return a, b
    raise AssertionError("no closure witness: measure is an acceptance function")


def classify_belief(m: MassAssignment) -> BeliefClassification:
    """Which of the three acceptance shapes a belief function has, if any.

    1. a singleton focal whose mass beats the belief of its complement;
    2. a focal core of two or more atoms inside every focal;
    3. exactly two singleton focals of equal mass, every other focal a
       superset of their union.
    """
    u = m.universe
    focals = m.m
    for i in range(u.size):
        s = 1 << i
        avoiding = sum((v for ev, v in focals.items() if not ev & s), Fraction(0))
        if focals.get(s, 0) > avoiding:
            return SingletonMajority(i)
    for core in focals:
        if popcount(core) >= 2 and all(is_subset(core, ev) for ev in focals):
            return FocalCore(core)
    singles = [ev for ev in focals if popcount(ev) == 1]
    if len(singles) == 2 and focals[singles[0]] == focals[singles[1]]:
        pair = singles[0] | singles[1]
        if all(is_subset(pair, ev) for ev in focals if ev not in singles):
            a, b = (ev.bit_length() - 1 for ev in singles)
            return TwinSingletons(a, b)
    bel, _ = from_mass(m)
    return NotAcceptance(_closure_witness(bel))


def _prob_witness(d: ProbabilityDistribution) -> tuple[int, int]:
    """Shortest prefix and shortest suffix of the atoms sorted by decreasing
    probability that each exceed one half; their intersection does not.

    When p(max) is exactly one half the suffix can swallow the prefix, and the
    pairwise search takes over.
    """
    half = Fraction(1, 2)
    order = sorted(range(d.universe.size), key=lambda i: (-d.p[i], i))
    prefix, total = 0, Fraction(0)
    for i in order:
        prefix |= 1 << i
        total += d.p[i]
        if total > half:
            break
    suffix, total = 0, Fraction(0)
    for i in reversed(order):
        suffix |= 1 << i
        total += d.p[i]
        if total > half:
            break
    if d.prob(prefix & suffix) <= half:
        return prefix, suffix
    return _closure_witness(from_probability(d))


def classify_probability(d: ProbabilityDistribution) -> ProbClassification:
    half = Fraction(1, 2)
    for i, v in enumerate(d.p):
        if v > half:
            return MajorityAtom(i)
    halves = [i for i, v in enumerate(d.p) if v == half]
    if len(halves) == 2:
        return HalfHalfPair(*halves)
    return NotAcceptance(_prob_witness(d))
