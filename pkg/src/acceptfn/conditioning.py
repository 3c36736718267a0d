"""Conditioned belief bases, context tolerance, and the numeric conditioning rules.

Conditional acceptance of A given C is read at the base level:
f(A & C) > f(not A & C).  Sweeps run on the integer-scaled table
(:attr:`SetFunction.scaled`) so comparisons stay exact while numpy does the
enumeration.  Every sweep reports the lexicographically least counterexample.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .acceptance import ORACLE_MAX_ATOMS, is_acceptance
from .core import SetFunction, Universe, iter_bits
from .core import strictly_greater as _gt
from .errors import (
    EmptyContext,
    NotAcceptanceFunction,
    UniverseTooLargeForExhaustive,
    UniverseTooLargeForOracle,
    ZeroPossibilityContext,
    ZeroProbabilityContext,
)
from .measures import PossibilityDistribution, ProbabilityDistribution

PROPERTY_A_MAX_ATOMS = 8
PROPERTY_B_MAX_ATOMS = 10
DEFAULT_SAMPLES = 20000


def _check_context(f: SetFunction, context: int) -> None:
    if context == 0:
        raise EmptyContext("context must be a nonempty event")
    if context & ~f.universe.full:
        raise ValueError("context is outside the universe")


def conditioned_base(f: SetFunction, context: int) -> list[int]:
    """Events A with f(A & C) > f(not A & C)."""
    _check_context(f, context)
    f.require_confidence()
    t = f.table
    return [ev for ev in f.universe.events() if t[ev & context] > t[~ev & context]]


@dataclass(frozen=True)
class ConditionedReport:
    context: int
    base_size: int
    is_belief_set: bool
    violation_witness: tuple[int, int] | None = None
    conditioned_kernel: int | None = None

    def __bool__(self):
        return self.is_belief_set


def is_conditioned_base_belief_set(f: SetFunction, context: int) -> ConditionedReport:
    """Closure of the conditioned base under intersection, checked pair by pair."""
    if f.universe.size > ORACLE_MAX_ATOMS:
        raise UniverseTooLargeForOracle(
            f"pairwise check limited to {ORACLE_MAX_ATOMS} atoms, got {f.universe.size}"
        )
    base = conditioned_base(f, context)
    members = set(base)
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            if a & b not in members:
                return ConditionedReport(context, len(base), False, (a, b))
    k = f.universe.full
    for ev in base:
        k &= ev
    return ConditionedReport(context, len(base), True, conditioned_kernel=k if base else None)


class Mode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of a property sweep.

    In sampled mode ``holds`` means only that no counterexample was found
    among ``samples`` draws.
    """

    property: str
    holds: bool
    mode: Mode
    counterexample: tuple[int, int, int] | None = None
    values: tuple[Fraction, ...] | None = None
    samples: int | None = None
    agrees_with_other: bool | None = None

    def __bool__(self):
        return self.holds

    @property
    def status(self) -> str:
        if not self.holds:
            return "fails"
        return "holds" if self.mode is Mode.EXHAUSTIVE else "no-counterexample"


def _pick_mode(n, cap, max_exhaustive, samples, prop):
    limit = cap if max_exhaustive is None else max_exhaustive
    if n <= limit:
        return Mode.EXHAUSTIVE
    if samples is None:
        raise UniverseTooLargeForExhaustive(
            f"property {prop}: {n} atoms exceeds the exhaustive limit {limit}; "
            "pass a sample count for a sampled check"
        )
    return Mode.SAMPLED


def _property_a_values(f, c, s, t):
    st = s & t
    return (f(s & c), f(~s & c), f(t & c), f(~t & c), f(st & c), f(~st & c))


def check_property_A(
    f: SetFunction,
    *,
    max_exhaustive: int | None = None,
    samples: int | None = None,
    seed: int = 0,
) -> PropertyReport:
    """For every context C: if S and T are accepted given C, so is S & T.

    Only S & C and T & C matter, so the exhaustive sweep enumerates, per
    context, pairs of subsets of C; the least counterexample over all
    triples (C, S, T) always has S, T inside C.
    """
    f.require_confidence()
    u = f.universe
    mode = _pick_mode(u.size, PROPERTY_A_MAX_ATOMS, max_exhaustive, samples, "A")
    g = f.scaled
    full = u.full
    if mode is Mode.EXHAUSTIVE:
        ar = np.arange(u.n_events, dtype=np.int64)
        for c in range(1, full + 1):
            if g[c] == 0:
                continue
            subs = ar[(ar & c) == ar]
            acc = subs[_gt(g[subs], g[c ^ subs])]
            if len(acc) < 2:
                continue
            both = acc[:, None] & acc[None, :]
            bad = ~_gt(g[both], g[c ^ both])
            if bad.any():
                i, j = np.argwhere(bad)[0]
                s, t = int(acc[i]), int(acc[j])
                return PropertyReport("A", False, mode, (c, s, t), _property_a_values(f, c, s, t))
        return PropertyReport("A", True, mode)

    rng = np.random.default_rng(seed)
    C = rng.integers(1, full + 1, size=samples)
    S = rng.integers(0, full + 1, size=samples) & C
    T = rng.integers(0, full + 1, size=samples) & C
    ST = S & T
    bad = _gt(g[S], g[C ^ S]) & _gt(g[T], g[C ^ T]) & ~_gt(g[ST], g[C ^ ST])
    if bad.any():
        idx = np.flatnonzero(bad)
        k = idx[np.lexsort((T[idx], S[idx], C[idx]))[0]]
        c, s, t = int(C[k]), int(S[k]), int(T[k])
        return PropertyReport("A", False, mode, (c, s, t), _property_a_values(f, c, s, t), samples)
    return PropertyReport("A", True, mode, samples=samples)


def _split_assignments(codes: np.ndarray, n: int):
    """Decode base-4 digits: 1 puts the atom in A, 2 in B, 3 in E."""
    A = np.zeros_like(codes)
    B = np.zeros_like(codes)
    E = np.zeros_like(codes)
    for i in range(n):
        d = (codes >> (2 * i)) & 3
        A |= (d == 1).astype(codes.dtype) << i
        B |= (d == 2).astype(codes.dtype) << i
        E |= (d == 3).astype(codes.dtype) << i
    return A, B, E


def _property_b_values(f, a, b, e):
    return (f(a | e), f(b), f(b | e), f(a), f(e), f(a | b))


def check_property_B(
    f: SetFunction,
    *,
    max_exhaustive: int | None = None,
    samples: int | None = None,
    seed: int = 0,
    cross_check: bool = False,
) -> PropertyReport:
    """For mutually exclusive A, B, E: f(A|E) > f(B) and f(B|E) > f(A) imply f(E) > f(A|B).

    The exhaustive sweep covers all 4^n ways of placing each atom in A, B, E
    or none.  With ``cross_check`` (and a universe small enough) property A is
    run as well and ``agrees_with_other`` records whether the verdicts match.
    """
    f.require_confidence()
    u = f.universe
    n = u.size
    mode = _pick_mode(n, PROPERTY_B_MAX_ATOMS, max_exhaustive, samples, "B")
    g = f.scaled
    if mode is Mode.EXHAUSTIVE:
        codes = np.arange(4**n, dtype=np.int64)
    else:
        codes = np.random.default_rng(seed).integers(0, 4**n, size=samples, dtype=np.int64)
    A, B, E = _split_assignments(codes, n)
    bad = _gt(g[A | E], g[B]) & _gt(g[B | E], g[A]) & ~_gt(g[E], g[A | B])
    other = None
    if cross_check and n <= PROPERTY_A_MAX_ATOMS and mode is Mode.EXHAUSTIVE:
        other = bool(check_property_A(f).holds) == (not bad.any())
    n_samples = None if mode is Mode.EXHAUSTIVE else samples
    if bad.any():
        idx = np.flatnonzero(bad)
        k = idx[np.lexsort((E[idx], B[idx], A[idx]))[0]]
        a, b, e = int(A[k]), int(B[k]), int(E[k])
        return PropertyReport(
            "B", False, mode, (a, b, e), _property_b_values(f, a, b, e), n_samples, other
        )
    return PropertyReport("B", True, mode, samples=n_samples, agrees_with_other=other)


def is_independent(f: SetFunction, event: int, context: int) -> bool:
    """A is accepted outright and still accepted given C."""
    _check_context(f, context)
    f.require_confidence()
    full = f.universe.full
    t = f.table
    return t[event] > t[full ^ event] and t[event & context] > t[~event & context & full]


class UpdateClass(str, enum.Enum):
    EXPANSION = "expansion"
    REVISION = "revision"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class UpdateReport:
    update: UpdateClass
    kernel: int
    kernel_candidate: int | None = None
    candidate_verified: bool | None = None


def classify_update(f: SetFunction, context: int) -> UpdateReport:
    """Expansion if C meets the kernel; otherwise revision when f(C) > 0.

    When f(C & K) > f(C - K), C & K is reported as the candidate kernel of
    the measure restricted to C.
    """
    _check_context(f, context)
    report = is_acceptance(f)
    if not report:
        raise NotAcceptanceFunction(report.failure_witness)
    K = report.kernel
    full = f.universe.full
    candidate = verified = None
    if f(context & K) > f(context & (full ^ K)):
        candidate = context & K
        sub, restricted = restrict(f, context)
        rep = is_acceptance(restricted)
        verified = rep.is_acceptance and lift(f.universe, context, rep.kernel) == candidate
    if context & K:
        kind = UpdateClass.EXPANSION
    elif f(context) > 0:
        kind = UpdateClass.REVISION
    else:
        kind = UpdateClass.UNDEFINED
    return UpdateReport(kind, K, candidate, verified)


def condition_probability(d: ProbabilityDistribution, context: int) -> ProbabilityDistribution:
    pc = d.prob(context)
    if context == 0 or pc == 0:
        raise ZeroProbabilityContext(f"P({d.universe.format(context)}) = 0")
    p = tuple(v / pc if context >> i & 1 else Fraction(0) for i, v in enumerate(d.p))
    return ProbabilityDistribution(d.universe, p)


def conditional_possibility_distribution(
    d: PossibilityDistribution, context: int
) -> PossibilityDistribution:
    """Least specific solution of pi(w & C) = min(pi(w | C), Pi(C)), atomwise."""
    pc = d.possibility(context)
    if context == 0 or pc == 0:
        raise ZeroPossibilityContext(f"Pi({d.universe.format(context)}) = 0")
    pi = []
    for i, v in enumerate(d.pi):
        if not context >> i & 1:
            pi.append(Fraction(0))
        elif v == pc:
            pi.append(Fraction(1))
        else:
            pi.append(v)
    return PossibilityDistribution(d.universe, tuple(pi))


def condition_possibility(
    d: PossibilityDistribution, context: int
) -> tuple[SetFunction, SetFunction]:
    """Conditional possibility and necessity given C.

    Pi(A | C) = 1 if Pi(A & C) = Pi(C), else Pi(A & C);
    N(A | C) = 1 - Pi(not A | C).
    """
    pc = d.possibility(context)
    if context == 0 or pc == 0:
        raise ZeroPossibilityContext(f"Pi({d.universe.format(context)}) = 0")
    u = d.universe
    pi_c = []
    for ev in u.events():
        v = d.possibility(ev & context)
        pi_c.append(Fraction(1) if v == pc else v)
    nec_c = [1 - pi_c[u.full ^ ev] for ev in u.events()]
    return SetFunction(u, tuple(pi_c)), SetFunction(u, tuple(nec_c))


def restrict(f: SetFunction, context: int) -> tuple[Universe, SetFunction]:
    """f on the subsets of C, rescaled by f(C), as a measure on C's atoms.

    Used to check that C & K really is the kernel of the restricted measure.
    """
    u = f.universe
    sub = Universe(tuple(u.atoms[i] for i in iter_bits(context)))
    gc = f(context)
    if gc == 0:
        raise EmptyContext(f"f({u.format(context)}) = 0")
    table = [f(lift(u, context, local)) / gc for local in sub.events()]
    return sub, SetFunction(sub, tuple(table))


def lift(universe: Universe, context: int, local: int) -> int:
    """Map an event of the restricted universe back to the full one."""
    ev = 0
    for j, i in enumerate(iter_bits(context)):
        if local >> j & 1:
            ev |= 1 << i
    return ev
