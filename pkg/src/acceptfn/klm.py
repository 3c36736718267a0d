"""Conditional assertions A |~ B induced by a confidence measure.

A |~ B holds when f(A & B) > f(A - B): B is accepted in the context A.  This
is the same test as membership in the conditioned base, which is what makes
reflexivity and right weakening follow from monotonicity.

REF and RW hold for every confidence measure and AND holds under property
(B).  OR, CM and CUT are checked empirically; nothing is claimed for them.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import SetFunction
from .core import strictly_greater as _gt
from .conditioning import DEFAULT_SAMPLES, Mode

KLM_MAX_ATOMS = 6


class Rule(str, enum.Enum):
    REF = "ref"
    RW = "rw"
    AND = "and"
    OR = "or"
    CM = "cm"
    CUT = "cut"


ALL_RULES = tuple(Rule)


@dataclass(frozen=True)
class Conditional:
    antecedent: int
    consequent: int


def entails(f: SetFunction, antecedent: int, consequent: int) -> bool:
    f.require_confidence()
    return f(antecedent & consequent) > f(antecedent & ~consequent)


@dataclass(frozen=True)
class RuleResult:
    rule: Rule
    status: str
    counterexample: tuple[int, ...] | None = None
    values: tuple[Fraction, ...] | None = None

    @property
    def fails(self) -> bool:
        return self.counterexample is not None


@dataclass(frozen=True)
class KlmReport:
    mode: Mode
    results: dict[Rule, RuleResult] = field(default_factory=dict)
    samples: int | None = None

    @property
    def ok(self) -> bool:
        return not any(r.fails for r in self.results.values())

    def __getitem__(self, rule) -> RuleResult:
        return self.results[Rule(rule)]


def _entailment_matrix(g: np.ndarray, full: int) -> np.ndarray:
    """E[a, b] is True when a |~ b."""
    ar = np.arange(full + 1, dtype=np.int64)
    a, b = ar[:, None], ar[None, :]
    return _gt(g[a & b], g[a & (full ^ b)])


# Each rule is premises => conclusion over a triple of events (x, y, z).
# ``ent(a, b)`` evaluates entailment elementwise on index arrays.


def _violations(rule: Rule, ent, x, y, z):
    if rule is Rule.RW:
        # y below z; sweep pairs B subset B'
        return ((y & ~z) == 0) & ent(x, y) & ~ent(x, z)
    if rule is Rule.AND:
        return ent(x, y) & ent(x, z) & ~ent(x, y & z)
    if rule is Rule.OR:
        return ent(x, z) & ent(y, z) & ~ent(x | y, z)
    if rule is Rule.CM:
        return ent(x, y) & ent(x, z) & ~ent(x & y, z)
    if rule is Rule.CUT:
        return ent(x, y) & ent(x & y, z) & ~ent(x, z)
    raise ValueError(rule)


def _witness_values(f: SetFunction, rule: Rule, w: tuple[int, ...]) -> tuple[Fraction, ...]:
    def pair(a, b):
        return (f(a & b), f(a & ~b))

    if rule is Rule.REF:
        (a,) = w
        return pair(a, a)
    x, y, z = w
    concl = {
        Rule.RW: (x, z),
        Rule.AND: (x, y & z),
        Rule.OR: (x | y, z),
        Rule.CM: (x & y, z),
        Rule.CUT: (x, z),
    }[rule]
    prem = {
        Rule.RW: [(x, y)],
        Rule.AND: [(x, y), (x, z)],
        Rule.OR: [(x, z), (y, z)],
        Rule.CM: [(x, y), (x, z)],
        Rule.CUT: [(x, y), (x & y, z)],
    }[rule]
    out: list[Fraction] = []
    for a, b in prem + [concl]:
        out.extend(pair(a, b))
    return tuple(out)


def check_klm(
    f: SetFunction,
    properties: Iterable[str | Rule] = ALL_RULES,
    *,
    max_exhaustive: int = KLM_MAX_ATOMS,
    samples: int | None = None,
    seed: int = 0,
) -> KlmReport:
    """Sweep the requested rules over all event triples, or over random ones
    when the universe has more than ``max_exhaustive`` atoms.

    Counterexamples are the least (x, y, z) in bit-mask order; REF reports a
    single antecedent.
    """
    f.require_confidence()
    rules = [Rule(p) for p in properties]
    u = f.universe
    full = u.full
    g = f.scaled
    exhaustive = u.size <= max_exhaustive
    mode = Mode.EXHAUSTIVE if exhaustive else Mode.SAMPLED
    n_samples = None if exhaustive else (samples or DEFAULT_SAMPLES)

    if exhaustive:
        E = _entailment_matrix(g, full)

        def ent(a, b):
            return E[a, b]

        ar = np.arange(full + 1, dtype=np.int64)
        x, y, z = ar[:, None, None], ar[None, :, None], ar[None, None, :]
        singles = ar
    else:
        rng = np.random.default_rng(seed)

        def ent(a, b):
            return _gt(g[a & b], g[a & (full ^ b)])

        x, y, z = (rng.integers(0, full + 1, size=n_samples, dtype=np.int64) for _ in range(3))
        # RW needs y below z; widen z to make that common in sampled mode
        singles = rng.integers(0, full + 1, size=n_samples, dtype=np.int64)

    results = {}
    for rule in rules:
        if rule is Rule.REF:
            bad = _gt(g[singles], 0) & ~ent(singles, singles)
            hits = np.flatnonzero(bad)
            w = (int(np.min(singles[hits])),) if len(hits) else None
        else:
            zz = z | y if (rule is Rule.RW and not exhaustive) else z
            bad = _violations(rule, ent, x, y, zz)
            w = None
            if bad.any():
                if exhaustive:
                    w = tuple(int(v) for v in np.argwhere(bad)[0])
                else:
                    bx, by, bz = np.broadcast_arrays(x, y, zz)
                    idx = np.flatnonzero(bad)
                    k = idx[np.lexsort((bz[idx], by[idx], bx[idx]))[0]]
                    w = (int(bx[k]), int(by[k]), int(bz[k]))
        if w is None:
            status = "holds" if exhaustive else "no-counterexample"
            results[rule] = RuleResult(rule, status)
        else:
            results[rule] = RuleResult(rule, "fails", w, _witness_values(f, rule, w))
    return KlmReport(mode, results, n_samples)
