"""Constructors from probability, mass and possibility inputs, and the skeleton builder."""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    SetFunction,
    SignedMass,
    Universe,
    dual,
    is_subset,
    iter_bits,
    iter_subsets,
    to_fraction,
)
from .errors import (
    BadDistribution,
    EmptyFocal,
    IncompleteCoverage,
    MassSumNotOne,
    NonPositiveMass,
    NotNormalized,
    SkeletonInconsistent,
)


def _atom_values(universe: Universe, values) -> tuple[Fraction, ...]:
    if isinstance(values, Mapping):
        out = [Fraction(0)] * universe.size
        for key, v in values.items():
            i = universe.index(key) if isinstance(key, str) else int(key)
            out[i] = to_fraction(v)
        return tuple(out)
    out = tuple(to_fraction(v) for v in values)
    if len(out) != universe.size:
        raise BadDistribution(f"{len(out)} values for {universe.size} atoms")
    return out


@dataclass(frozen=True)
class ProbabilityDistribution:
    universe: Universe
    p: tuple[Fraction, ...]

    def __post_init__(self):
        p = _atom_values(self.universe, self.p)
        object.__setattr__(self, "p", p)
        for i, v in enumerate(p):
            if v < 0 or v > 1:
                raise BadDistribution(f"p({self.universe.atoms[i]}) = {v} is outside [0, 1]")
        if sum(p) != 1:
            raise BadDistribution(f"probabilities sum to {sum(p)}, not 1")

    def prob(self, event: int) -> Fraction:
        return sum((self.p[i] for i in iter_bits(event)), Fraction(0))


@dataclass(frozen=True)
class MassAssignment:
    """Basic probability assignment: positive masses on nonempty focal events, summing to 1."""

    universe: Universe
    m: Mapping[int, Fraction]

    def __post_init__(self):
        m = {}
        for ev, v in self.m.items():
            v = to_fraction(v)
            if ev == 0:
                raise EmptyFocal("the empty set cannot carry mass")
            if not 0 < ev <= self.universe.full:
                raise EmptyFocal(f"event {ev} is outside the universe")
            if v <= 0:
                raise NonPositiveMass(f"mass {v} on {self.universe.format(ev)} is not positive")
            m[ev] = v
        total = sum(m.values(), Fraction(0))
        if total != 1:
            raise MassSumNotOne(f"masses sum to {total}, not 1")
        object.__setattr__(self, "m", dict(sorted(m.items())))

    @property
    def focals(self) -> list[int]:
        return list(self.m)

    def belief(self, event: int) -> Fraction:
        return sum((v for c, v in self.m.items() if is_subset(c, event)), Fraction(0))

    def __hash__(self):
        return hash((self.universe, tuple(self.m.items())))


@dataclass(frozen=True)
class PossibilityDistribution:
    universe: Universe
    pi: tuple[Fraction, ...]

    def __post_init__(self):
        pi = _atom_values(self.universe, self.pi)
        object.__setattr__(self, "pi", pi)
        for i, v in enumerate(pi):
            if v < 0 or v > 1:
                raise BadDistribution(f"pi({self.universe.atoms[i]}) = {v} is outside [0, 1]")
        if max(pi) != 1:
            raise NotNormalized(f"max possibility is {max(pi)}, not 1")

    def possibility(self, event: int) -> Fraction:
        return max((self.pi[i] for i in iter_bits(event)), default=Fraction(0))

    def core(self) -> int:
        """Atoms with possibility 1."""
        return sum(1 << i for i, v in enumerate(self.pi) if v == 1)

    def support(self) -> int:
        return sum(1 << i for i, v in enumerate(self.pi) if v > 0)


def from_probability(d: ProbabilityDistribution) -> SetFunction:
    u = d.universe
    t = [Fraction(0)] * u.n_events
    for ev in range(1, u.n_events):
        low = ev & -ev
        t[ev] = t[ev ^ low] + d.p[low.bit_length() - 1]
    return SetFunction(u, tuple(t))


def from_mass(m: MassAssignment) -> tuple[SetFunction, SetFunction]:
    """Belief and plausibility of a mass assignment."""
    u = m.universe
    vals = [Fraction(0)] * u.n_events
    for ev, v in m.m.items():
        vals[ev] = v
    bel = SetFunction(u, SignedMass(u, tuple(vals)).zeta())
    return bel, dual(bel)


def from_possibility(d: PossibilityDistribution) -> tuple[SetFunction, SetFunction]:
    """Possibility measure (max over the event) and necessity (min of 1 - pi outside it)."""
    u = d.universe
    pi_tab = tuple(d.possibility(ev) for ev in u.events())
    nec_tab = tuple(
        min((1 - d.pi[i] for i in iter_bits(u.full ^ ev)), default=Fraction(1))
        for ev in u.events()
    )
    return SetFunction(u, pi_tab), SetFunction(u, nec_tab)


@dataclass(frozen=True)
class Skeleton:
    """Values on the up-set of a kernel and the down-set of its complement.

    Every remaining event gets ``k_level``, which is only needed when the
    kernel has two or more atoms.
    """

    universe: Universe
    kernel: int
    upper: Mapping[int, Fraction]
    lower: Mapping[int, Fraction]
    k_level: Fraction | None = None


def build_from_skeleton(s: Skeleton) -> SetFunction:
    u = s.universe
    K = s.kernel
    Kc = u.full ^ K
    if K == 0:
        raise SkeletonInconsistent("kernel must be nonempty")
    upper = {ev: to_fraction(v) for ev, v in s.upper.items()}
    lower = {ev: to_fraction(v) for ev, v in s.lower.items()}

    up_dom = {K | extra for extra in iter_subsets(Kc)}
    low_dom = set(iter_subsets(Kc))
    for name, given, dom in (("upper", upper, up_dom), ("lower", lower, low_dom)):
        missing = sorted(dom - set(given))
        extra = sorted(set(given) - dom)
        if missing:
            raise IncompleteCoverage(f"{name} values missing for {u.format(missing[0])}")
        if extra:
            raise IncompleteCoverage(f"{name} value given for {u.format(extra[0])}, outside its domain")

    gK, gKc = upper[K], lower[Kc]
    if not gK > gKc:
        raise SkeletonInconsistent(
            f"value at kernel {u.format(K)} ({gK}) must exceed value at its complement ({gKc})"
        )
    if upper[u.full] != 1:
        raise SkeletonInconsistent(f"value at the universe is {upper[u.full]}, not 1")
    if lower[0] != 0:
        raise SkeletonInconsistent(f"value at the empty set is {lower[0]}, not 0")
    for name, vals in (("upper", upper), ("lower", lower)):
        for ev, v in vals.items():
            for i in iter_bits(u.full ^ ev):
                sup = ev | (1 << i)
                if sup in vals and v > vals[sup]:
                    raise SkeletonInconsistent(
                        f"{name} values not monotone: {u.format(ev)}={v} > {u.format(sup)}={vals[sup]}"
                    )
    undecided = len(up_dom) + len(low_dom) < u.n_events
    k = None
    if undecided:
        if s.k_level is None:
            raise SkeletonInconsistent("k_level required when the kernel has two or more atoms")
        k = to_fraction(s.k_level)
        if not gKc <= k <= gK:
            raise SkeletonInconsistent(f"k_level {k} outside [{gKc}, {gK}]")

    table = []
    for ev in u.events():
        if ev in upper:
            table.append(upper[ev])
        elif ev in lower:
            table.append(lower[ev])
        else:
            table.append(k)
    return SetFunction(u, tuple(table))


# Generators.  Small denominators on purpose: ties are where acceptance gets interesting.

_DENOMS = (2, 3, 4, 5, 6, 8, 10, 12)


def random_confidence(u: Universe, seed: int) -> SetFunction:
    """A random confidence measure, deterministic in (universe, seed).

    Values are drawn independently, then closed upward by taking maxima over
    immediate subsets; this skews mass toward the top of the lattice.
    """
    rng = random.Random(seed)
    d = rng.choice(_DENOMS)
    t = [Fraction(rng.randint(0, d), d) for _ in u.events()]
    t[0] = Fraction(0)
    t[u.full] = Fraction(1)
    for ev in range(1, u.n_events):
        for i in iter_bits(ev):
            below = t[ev ^ (1 << i)]
            if below > t[ev]:
                t[ev] = below
    return SetFunction(u, tuple(t))


def _weights(rng: random.Random, k: int, hi: int = 9) -> list[int]:
    return [rng.randint(1, hi) for _ in range(k)]


def _normalize(u: Universe, pairs: list[tuple[int, int]]) -> MassAssignment:
    merged: dict[int, int] = {}
    for ev, w in pairs:
        merged[ev] = merged.get(ev, 0) + w
    total = sum(merged.values())
    return MassAssignment(u, {ev: Fraction(w, total) for ev, w in merged.items()})


def random_mass(u: Universe, rng: random.Random, max_focals: int = 4) -> MassAssignment:
    k = rng.randint(1, max_focals)
    focals = [rng.randint(1, u.full) for _ in range(k)]
    return _normalize(u, list(zip(focals, _weights(rng, k))))


def random_core_mass(u: Universe, rng: random.Random, max_focals: int = 4) -> MassAssignment:
    """Every focal contains a positive-mass focal core."""
    core = rng.randint(1, u.full)
    rest = u.full ^ core
    k = rng.randint(0, max_focals - 1)
    focals = [core] + [core | rng.randint(0, rest) for _ in range(k)]
    return _normalize(u, list(zip(focals, _weights(rng, k + 1))))


def random_singleton_majority_mass(
    u: Universe, rng: random.Random, max_focals: int = 4, above_half: bool = False
) -> MassAssignment:
    """A singleton focal whose mass beats the belief of its complement.

    With ``above_half`` the singleton carries more than half the total mass.
    """
    i = rng.randrange(u.size)
    s = 1 << i
    k = rng.randint(0, max_focals - 1)
    others = [rng.randint(1, u.full) for _ in range(k)]
    others = [ev for ev in others if ev != s]
    ws = _weights(rng, len(others))
    if above_half:
        w0 = sum(ws) + rng.randint(1, 9)
    else:
        avoiding = sum(w for ev, w in zip(others, ws) if not ev & s)
        w0 = avoiding + rng.randint(1, 9)
    return _normalize(u, [(s, w0)] + list(zip(others, ws)))


def random_twin_mass(u: Universe, rng: random.Random, max_focals: int = 4) -> MassAssignment:
    """Two equal-mass singleton focals, plus optional supersets of their union."""
    if u.size < 2:
        raise ValueError("twin singletons need two atoms")
    i, j = rng.sample(range(u.size), 2)
    pair = (1 << i) | (1 << j)
    w = rng.randint(1, 9)
    k = rng.randint(0, max(0, max_focals - 2))
    rest = u.full ^ pair
    sups = [pair | rng.randint(0, rest) for _ in range(k)]
    return _normalize(u, [(1 << i, w), (1 << j, w)] + list(zip(sups, _weights(rng, k))))


def random_probability(u: Universe, rng: random.Random) -> ProbabilityDistribution:
    """Random rational distribution; some draws force a majority atom or a half-half pair."""
    mode = rng.random()
    n = u.size
    if mode < 0.15 and n >= 2:
        i, j = rng.sample(range(n), 2)
        p = [Fraction(0)] * n
        p[i] = p[j] = Fraction(1, 2)
        return ProbabilityDistribution(u, tuple(p))
    ws = [rng.randint(0, 9) for _ in range(n)]
    if mode < 0.4:
        i = rng.randrange(n)
        ws[i] = sum(ws) - ws[i] + rng.randint(1, 9)
    if sum(ws) == 0:
        ws[rng.randrange(n)] = 1
    total = sum(ws)
    return ProbabilityDistribution(u, tuple(Fraction(w, total) for w in ws))


def random_possibility(u: Universe, rng: random.Random) -> PossibilityDistribution:
    d = rng.choice(_DENOMS)
    pi = [Fraction(rng.randint(0, d), d) for _ in range(u.size)]
    for i in rng.sample(range(u.size), rng.randint(1, max(1, u.size // 2))):
        pi[i] = Fraction(1)
    return PossibilityDistribution(u, tuple(pi))
