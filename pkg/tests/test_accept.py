import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acceptfn.acceptance import (
    FocalCore,
    HalfHalfPair,
    MajorityAtom,
    NotAcceptance,
    SingletonMajority,
    TwinSingletons,
    accepted_set,
    classify_belief,
    classify_probability,
    is_acceptance,
    is_acceptance_bruteforce,
    kernel,
    undecided_events,
    unit_kernel,
)
from acceptfn.core import SetFunction, dual
from acceptfn.errors import NotAConfidenceMeasure, UniverseTooLargeForOracle
from acceptfn.measures import (
    MassAssignment,
    ProbabilityDistribution,
    from_mass,
    from_possibility,
    from_probability,
    random_confidence,
    random_mass,
    random_probability,
)
from conftest import universe_of
from oracles import accepted, closed_under_intersection


class TestBase:
    def test_accepted_majority_mass(self, majority_mass):
        bel, _ = from_mass(majority_mass)
        assert accepted_set(bel) == [1, 3, 5, 7]
        assert kernel(bel) == 1

    def test_probability_not_closed(self, p_nonaccept):
        P = from_probability(p_nonaccept)
        assert accepted_set(P) == [3, 5, 6, 7]
        rep = is_acceptance(P)
        assert not rep
        assert rep.kernel == 0
        assert "not accepted" in rep.failure_witness
        assert is_acceptance_bruteforce(P).witness == (3, 5)

    def test_vacuous(self, vacuous):
        rep = is_acceptance(vacuous)
        assert rep and rep.kernel == 7
        assert rep.indifference_level == 0

    def test_necessity_kernel(self, pi_dist):
        _, nec = from_possibility(pi_dist)
        assert accepted_set(nec) == [1, 3, 5, 7]

    def test_invalid_measure_refused(self):
        u = universe_of(2)
        bad = SetFunction(u, (F(0), F(1), F(1, 2), F(1, 2)))
        with pytest.raises(NotAConfidenceMeasure):
            is_acceptance(bad)

    def test_oracle_size_cap(self):
        u = universe_of(11)
        f = SetFunction(u, tuple(F(1) if e == u.full else F(0) for e in u.events()))
        with pytest.raises(UniverseTooLargeForOracle):
            is_acceptance_bruteforce(f)
        assert is_acceptance(f)

    def test_undecided_events(self):
        u = universe_of(3)
        assert undecided_events(u, 0b011) == [1, 2, 5, 6]

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 10**6))
    def test_agrees_with_oracle(self, n, seed):
        f = random_confidence(universe_of(n), seed)
        assert accepted_set(f) == accepted(f.table, n)
        rep = is_acceptance(f)
        assert rep.is_acceptance == closed_under_intersection(f.table, n)
        assert rep.is_acceptance == is_acceptance_bruteforce(f).holds

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 10**6))
    def test_accepted_events_are_supersets_of_kernel(self, n, seed):
        f = random_confidence(universe_of(n), seed)
        rep = is_acceptance(f)
        if rep:
            acc = set(accepted_set(f))
            assert acc == {e for e in f.universe.events() if e & rep.kernel == rep.kernel}

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 10**6))
    def test_dual_same_verdict(self, n, seed):
        f = random_confidence(universe_of(n), seed)
        a, b = is_acceptance(f), is_acceptance(dual(f))
        assert a.is_acceptance == b.is_acceptance
        if a:
            assert a.kernel == b.kernel


class TestDualNonEquivalence:
    def test_possibility_and_necessity_differ_pointwise(self, pi_dist):
        """Pi and N share a kernel but are different set functions."""
        pi, nec = from_possibility(pi_dist)
        assert pi != nec
        assert is_acceptance(pi).kernel == is_acceptance(nec).kernel == 1

    def test_possibility_union_not_additive(self, pi_dist):
        pi, _ = from_possibility(pi_dist)
        u = pi_dist.universe
        b, c = u.event("b"), u.event("c")
        assert pi(b | c) != pi(b) + pi(c)


class TestUnitKernel:
    def test_core(self, core_mass):
        bel, _ = from_mass(core_mass)
        assert unit_kernel(bel).event == 7

    def test_possibility(self, pi_dist):
        pi, _ = from_possibility(pi_dist)
        assert unit_kernel(pi).event == 1

    def test_not_closed(self):
        u = universe_of(2)
        f = SetFunction(u, (F(0), F(1), F(1), F(1)))
        uk = unit_kernel(f)
        assert uk.event is None and uk.witness == (1, 2)


class TestClassifyBelief:
    def test_singleton_majority(self, majority_mass):
        c = classify_belief(majority_mass)
        assert c == SingletonMajority(0) and c.kernel == 1

    def test_focal_core(self, core_mass):
        c = classify_belief(core_mass)
        assert isinstance(c, FocalCore) and c.kernel == 3

    def test_twins(self, abc):
        m = MassAssignment(abc, {1: F(1, 4), 2: F(1, 4), 3: F(1, 2)})
        c = classify_belief(m)
        assert c == TwinSingletons(0, 1)
        bel, _ = from_mass(m)
        assert accepted_set(bel) == [3, 7]
        assert is_acceptance(bel).indifference_level == F(1, 4)

    def test_unequal_twins_fail(self, abc):
        m = MassAssignment(abc, {1: F(1, 3), 2: F(1, 6), 6: F(1, 2)})
        c = classify_belief(m)
        assert isinstance(c, NotAcceptance) and c.kernel is None
        bel, _ = from_mass(m)
        a, b = c.witness
        assert not is_acceptance_bruteforce(bel)
        assert bel(a & b) <= bel(bel.universe.full ^ (a & b))

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_oracle(self, seed):
        rng = random.Random(seed)
        for _ in range(60):
            n = rng.randint(1, 5)
            m = random_mass(universe_of(n), rng)
            bel, _ = from_mass(m)
            c = classify_belief(m)
            truth = closed_under_intersection(bel.table, n)
            assert (c.kernel is not None) == truth
            if truth:
                assert c.kernel == kernel(bel)


class TestClassifyProbability:
    def test_half_half(self, abc):
        c = classify_probability(ProbabilityDistribution(abc, (F(1, 2), F(1, 2), F(0))))
        assert c == HalfHalfPair(0, 1) and c.kernel == 3

    def test_majority(self, abc):
        c = classify_probability(ProbabilityDistribution(abc, (F(1, 5), F(3, 5), F(1, 5))))
        assert c == MajorityAtom(1)

    def test_not_acceptance_witness(self, p_nonaccept):
        c = classify_probability(p_nonaccept)
        assert isinstance(c, NotAcceptance)
        # largest-first prefix {a,b} and smallest-first suffix {b,c}
        assert c.witness == (3, 6)
        P = from_probability(p_nonaccept)
        assert P(c.witness[0]) > F(1, 2) and P(c.witness[1]) > F(1, 2)
        assert P(c.witness[0] & c.witness[1]) <= F(1, 2)

    def test_half_with_spread(self):
        u = universe_of(3)
        d = ProbabilityDistribution(u, (F(1, 2), F(1, 4), F(1, 4)))
        c = classify_probability(d)
        assert isinstance(c, NotAcceptance)
        P = from_probability(d)
        a, b = c.witness
        assert P(a) > F(1, 2) and P(b) > F(1, 2) and P(a & b) <= F(1, 2)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 6), st.integers(0, 10**6))
    def test_matches_oracle(self, n, seed):
        d = random_probability(universe_of(n), random.Random(seed))
        P = from_probability(d)
        c = classify_probability(d)
        assert (c.kernel is not None) == closed_under_intersection(P.table, n)
        if c.kernel is not None:
            assert c.kernel == kernel(P)
