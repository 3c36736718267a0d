"""Acceptance gate: fifteen numbered criteria, each reported as one PASS/FAIL line.

Every criterion must finish in under 60 seconds; the elapsed time is part of
the verdict.  Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F
from functools import lru_cache

import pytest

from acceptfn.acceptance import (
    HalfHalfPair,
    NotAcceptance,
    classify_belief,
    classify_probability,
    is_acceptance,
    is_acceptance_bruteforce,
)
from acceptfn.conditioning import (
    Mode,
    check_property_A,
    check_property_B,
    condition_possibility,
    condition_probability,
    conditioned_base,
    is_conditioned_base_belief_set,
)
from acceptfn.cli import main
from acceptfn.core import dual, is_belief_function, moebius, validate_confidence
from acceptfn.fileformat import emit_measure_file, parse_measure_file
from acceptfn.klm import check_klm
from acceptfn.measures import (
    ProbabilityDistribution,
    from_mass,
    from_possibility,
    from_probability,
    random_confidence,
    random_core_mass,
    random_mass,
    random_possibility,
    random_probability,
    random_singleton_majority_mass,
    random_twin_mass,
)
from conftest import CORPUS, universe_of
from oracles import accepted, closed_under_intersection, conditioned
from test_cli import CASES, invoke

pytestmark = pytest.mark.acceptance

TIME_LIMIT = 60.0


@pytest.fixture
def gate(capsys):
    @contextmanager
    def run(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\nFAIL criterion {number:2d}: {title} ({elapsed:.2f}s)")
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < TIME_LIMIT
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} ({elapsed:.2f}s)")
        assert ok, f"criterion {number} took {elapsed:.1f}s"

    return run


@lru_cache(maxsize=None)
def confidence_samples(count=1200, sizes=(2, 3, 4, 5, 6)):
    """Deterministic random confidence measures spread evenly over the sizes."""
    universes = {n: universe_of(n) for n in sizes}
    return tuple(
        random_confidence(universes[sizes[s % len(sizes)]], s) for s in range(count)
    )


def small_samples():
    return [f for f in confidence_samples() if f.universe.size <= 5]


def acc_set(f):
    return set(accepted(f.table, f.universe.size))


def oracle_level(f, K):
    """Values on events that meet K without containing it, straight from the table."""
    return {f(ev) for ev in f.universe.events() if ev & K and ev & K != K}


def test_01_oracle_agreement(gate):
    with gate(1, "is_acceptance agrees with the pairwise oracle on 1200 measures, n=2..6"):
        samples = confidence_samples()
        verdicts = []
        for f in samples:
            fast = is_acceptance(f).is_acceptance
            assert fast == is_acceptance_bruteforce(f).holds, f.table
            assert fast == closed_under_intersection(f.table, f.universe.size)
            verdicts.append(fast)
        assert len(samples) >= 1000
        assert any(verdicts) and not all(verdicts)


def test_02_uniform_indifference_level(gate):
    with gate(2, "one indifference level between g(not K) and g(K) for every wide kernel"):
        pool = list(confidence_samples())
        pool += [dual(f) for f in confidence_samples()]
        rng = random.Random(2)
        for n in range(2, 7):
            u = universe_of(n)
            for _ in range(60):
                pool.append(from_possibility(random_possibility(u, rng))[0])
                pool.append(from_mass(random_twin_mass(u, rng))[0])
        checked = 0
        for f in pool:
            rep = is_acceptance(f)
            if not rep or bin(rep.kernel).count("1") < 2:
                continue
            K = rep.kernel
            levels = oracle_level(f, K)
            assert len(levels) == 1, (f.table, levels)
            (k,) = levels
            assert f(f.universe.full ^ K) <= k <= f(K)
            assert rep.indifference_level == k
            checked += 1
        assert checked >= 100


def test_03_duality(gate):
    with gate(3, "dual has the same verdict and kernel, levels sum to 1"):
        with_level = 0
        for f in confidence_samples():
            a, b = is_acceptance(f), is_acceptance(dual(f))
            assert a.is_acceptance == b.is_acceptance
            if a:
                assert a.kernel == b.kernel
                if a.indifference_level is not None:
                    assert a.indifference_level + b.indifference_level == 1
                    with_level += 1
        assert with_level > 0


def test_04_core_masses_and_possibility(gate):
    with gate(4, "500 core masses and 500 possibility distributions are acceptance functions"):
        rng = random.Random(4)
        for i in range(500):
            u = universe_of(1 + i % 6)
            m = random_core_mass(u, rng)
            core = min(m.focals, key=lambda e: bin(e).count("1"))
            assert all(ev & core == core for ev in m.focals)
            bel, pl = from_mass(m)
            rep = is_acceptance(bel)
            assert rep and rep.kernel == core
        for i in range(500):
            u = universe_of(1 + i % 6)
            d = random_possibility(u, rng)
            top = sum(1 << j for j, v in enumerate(d.pi) if v == 1)
            pi, nec = from_possibility(d)
            rp, rn = is_acceptance(pi), is_acceptance(nec)
            assert rp and rn
            assert rp.kernel == rn.kernel == top


def test_05_singleton_above_half(gate):
    with gate(5, "200 masses with a singleton focal above 1/2 have that singleton as kernel"):
        rng = random.Random(5)
        for i in range(200):
            u = universe_of(1 + i % 6)
            m = random_singleton_majority_mass(u, rng, above_half=True)
            (s,) = [ev for ev, v in m.m.items() if bin(ev).count("1") == 1 and v > F(1, 2)]
            rep = is_acceptance(from_mass(m)[0])
            assert rep and rep.kernel == s


def test_06_belief_classifier(gate):
    with gate(6, "classify_belief matches the oracle on 1000 masses, all three shapes seen"):
        rng = random.Random(6)
        makers = [random_mass, random_core_mass, random_singleton_majority_mass, random_twin_mass]
        labels = set()
        for i in range(1000):
            n = 2 + (i // 4) % 4
            m = makers[i % 4](universe_of(n), rng, max_focals=4)
            assert len(m.m) <= 4
            bel, _ = from_mass(m)
            truth = closed_under_intersection(bel.table, n)
            c = classify_belief(m)
            labels.add(c.label)
            assert (c.kernel is not None) == truth, m.m
            if truth:
                acc = accepted(bel.table, n)
                K = (1 << n) - 1
                for ev in acc:
                    K &= ev
                assert c.kernel == K
            else:
                a, b = c.witness
                assert a in acc_set(bel) and b in acc_set(bel) and (a & b) not in acc_set(bel)
        assert {"singleton-majority", "focal-core", "twin-singletons", "not-acceptance"} <= labels


def test_07_probability_classifier(gate):
    with gate(7, "classify_probability matches the oracle on 1000 distributions, n<=6"):
        rng = random.Random(7)
        for i in range(1000):
            n = 1 + i % 6
            d = random_probability(universe_of(n), rng)
            P = from_probability(d)
            truth = closed_under_intersection(P.table, n)
            c = classify_probability(d)
            assert (c.kernel is not None) == truth, d.p
            if not truth:
                a, b = c.witness
                assert P(a) > F(1, 2) and P(b) > F(1, 2) and P(a & b) <= F(1, 2)
        u = universe_of(3)
        half = classify_probability(ProbabilityDistribution(u, (F(1, 2), F(1, 2), F(0))))
        assert half == HalfHalfPair(0, 1)
        c = classify_probability(ProbabilityDistribution(u, (F(2, 5), F(7, 20), F(1, 4))))
        assert isinstance(c, NotAcceptance)


def test_08_skeleton_instance(gate, g44):
    with gate(8, "four-atom skeleton: acceptance with K={2}, negative mass, both inequalities"):
        assert validate_confidence(g44).ok
        rep = is_acceptance(g44)
        assert rep and rep.kernel == g44.universe.event(["2"])
        assert moebius(g44).most_negative()[1] < 0
        assert not is_belief_function(g44)
        e = g44.universe.event
        A, B, C = e(["1", "2"]), e(["2", "3"]), e(["1", "4"])
        assert g44(A | B) + g44(A & B) == F(13, 10) > F(6, 5) == g44(A) + g44(B)
        assert g44(A | C) + g44(A & C) == F(9, 10) < 1 == g44(A) + g44(C)


def test_09_property_a_iff_b(gate):
    with gate(9, "property A and property B agree on 500 measures, n<=5, exhaustive"):
        both = []
        for s in range(500):
            f = random_confidence(universe_of(1 + s % 5), 9000 + s)
            a, b = check_property_A(f), check_property_B(f)
            assert a.mode is b.mode is Mode.EXHAUSTIVE
            assert a.holds == b.holds, f.table
            both.append(a.holds)
        assert any(both) and not all(both)


def test_10_possibility_tolerance(gate):
    with gate(10, "500 possibility measures satisfy B; conditioned bases stay belief sets"):
        rng = random.Random(10)
        for i in range(500):
            n = 1 + i % 6
            d = random_possibility(universe_of(n), rng)
            pi, _ = from_possibility(d)
            rep = check_property_B(pi)
            assert rep.holds and rep.mode is Mode.EXHAUSTIVE
            if n <= 5:
                for c in range(1, pi.universe.full + 1):
                    if pi(c) > 0:
                        assert is_conditioned_base_belief_set(pi, c), (d.pi, c)


def test_11_probability_conditioning_failure(gate):
    with gate(11, "p=(13/25,17/100,4/25,3/20) given {w2,w3,w4} loses closure"):
        u = universe_of(4)
        P = from_probability(ProbabilityDistribution(u, (F(13, 25), F(17, 100), F(4, 25), F(3, 20))))
        C = u.event(["w2", "w3", "w4"])
        rep = is_conditioned_base_belief_set(P, C)
        assert not rep
        first, second = rep.violation_witness
        assert (first, second) == (u.event(["w2", "w3"]), u.event(["w2", "w4"]))
        assert first & second == u.event(["w2"])
        assert u.event(["w2"]) not in conditioned_base(P, C)
        assert is_acceptance(P)
        assert check_property_B(P).counterexample is not None


def test_12_up_closure(gate):
    with gate(12, "conditioned bases are up-closed for every sample and context, n<=5"):
        count = 0
        for f in small_samples():
            n = f.universe.size
            for c in range(1, f.universe.full + 1):
                base = conditioned_base(f, c)
                assert base == conditioned(f.table, n, c)
                members = set(base)
                for a in base:
                    for i in range(n):
                        assert a | (1 << i) in members
                count += 1
        assert count > 10000


def test_13_klm(gate):
    with gate(13, "REF and RW always, AND under property B, known AND counterexample"):
        passing_b = 0
        for f in small_samples()[:500]:
            rep = check_klm(f, ["ref", "rw", "and"])
            assert rep.mode is Mode.EXHAUSTIVE
            assert not rep["ref"].fails and not rep["rw"].fails
            if check_property_B(f):
                passing_b += 1
                assert not rep["and"].fails
        assert passing_b > 0
        u = universe_of(3)
        P = from_probability(ProbabilityDistribution(u, (F(2, 5), F(7, 20), F(1, 4))))
        w = check_klm(P, ["and"])["and"].counterexample
        assert w == (u.full, u.event(["w1", "w2"]), u.event(["w1", "w3"]))


def test_14_conditioning_rules(gate):
    with gate(14, "conditioned base matches P(A|C) > 1/2 and N(A|C) > 0 on 400 inputs"):
        rng = random.Random(14)
        for i in range(200):
            u = universe_of(1 + i % 5)
            d = random_probability(u, rng)
            P = from_probability(d)
            for c in range(1, u.full + 1):
                if d.prob(c) == 0:
                    continue
                cond = condition_probability(d, c)
                expected = [a for a in u.events() if cond.prob(a) > F(1, 2)]
                assert conditioned_base(P, c) == expected
        for i in range(200):
            u = universe_of(1 + i % 5)
            d = random_possibility(u, rng)
            pi, _ = from_possibility(d)
            for c in range(1, u.full + 1):
                if d.possibility(c) == 0:
                    continue
                _, nec_c = condition_possibility(d, c)
                expected = [a for a in u.events() if nec_c(a) > 0]
                assert conditioned_base(pi, c) == expected


def test_15_cli_contract(gate, tmp_path):
    with gate(15, "CLI golden corpus: every command, byte-identical round trips, exit codes"):
        files = sorted(CORPUS.glob("*.measure"))
        assert len(files) >= 12
        canonical = [p for p in files if not p.name.startswith("bad_") and "decimal" not in p.name]
        for p in canonical:
            text = p.read_text()
            assert emit_measure_file(parse_measure_file(text)) == text, p.name
        assert {args[0] for _, args, _ in CASES} | {"report"} == set(main.commands)
        assert {code for _, _, code in CASES} == {0, 1, 2}
        for case_id, args, code in CASES:
            assert invoke(args).exit_code == code, case_id
        assert invoke(["report", "mass_twins.measure", "--out", str(tmp_path)]).exit_code == 0
        assert (tmp_path / "mass_twins.bel.png").exists()
