import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acceptfn.core import SetFunction, make_universe  # noqa: E402
from acceptfn.measures import (  # noqa: E402
    MassAssignment,
    PossibilityDistribution,
    ProbabilityDistribution,
    Skeleton,
    build_from_skeleton,
)

CORPUS = Path(__file__).parent / "corpus"


def universe_of(n):
    return make_universe([f"w{i + 1}" for i in range(n)])


@pytest.fixture
def abc():
    return make_universe(["a", "b", "c"])


@pytest.fixture
def p_nonaccept(abc):
    """p = (2/5, 7/20, 1/4): not an acceptance function."""
    return ProbabilityDistribution(abc, (F(2, 5), F(7, 20), F(1, 4)))


@pytest.fixture
def majority_mass(abc):
    """m({a}) = 3/5, m({b,c}) = 2/5."""
    return MassAssignment(abc, {abc.event("a"): F(3, 5), abc.event(["b", "c"]): F(2, 5)})


@pytest.fixture
def core_mass(abc):
    """m({a,b}) = 1/2, m(universe) = 1/2."""
    return MassAssignment(abc, {abc.event(["a", "b"]): F(1, 2), abc.full: F(1, 2)})


@pytest.fixture
def pi_dist(abc):
    return PossibilityDistribution(abc, (F(1), F(1, 2), F(1, 5)))


def skeleton_44():
    """Four-atom acceptance function with kernel {2} that is not a belief function."""
    u = make_universe(["1", "2", "3", "4"])
    e = u.event
    upper = {
        e(["2"]): F(1, 2),
        e(["1", "2"]): F(3, 5),
        e(["2", "3"]): F(3, 5),
        e(["2", "4"]): F(1, 2),
        e(["1", "2", "3"]): F(4, 5),
        e(["1", "2", "4"]): F(7, 10),
        e(["2", "3", "4"]): F(3, 5),
        u.full: F(1),
    }
    lower = {
        0: F(0),
        e(["1"]): F(1, 5),
        e(["3"]): F(1, 5),
        e(["4"]): F(1, 5),
        e(["1", "3"]): F(2, 5),
        e(["1", "4"]): F(2, 5),
        e(["3", "4"]): F(2, 5),
        e(["1", "3", "4"]): F(2, 5),
    }
    return Skeleton(u, e(["2"]), upper, lower)


@pytest.fixture
def g44():
    return build_from_skeleton(skeleton_44())


@pytest.fixture
def vacuous(abc):
    return SetFunction(abc, tuple(F(1) if ev == abc.full else F(0) for ev in abc.events()))
