import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from possnet.logic import BOTTOM, TOP, And, Literal, LogicError, Or, UnknownVariableError, \
    enumerate_worlds, evaluate
from possnet.measures import (
    AVERAGE,
    NECESSITY,
    DegreeError,
    WorldDistribution,
    check_degree,
    complement,
    guaranteed_degree,
    necessity_by_duality,
    possibility_of,
)

from reference_data import TABLE2
from strategies import random_distribution, random_formula

a, b, c, d = (Literal(n) for n in "ABCD")
NAMES = ("A", "B", "C", "D")
MIN_PI = WorldDistribution(NAMES, tuple(float(r[0]) for r in TABLE2))
MIN_N = WorldDistribution(NAMES, tuple(float(r[1]) for r in TABLE2), NECESSITY)
AVG = WorldDistribution(NAMES, tuple(float(r[2]) for r in TABLE2), AVERAGE)


class TestPossibility:
    def test_not_a(self):
        assert possibility_of(MIN_PI, a.negate()) == 0.5

    def test_top_on_normalized(self):
        assert MIN_PI.is_normalized
        assert possibility_of(MIN_PI, TOP) == 1

    def test_not_a_and_not_b(self):
        assert possibility_of(MIN_PI, a.negate() & b.negate()) == 0.3

    def test_bottom_is_zero(self):
        assert possibility_of(MIN_PI, BOTTOM) == 0

    def test_needs_possibility_kind(self):
        with pytest.raises(LogicError):
            possibility_of(MIN_N, a)

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            possibility_of(MIN_PI, Literal("E"))


class TestDuality:
    def test_a_from_table(self):
        assert necessity_by_duality(MIN_PI, a) == pytest.approx(0.5, abs=1e-9)

    def test_top(self):
        assert necessity_by_duality(MIN_PI, TOP) == 1

    def test_single_variable(self):
        dist = WorldDistribution(("A",), (1.0, 0.5))
        assert necessity_by_duality(dist, a) == 0.5


class TestGuaranteed:
    def test_average_of_d(self):
        assert guaranteed_degree(AVG, d) == 0.2

    def test_full_world(self):
        assert guaranteed_degree(MIN_N, And((a, b, c, d))) == 0.2

    def test_bottom(self):
        assert guaranteed_degree(AVG, BOTTOM) == 0

    def test_rejects_possibility(self):
        with pytest.raises(LogicError):
            guaranteed_degree(MIN_PI, a)


class TestDistribution:
    def test_must_cover_all_worlds(self):
        with pytest.raises(ValueError):
            WorldDistribution(("A",), (1.0,))

    def test_degree_range(self):
        with pytest.raises(DegreeError):
            WorldDistribution(("A",), (1.0, 1.5))
        with pytest.raises(DegreeError):
            check_degree(float("nan"))

    def test_lookup_and_reindex(self):
        worlds = enumerate_worlds(NAMES)
        assert MIN_PI[worlds[12]] == 0.3
        flipped = MIN_PI.reindexed(("D", "C", "B", "A"))
        assert all(flipped[w] == MIN_PI[w] for w in worlds)
        assert flipped.almost_equal(MIN_PI)

    def test_complement_is_exact_on_decimals(self):
        assert complement(0.7) == 0.3
        assert complement(complement(0.1)) == 0.1


SEEDS = st.integers(0, 2**32 - 1)


@settings(max_examples=300)
@given(SEEDS)
def test_max_decomposability(seed):
    rng = random.Random(seed)
    names = "ABCD"[:rng.randint(1, 4)]
    dist = random_distribution(rng, names)
    p, q = random_formula(rng, names), random_formula(rng, names)
    assert possibility_of(dist, Or((p, q))) == max(possibility_of(dist, p), possibility_of(dist, q))


@settings(max_examples=300)
@given(SEEDS)
def test_min_rule_for_dual_necessity(seed):
    rng = random.Random(seed)
    names = "ABCD"[:rng.randint(1, 4)]
    dist = random_distribution(rng, names)
    p, q = random_formula(rng, names), random_formula(rng, names)
    assert necessity_by_duality(dist, And((p, q))) == min(necessity_by_duality(dist, p),
                                                          necessity_by_duality(dist, q))


@settings(max_examples=300)
@given(SEEDS)
def test_monotone_under_entailment(seed):
    rng = random.Random(seed)
    names = "ABC"
    dist = random_distribution(rng, names)
    p, r = random_formula(rng, names), random_formula(rng, names)
    q = Or((p, r))  # p entails p | r
    assert possibility_of(dist, p) <= possibility_of(dist, q)
    assert possibility_of(dist, TOP) == max(dist.values)


def test_max_over_models_against_enumeration():
    rng = random.Random(7)
    for _ in range(50):
        dist = random_distribution(rng, "ABC")
        p = random_formula(rng, "ABC")
        vals = [v for w, v in zip(enumerate_worlds("ABC"), dist.values) if evaluate(p, w)]
        assert possibility_of(dist, p) == (max(vals) if vals else 0.0)
