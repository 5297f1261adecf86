import random

import pytest
from hypothesis import given, settings

from possnet.kb import (
    AverageKB,
    ScopeError,
    WeightedFormula,
    equivalent,
    is_subsumed,
    kb_necessity_distribution,
    kb_necessity_distribution_crisp,
    kb_possibility_distribution,
    make_kb,
    normalize_kb,
)
from possnet.logic import Clause, Literal, enumerate_worlds, evaluate, parse_formula
from possnet.measures import complement, guaranteed_degree

from reference_data import SIGMA
from strategies import random_kb, seeds


def clause(text):
    return Clause(Literal(t.strip().lstrip("!").upper(), not t.strip().startswith("!"))
                  for t in text.split("|"))


def sigma(var):
    scope = {"A": "A", "B": "BA", "C": "CA", "D": "DBC"}[var]
    return make_kb(scope, [(clause(" | ".join(lits)), a, b) for lits, a, b, _ in SIGMA[var]])


SA = make_kb("A", [(clause("a"), 0.5, 0.9)])
WEAK = make_kb("AB", [(clause("a"), 0.5, 0.9), (clause("a | b"), 0.3, 0.5)])


def brute_pi(kb, world):
    # independent oracle: min over formulas of (1 if satisfied else 1 - alpha)
    return min([1.0 if evaluate(f.clause, world) else 1 - f.alpha for f in kb.formulas],
               default=1.0)


class TestWeightedFormula:
    def test_combined_is_product(self):
        assert WeightedFormula(clause("a"), 0.5, 0.9).combined == pytest.approx(0.45)

    def test_zero_alpha_rejected(self):
        with pytest.raises(ValueError):
            WeightedFormula(clause("a"), 0.0, 0.5)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            WeightedFormula(clause("a"), 1.2, 0.5)


class TestAverageKB:
    def test_duplicates_merge_by_max(self):
        kb = make_kb("A", [(clause("a"), 0.5, 0.2), (clause("a"), 0.3, 0.9)])
        assert len(kb) == 1
        f = kb.formulas[0]
        assert (f.alpha, f.beta) == (0.5, 0.9)

    def test_order_insensitive_equality(self):
        fs = [(clause("a | b"), 0.3, 0.5), (clause("a"), 0.5, 0.9)]
        assert make_kb("AB", fs) == make_kb("AB", fs[::-1])

    def test_scope_enforced(self):
        with pytest.raises(ScopeError):
            make_kb("A", [(clause("b"), 0.5, 0.5)])


class TestDistributions:
    def test_single_clause_possibility(self):
        dist = kb_possibility_distribution(SA)
        assert dist.values == (1.0, 0.5)

    def test_empty_is_uniform(self):
        dist = kb_possibility_distribution(AverageKB(("A", "B")))
        assert dist.values == (1.0,) * 4
        assert kb_necessity_distribution(AverageKB(("A", "B"))).values == (1.0,) * 4

    def test_sigma_b_matches_table_column(self):
        dist = kb_possibility_distribution(sigma("B"), ("B", "A"))
        # worlds (b,a), (b,!a), (!b,a), (!b,!a)
        assert dist.values == (1.0, 0.75, 0.5, 0.3)

    def test_necessity_recovery(self):
        n = kb_necessity_distribution(SA)
        assert guaranteed_degree(n, parse_formula("!a")) == pytest.approx(0.1)
        assert guaranteed_degree(n, parse_formula("a")) == 1.0

    def test_crisp_necessity_is_zero_one(self):
        n = kb_necessity_distribution_crisp(SA)
        assert n.values == (1.0, 0.0)

    @settings(max_examples=200)
    @given(seeds)
    def test_possibility_matches_oracle(self, seed):
        kb = random_kb(random.Random(seed))
        dist = kb_possibility_distribution(kb)
        for w, v in zip(enumerate_worlds(kb.scope), dist.values):
            assert v == pytest.approx(brute_pi(kb, w), abs=1e-9)

    def test_explicit_names_reorder(self):
        dist = kb_possibility_distribution(sigma("D"), ("B", "C", "D"))
        other = kb_possibility_distribution(sigma("D"))
        assert dist.almost_equal(other.reindexed(("B", "C", "D")))


class TestEquivalence:
    def test_reflexive(self):
        assert equivalent(SA, SA)

    def test_weaker_clause_is_redundant(self):
        assert equivalent(make_kb("AB", [(clause("a"), 0.5, 0.9)]), WEAK)

    def test_empty_differs(self):
        assert not equivalent(SA, AverageKB(("A",)))

    def test_necessity_matters(self):
        assert not equivalent(SA, make_kb("A", [(clause("a"), 0.5, 0.3)]))

    def test_scope_mismatch(self):
        with pytest.raises(ScopeError):
            equivalent(SA, AverageKB(("A", "B")))


class TestSubsumption:
    def test_weak_clause_subsumed(self):
        assert is_subsumed(WEAK, WeightedFormula(clause("a | b"), 0.3, 0.5))

    def test_only_constraint_not_subsumed(self):
        assert not is_subsumed(SA, SA.formulas[0])

    def test_merged_copy_absent(self):
        kb = make_kb("A", [(clause("a"), 0.5, 0.9), (clause("a"), 0.3, 0.2)])
        with pytest.raises(KeyError):
            is_subsumed(kb, WeightedFormula(clause("a"), 0.3, 0.2))

    def test_normalize_example(self):
        assert normalize_kb(WEAK) == make_kb("AB", [(clause("a"), 0.5, 0.9)])

    def test_normalize_empty(self):
        assert normalize_kb(AverageKB(("A",))) == AverageKB(("A",))

    def test_sigma_d_irreducible(self):
        sd = sigma("D")
        assert normalize_kb(sd) == sd
        assert not any(is_subsumed(sd, f) for f in sd)

    @settings(max_examples=100)
    @given(seeds)
    def test_normalize_preserves_equivalence(self, seed):
        kb = random_kb(random.Random(seed))
        out = normalize_kb(kb)
        assert equivalent(kb, out)
        assert not any(is_subsumed(out, f) for f in out)
        assert set(out.formulas) <= set(kb.formulas)

    def test_normalize_input_order_irrelevant(self):
        rng = random.Random(3)
        for _ in range(30):
            kb = random_kb(rng)
            shuffled = list(kb.formulas)
            rng.shuffle(shuffled)
            assert normalize_kb(AverageKB(kb.scope, tuple(shuffled))) == normalize_kb(kb)


def test_complement_weights_stay_on_grid():
    dist = kb_possibility_distribution(sigma("C"), ("C", "A"))
    assert dist.values == (1.0, 0.7, 0.6, 0.4)
    assert complement(0.6) == 0.4
