import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from possnet.logic import (
    BOTTOM,
    TOP,
    And,
    Clause,
    EnumerationLimitError,
    Literal,
    LogicError,
    Not,
    Or,
    TautologyError,
    UnknownVariableError,
    Variable,
    World,
    enumerate_worlds,
    evaluate,
    models,
    parse_formula,
    world_index,
)

from strategies import random_formula

a, b, c, d = (Literal(n) for n in "ABCD")


def test_variable_labels():
    v = Variable("A")
    assert (v.positive_label, v.negative_label) == ("a", "!a")
    with pytest.raises(LogicError):
        Variable("else")
    with pytest.raises(LogicError):
        Variable("1x")


class TestEvaluate:
    def test_tautology(self):
        for w in enumerate_worlds("AB"):
            assert evaluate(a | ~a, w)

    def test_both_disjuncts_false(self):
        assert not evaluate(Clause([b, a.negate()]), {"A": True, "B": False})

    def test_three_literal_clause(self):
        clause = Clause([d, b.negate(), c.negate()])
        assert evaluate(clause, {"B": True, "C": True, "D": False}) is False

    def test_constants(self):
        assert evaluate(TOP, {}) and not evaluate(BOTTOM, {})

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            evaluate(a & b, {"A": True})
        with pytest.raises(UnknownVariableError):
            evaluate(a | b, World(("A",), (True,)))


class TestClause:
    def test_tautology_rejected(self):
        with pytest.raises(TautologyError):
            Clause([a, a.negate()])

    def test_duplicates_collapse(self):
        assert Clause([a, a, b]) == Clause([b, a])
        assert len(Clause([a, a]).literals) == 1

    def test_empty_rejected(self):
        with pytest.raises(LogicError):
            Clause([])


class TestModels:
    def test_single_literal(self):
        assert models(a, "A") == [World(("A",), (True,))]

    def test_contradiction(self):
        assert models(BOTTOM, "AB") == []

    def test_implication_has_three_models(self):
        found = models(Clause([b, a.negate()]), "AB")
        assert len(found) == 3
        assert World(("A", "B"), (True, False)) not in found

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            models(c, "AB")


class TestEnumerateWorlds:
    def test_single(self):
        assert [w["A"] for w in enumerate_worlds("A")] == [True, False]

    def test_row_order(self):
        worlds = enumerate_worlds("ABCD")
        assert len(worlds) == 16
        assert str(worlds[0]) == "a,b,c,d"
        assert str(worlds[1]) == "a,b,c,!d"
        assert str(worlds[-1]) == "!a,!b,!c,!d"
        assert [world_index(w, "ABCD") for w in worlds] == list(range(16))

    def test_two(self):
        assert len(enumerate_worlds("AB")) == 4

    def test_limit(self):
        with pytest.raises(EnumerationLimitError):
            enumerate_worlds([f"V{i}" for i in range(21)])
        with pytest.raises(EnumerationLimitError):
            enumerate_worlds("ABC", limit=2)

    def test_deterministic(self):
        assert enumerate_worlds("ABC") == enumerate_worlds("ABC")


@settings(max_examples=300)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_negation_and_model_counts(seed, n):
    import random

    names = "ABCD"[:n]
    p = random_formula(random.Random(seed), names)
    for w in enumerate_worlds(names):
        assert evaluate(Not(p), w) == (not evaluate(p, w))
    assert len(models(p, names)) + len(models(Not(p), names)) == 2 ** n


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_models_match_brute_force(seed):
    import random

    rng = random.Random(seed)
    p = random_formula(rng, "ABC")
    expected = [vals for vals in itertools.product((True, False), repeat=3)
                if evaluate(p, dict(zip("ABC", vals)))]
    assert [w.values for w in models(p, "ABC")] == expected


class TestParseFormula:
    def test_precedence(self):
        f = parse_formula("!a & b | c", "ABC")
        assert f == Or((And((a.negate(), b)), c))

    def test_parentheses_and_double_negation(self):
        f = parse_formula("!(a | !b)", "AB")
        assert f == Not(Or((a, b.negate())))
        assert parse_formula("!!a", "A") == a

    def test_constants(self):
        assert parse_formula("true", "A") == TOP
        assert parse_formula("false | a", "A") == Or((BOTTOM, a))

    @pytest.mark.parametrize("text", ["a &", "(a", "a b", "& a", "a $ b", ""])
    def test_syntax_errors(self, text):
        with pytest.raises(LogicError):
            parse_formula(text, "AB")

    def test_unknown(self):
        with pytest.raises(UnknownVariableError):
            parse_formula("z", "AB")

    @settings(max_examples=200)
    @given(st.integers(0, 2**32 - 1))
    def test_str_parses_back_equivalently(self, seed):
        import random

        p = random_formula(random.Random(seed), "ABC")
        q = parse_formula(str(p), "ABC")
        for w in enumerate_worlds("ABC"):
            assert evaluate(p, w) == evaluate(q, w)
