import json
from fractions import Fraction

import pytest

from rsalg.element import Element
from rsalg.errors import PreconditionError
from rsalg.subalgebra import (
    Outcome,
    PairReductionStep,
    centralizer_check,
    evaluate_pair_expression,
    find_reduction,
    leading_eval,
    one_generated_membership,
    reduce_pair,
    two_generated_membership,
)
from rsalg.substitute import eval_one_var, eval_word
from rsalg.words import parse_word

from conftest import good_words_upto, random_element

X1, X2 = Element.var(1, 2), Element.var(2, 2)
x = lambda text: parse_word(text, 1)


class TestOneGenerated:
    def test_examples(self):
        Y = Element.var(1, 1)
        assert one_generated_membership(Y * (Y * Y), Y) == Element(1, {x("(x1*(x1*x1))"): 1})
        assert one_generated_membership(Y, Y * Y) is None
        z = Y * Y
        h = eval_one_var(x("((x1*x1)*x1)"), z) + 2 * z
        got = one_generated_membership(h, z)
        assert got == Element(1, {x("((x1*x1)*x1)"): 1, x("x1"): 2})

    def test_constant_generator_rejected(self):
        with pytest.raises(PreconditionError):
            one_generated_membership(X1, Element.constant(2, 2))

    def test_round_trip(self, rng):
        for _ in range(20):
            z = random_element(rng, 2, 2, unit=True)
            p = random_element(rng, 1, 3, unit=True)
            h = eval_one_var(p, z)
            got = one_generated_membership(h, z)
            assert got is not None and eval_one_var(got, z) == h

    def test_distinct_words_distinct_leading(self, rng):
        words = good_words_upto(1, 3)
        for _ in range(10):
            z = random_element(rng, 2, 3)
            leads = [eval_one_var(s, z).leading().word for s in words]
            assert len(set(leads)) == len(words)
            assert leads == [leading_eval(s, (z.leading().word,)) for s in words]


class TestFindReduction:
    def test_examples(self):
        st = find_reduction(X1, X2 + X1 * X1)
        assert st == PairReductionStep(2, x("(x1*x1)"), Fraction(1))
        assert find_reduction(X1, X2) is None
        f = X1 * X1
        assert find_reduction(f, 3 * f + X1) == PairReductionStep(2, x("x1"), Fraction(3))

    def test_constant_rejected(self):
        with pytest.raises(PreconditionError):
            find_reduction(X1, Element.constant(1, 2))


class TestReducePair:
    def test_examples(self):
        r = reduce_pair(X1, X2 + X1 * X1)
        assert r.outcome is Outcome.FREE_RANK2 and r.generators == (X1, X2) and len(r.steps) == 1
        f = X1 * X1
        r = reduce_pair(f, f * f)
        assert r.outcome is Outcome.RANK1 and r.generators == (f,) and len(r.steps) == 1
        r = reduce_pair(X1, X2)
        assert r.outcome is Outcome.FREE_RANK2 and r.steps == ()

    def test_degenerate(self):
        r = reduce_pair(Element.constant(1, 2), Element.constant(2, 2))
        assert r.outcome is Outcome.DEGENERATE and r.generators == ()
        r = reduce_pair(X1 + 1, X1)
        assert r.outcome is Outcome.RANK1

    def test_replay_and_json(self, rng):
        for _ in range(20):
            f1 = random_element(rng, 2, 3, unit=True)
            f2 = f1 * f1 + random_element(rng, 2, 2) if rng.random() < 0.5 else random_element(rng, 2, 3)
            r = reduce_pair(f1, f2)
            assert r.replay(f1, f2) == r.final_pair
            blob = json.loads(json.dumps(r.to_json()))
            steps = tuple(PairReductionStep.from_json(s) for s in blob["steps"])
            assert steps == r.steps
            if r.outcome is Outcome.FREE_RANK2:
                assert find_reduction(*r.generators) is None


class TestTwoGenerated:
    def test_examples(self):
        got = two_generated_membership(X1 * X2, X1, X2)
        assert got == Element(2, {parse_word("(x1*x2)", 2): 1})
        X = [Element.var(i, 3) for i in (1, 2, 3)]
        assert two_generated_membership(X[2], X[0], X[1]) is None

    def test_unreduced_rejected(self):
        with pytest.raises(PreconditionError):
            two_generated_membership(X1, X1, X2 + X1 * X1)

    def test_round_trip(self, rng):
        r = reduce_pair(X1, X2 + X1 * X1)
        g1, g2 = r.generators
        for _ in range(10):
            p = random_element(rng, 2, 3, unit=True)
            h = evaluate_pair_expression(p, g1, g2)
            got = two_generated_membership(h, g1, g2)
            assert got == p

    def test_reduced_pair_leading_injective(self):
        pairs = [(X1 * X1 + X2, X2 * X1), (X1, X2 * X2), (X1 * X2, X2 * X1)]
        words = good_words_upto(2, 3)
        for f1, f2 in pairs:
            assert find_reduction(f1, f2) is None
            leads = [eval_word(w, (f1, f2), 2).leading().word for w in words]
            assert len(set(leads)) == len(words)


class TestCentralizer:
    def test_examples(self, rng):
        f = random_element(rng, 2, 3, unit=True)
        res = centralizer_check(f, 3 * f + 2)
        assert res.commute and (res.c, res.alpha) == (3, 2)
        assert not centralizer_check(X1, X2).commute
        assert not centralizer_check(X1 * X1, X1).commute

    def test_constant_g(self):
        res = centralizer_check(X1, Element.constant(5, 2))
        assert res.commute and res.c == 0 and res.alpha == 5

    def test_constant_f_rejected(self):
        with pytest.raises(PreconditionError):
            centralizer_check(Element.constant(1, 2), X1)
