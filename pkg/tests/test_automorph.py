import json
from fractions import Fraction

import pytest

from rsalg.automorph import (
    ElementaryAuto,
    NotAnAutomorphism,
    TameDecomposition,
    apply_elementary,
    compose,
    identity_pair,
    is_automorphism,
    tame_decompose,
)
from rsalg.element import Element
from rsalg.errors import PreconditionError

from conftest import random_element

X1, X2 = Element.var(1, 2), Element.var(2, 2)
ZERO = Element.zero(2)


def random_shift(rng, j, max_degree=2):
    p = random_element(rng, 1, max_degree, max_terms=2, unit=rng.random() < 0.3)
    return Element(2, {w.relabel(2, {1: j}): c for w, c in p.items()}, p.unit)


def random_auto(rng, max_degree=2):
    i = rng.randint(1, 2)
    return ElementaryAuto(i, rng.choice([1, -1, 2, Fraction(1, 3)]), random_shift(rng, 3 - i, max_degree))


class TestElementary:
    def test_examples(self):
        assert apply_elementary(ElementaryAuto(2, 1, X1 * X1), (X1, X2)) == (X1, X2 + X1 * X1)
        assert apply_elementary(ElementaryAuto(1, 2, ZERO), (X1, X2)) == (2 * X1, X2)

    def test_validation(self):
        with pytest.raises(PreconditionError):
            ElementaryAuto(1, 0, X2)
        with pytest.raises(PreconditionError):
            ElementaryAuto(1, 1, X1 * X2)
        with pytest.raises(PreconditionError):
            ElementaryAuto(3, 1, X2)

    def test_inverse_round_trip(self, rng):
        for _ in range(20):
            e = random_auto(rng)
            p = (random_element(rng, 2, 2, unit=True), random_element(rng, 2, 2, unit=True))
            assert apply_elementary(e.inverse(), apply_elementary(e, p)) == p
            assert compose([e, e.inverse()]) == identity_pair()

    def test_json(self, rng):
        e = random_auto(rng)
        assert ElementaryAuto.from_json(json.loads(json.dumps(e.to_json()))) == e


class TestCompose:
    def test_examples(self):
        assert compose([]) == (X1, X2)
        assert compose([ElementaryAuto(2, 1, X1 * X1)]) == (X1, X2 + X1 * X1)
        swap = [
            ElementaryAuto(1, 1, X2),
            ElementaryAuto(2, 1, -X1),
            ElementaryAuto(1, 1, X2),
            ElementaryAuto(2, -1, ZERO),
        ]
        assert compose(swap) == (X2, X1)


class TestTameDecompose:
    def test_examples(self):
        dec = tame_decompose(X1, X2 + X1 * X1)
        assert dec.steps == (ElementaryAuto(2, 1, X1 * X1),)
        dec = tame_decompose(X2, X1)
        assert 3 <= len(dec) <= 4 and dec.compose() == (X2, X1)
        bad = tame_decompose(X1 * X1, X2)
        assert isinstance(bad, NotAnAutomorphism) and bad.witness == (X1 * X1, X2)

    def test_is_automorphism(self):
        assert is_automorphism(X1, X2)
        assert is_automorphism(X1 + X2, X2)
        assert not is_automorphism(X1, X1)
        assert not is_automorphism(X1 * X2, X2)

    def test_affine_with_translations(self):
        f1 = 2 * X2 - X1 + 3
        f2 = Fraction(1, 2) * X1 + 7
        dec = tame_decompose(f1, f2)
        assert dec.compose() == (f1, f2)
        assert len(dec) <= 3

    def test_round_trip(self, rng):
        for _ in range(25):
            autos = [random_auto(rng) for _ in range(rng.randint(0, 4))]
            pair = compose(autos)
            dec = tame_decompose(*pair)
            assert isinstance(dec, TameDecomposition)
            assert dec.compose() == pair

    def test_json_direction_label(self):
        blob = tame_decompose(X2, X1).to_json()
        assert "outermost-first" in blob["order"]
        steps = [ElementaryAuto.from_json(s) for s in blob["steps"]]
        assert compose(steps) == (X2, X1)

    def test_rejects_wrong_alphabet(self):
        with pytest.raises(PreconditionError):
            tame_decompose(Element.var(1, 3), Element.var(2, 3))
