import random
from fractions import Fraction

import pytest

from rsalg.element import Element
from rsalg.words import enumerate_good


def good_words_upto(n, d):
    return [w for k in range(1, d + 1) for w in enumerate_good(n, k)]


def random_element(rng, n, max_degree, max_terms=3, unit=False, min_degree=1):
    pool = [w for w in good_words_upto(n, max_degree) if w.degree >= min_degree]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(pool)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
    e = Element(n, terms, rng.choice([0, 1, -2]) if unit else 0)
    if e.is_constant():
        return random_element(rng, n, max_degree, max_terms, unit, min_degree)
    return e


@pytest.fixture
def rng():
    return random.Random(20240611)
