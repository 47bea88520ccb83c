"""One- and two-generated subalgebras, reducible pairs and centralisers.

Leading words of evaluated words never need a full expansion: the leading
word of ``w(f1, f2)`` is obtained by evaluating ``w`` at the leading words
of ``f1`` and ``f2`` with :func:`~rsalg.element.leading_product` in place of
the product.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction

from .element import Element, commutator, leading_product
from .errors import PreconditionError
from .substitute import Endomorphism, apply_endo, eval_one_var, eval_word
from .words import Word, enumerate_good, enumerate_good_with_letter, parse_word

__all__ = [
    "leading_eval",
    "one_generated_membership",
    "PairReductionStep",
    "Outcome",
    "PairReductionResult",
    "find_reduction",
    "apply_step",
    "reduce_pair",
    "two_generated_membership",
    "CentralizerResult",
    "centralizer_check",
    "evaluate_pair_expression",
]


def leading_eval(w: Word, leads, memo=None) -> Word:
    """Leading word of ``w`` evaluated at elements with leading words ``leads``."""
    if memo is None:
        memo = {}
    hit = memo.get(w)
    if hit is not None:
        return hit
    if w.is_leaf:
        out = leads[w.index - 1]
    else:
        out = leading_product(leading_eval(w.left, leads, memo), leading_eval(w.right, leads, memo))
    memo[w] = out
    return out


@functools.lru_cache(maxsize=64)
def _one_var_words(k: int) -> tuple:
    return tuple(enumerate_good(1, k))


def _match_one_var(k: int, base: Word, target: Word):
    """Smallest one-letter good word ``s`` of degree k with lead(s(base)) == target."""
    for s in _one_var_words(k):
        if leading_eval(s, (base,)) == target:
            return s
    return None


def _require_nonconstant(*elems):
    for e in elems:
        if e.is_constant():
            raise PreconditionError(f"{e} is constant")


def one_generated_membership(h: Element, z: Element) -> Element | None:
    """Express ``h`` as a polynomial in ``z`` (an element over the letter x).

    Returns None when ``h`` is not in the subalgebra generated by ``z`` and
    the unit.
    """
    _require_nonconstant(z)
    if h.n != z.n:
        raise PreconditionError("elements over different alphabets")
    lz = z.leading()
    dz = lz.word.degree
    rem = h
    expr = {}
    while not rem.is_constant():
        lt = rem.leading()
        if lt.word.degree % dz:
            return None
        k = lt.word.degree // dz
        s = _match_one_var(k, lz.word, lt.word)
        if s is None:
            return None
        c = lt.coeff / lz.coeff**k
        rem = rem - c * eval_one_var(s, z)
        expr[s] = expr.get(s, 0) + c
    return Element(1, expr, rem.unit)


@dataclass(frozen=True)
class PairReductionStep:
    """``f_which <- f_which - coeff * s(f_other)``."""

    which: int
    s: Word
    coeff: Fraction

    def to_json(self) -> dict:
        return {"which": self.which, "s": str(self.s), "coeff": str(self.coeff)}

    @classmethod
    def from_json(cls, data) -> "PairReductionStep":
        return cls(int(data["which"]), parse_word(data["s"], 1), Fraction(data["coeff"]))


def find_reduction(f1: Element, f2: Element) -> PairReductionStep | None:
    _require_nonconstant(f1, f2)
    pair = (f1, f2)
    for a, b in ((1, 2), (2, 1)):
        la, lb = pair[a - 1].leading(), pair[b - 1].leading()
        da, db = la.word.degree, lb.word.degree
        if db % da:
            continue
        k = db // da
        s = _match_one_var(k, la.word, lb.word)
        if s is not None:
            return PairReductionStep(b, s, lb.coeff / la.coeff**k)
    return None


def apply_step(step: PairReductionStep, pair):
    f = list(pair)
    other = f[2 - step.which]
    f[step.which - 1] = f[step.which - 1] - step.coeff * eval_one_var(step.s, other)
    return tuple(f)


class Outcome(enum.Enum):
    FREE_RANK2 = "free_rank2"
    RANK1 = "rank1"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PairReductionResult:
    outcome: Outcome
    generators: tuple  # (g1, g2), (g,) or ()
    final_pair: tuple
    steps: tuple

    def replay(self, f1: Element, f2: Element):
        pair = (f1, f2)
        for st in self.steps:
            pair = apply_step(st, pair)
        return pair

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "generators": [g.to_json() for g in self.generators],
            "final_pair": [g.to_json() for g in self.final_pair],
            "steps": [s.to_json() for s in self.steps],
        }


def reduce_pair(f1: Element, f2: Element) -> PairReductionResult:
    """Apply reductions until the pair is reduced or collapses.

    Each step strictly lowers one leading word, so the loop terminates.
    """
    if f1.n != f2.n:
        raise PreconditionError("elements over different alphabets")
    pair = (f1, f2)
    steps = []
    while not (pair[0].is_constant() or pair[1].is_constant()):
        step = find_reduction(*pair)
        if step is None:
            return PairReductionResult(Outcome.FREE_RANK2, pair, pair, tuple(steps))
        pair = apply_step(step, pair)
        steps.append(step)
    survivors = tuple(g for g in pair if not g.is_constant())
    outcome = Outcome.RANK1 if survivors else Outcome.DEGENERATE
    return PairReductionResult(outcome, survivors, pair, tuple(steps))


def two_generated_membership(h: Element, f1: Element, f2: Element) -> Element | None:
    """Express ``h`` as a polynomial in a reduced pair (over letters y1, y2)."""
    _require_nonconstant(f1, f2)
    if not (h.n == f1.n == f2.n):
        raise PreconditionError("elements over different alphabets")
    if find_reduction(f1, f2) is not None:
        raise PreconditionError("pair is reducible; run reduce_pair first")
    l1, l2 = f1.leading(), f2.leading()
    d1, d2 = l1.word.degree, l2.word.degree
    leads = (l1.word, l2.word)
    images = (f1, f2)
    rem = h
    expr = {}
    while not rem.is_constant():
        lt = rem.leading()
        target = lt.word.degree
        found = None
        for a in range(target // d1 + 1):
            r = target - a * d1
            if r % d2:
                continue
            b = r // d2
            if a + b == 0:
                continue
            for w in enumerate_good_with_letter(2, a + b, 1, a):
                if leading_eval(w, leads) == lt.word:
                    if found is None or w.key < found[0].key:
                        found = (w, a, b)
                    break
        if found is None:
            return None
        w, a, b = found
        c = lt.coeff / (l1.coeff**a * l2.coeff**b)
        rem = rem - c * eval_word(w, images, h.n)
        expr[w] = expr.get(w, 0) + c
    return Element(2, expr, rem.unit)


def evaluate_pair_expression(p: Element, f1: Element, f2: Element) -> Element:
    return apply_endo(Endomorphism(2, f1.n, (f1, f2)), p)


@dataclass(frozen=True)
class CentralizerResult:
    commute: bool
    c: Fraction | None = None
    alpha: Fraction | None = None

    def to_json(self) -> dict:
        out = {"commute": self.commute}
        if self.commute:
            out["c"] = str(self.c)
            out["alpha"] = str(self.alpha)
        return out


def centralizer_check(f: Element, g: Element) -> CentralizerResult:
    """Whether ``g`` commutes with ``f``; if so, ``g = c*f + alpha``."""
    _require_nonconstant(f)
    if not commutator(f, g).is_zero():
        return CentralizerResult(False)
    if g.is_constant():
        return CentralizerResult(True, Fraction(0), g.unit)
    lf, lg = f.leading(), g.leading()
    c = lg.coeff / lf.coeff
    rest = g - c * f
    if not rest.is_constant():
        raise AssertionError(f"commuting pair without scalar decomposition: {f}, {g}")
    return CentralizerResult(True, c, rest.unit)
