"""Elementary and tame automorphisms of the free algebra on x1, x2.

A pair ``(f1, f2)`` stands for the endomorphism ``x_i -> f_i``.  The
elementary automorphism ``e = (i, alpha, shift)`` sends ``x_i`` to
``alpha*x_i + shift`` where ``shift`` only involves the other variable (and
possibly the unit).  :func:`apply_elementary` returns the pair of the
composite ``pair o e``; hence ``compose([e1, ..., ek])`` is
``e1 o e2 o ... o ek``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .element import Element, as_scalar
from .errors import PreconditionError
from .subalgebra import Outcome, reduce_pair
from .substitute import Endomorphism, apply_endo, eval_one_var

__all__ = [
    "ElementaryAuto",
    "TameDecomposition",
    "NotAnAutomorphism",
    "apply_elementary",
    "compose",
    "identity_pair",
    "tame_decompose",
    "is_automorphism",
]

N = 2


def identity_pair():
    return (Element.var(1, N), Element.var(2, N))


@dataclass(frozen=True)
class ElementaryAuto:
    index: int
    alpha: Fraction
    shift: Element

    def __post_init__(self):
        if self.index not in (1, 2):
            raise PreconditionError("index must be 1 or 2")
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        if not self.alpha:
            raise PreconditionError("alpha must be nonzero")
        if self.shift.n != N:
            raise PreconditionError("shift must be an element over x1, x2")
        if self.shift.uses_letter(self.index):
            raise PreconditionError(f"shift must not involve x{self.index}")

    def inverse(self) -> "ElementaryAuto":
        inv = 1 / self.alpha
        return ElementaryAuto(self.index, inv, -inv * self.shift)

    def is_identity(self) -> bool:
        return self.alpha == 1 and self.shift.is_zero()

    def to_json(self) -> dict:
        return {"index": self.index, "alpha": str(self.alpha), "shift": self.shift.to_json()}

    @classmethod
    def from_json(cls, data) -> "ElementaryAuto":
        return cls(int(data["index"]), Fraction(data["alpha"]), Element.from_json(data["shift"], N))


def apply_elementary(e: ElementaryAuto, pair):
    """Replace ``f_i`` by ``alpha*f_i + shift(f_j)``; ``f_j`` is untouched."""
    f1, f2 = pair
    if f1.n != f2.n:
        raise PreconditionError("pair components over different alphabets")
    image = apply_endo(Endomorphism(N, f1.n, (f1, f2)), e.shift)
    out = [f1, f2]
    out[e.index - 1] = e.alpha * out[e.index - 1] + image
    return tuple(out)


def compose(autos) -> tuple:
    pair = identity_pair()
    for e in autos:
        pair = apply_elementary(e, pair)
    return pair


@dataclass(frozen=True)
class TameDecomposition:
    """Elementary factors, outermost first: the map is ``steps[0] o steps[1] o ...``."""

    steps: tuple

    def compose(self):
        return compose(self.steps)

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "order": "outermost-first: automorphism = steps[0] o steps[1] o ... o steps[-1]",
            "steps": [e.to_json() for e in self.steps],
        }


@dataclass(frozen=True)
class NotAnAutomorphism:
    witness: tuple
    reason: str

    def to_json(self) -> dict:
        return {
            "automorphism": False,
            "reason": self.reason,
            "witness": [w.to_json() for w in self.witness],
        }


def _affine_row(f: Element):
    """(coeff of x1, coeff of x2, constant) if ``f`` is affine, else None."""
    row = [Fraction(0), Fraction(0), f.unit]
    for w, c in f.items():
        if w.degree != 1:
            return None
        row[w.index - 1] = c
    return row


def _solve2(p, q, v):
    """(a, b) with a*p + b*q == v for 2-vectors p, q."""
    det = p[0] * q[1] - p[1] * q[0]
    a = (v[0] * q[1] - v[1] * q[0]) / det
    b = (p[0] * v[1] - p[1] * v[0]) / det
    return a, b


def _affine_fixups(r1, r2):
    """At most three elementary updates taking affine rows r1, r2 to (x1, x2)."""
    x1 = Element.var(1, N)
    x2 = Element.var(2, N)
    one = Element.constant(1, N)
    steps = []
    # row1 <- v with v1 != 0 and v independent of row2's linear part
    v = (Fraction(1), Fraction(0)) if r2[1] != 0 else (Fraction(1), Fraction(1))
    a, b = _solve2(r1[:2], r2[:2], v)
    steps.append(ElementaryAuto(1, a, b * x2 - (a * r1[2] + b * r2[2]) * one))
    # row2 <- e2 using row1 == v (constant part already zero)
    a, b = _solve2(r2[:2], v, (Fraction(0), Fraction(1)))
    steps.append(ElementaryAuto(2, a, b * x1 - a * r2[2] * one))
    # row1 <- e1 using row2 == e2
    steps.append(ElementaryAuto(1, 1 / v[0], -v[1] / v[0] * x2))
    return [e for e in steps if not e.is_identity()]


def tame_decompose(f1: Element, f2: Element):
    """Factor ``(f1, f2)`` into elementary automorphisms.

    Returns a :class:`TameDecomposition` or, when the reduction ends in a
    pair that is not affine and invertible, :class:`NotAnAutomorphism`.
    """
    if f1.n != N or f2.n != N:
        raise PreconditionError("automorphisms are supported over x1, x2 only")
    result = reduce_pair(f1, f2)
    if result.outcome is not Outcome.FREE_RANK2:
        return NotAnAutomorphism(result.final_pair, f"pair collapses ({result.outcome.value})")
    p1, p2 = result.final_pair
    r1, r2 = _affine_row(p1), _affine_row(p2)
    if r1 is None or r2 is None:
        return NotAnAutomorphism(result.final_pair, "reduced pair is not affine")
    if r1[0] * r2[1] - r1[1] * r2[0] == 0:
        return NotAnAutomorphism(result.final_pair, "linear parts are dependent")
    # reduction step: f_b <- f_b - c*s(f_a), i.e. the update (b, 1, -c*s(x_a))
    forward = [
        ElementaryAuto(st.which, 1, -st.coeff * eval_one_var(st.s, Element.var(3 - st.which, N)))
        for st in result.steps
    ]
    forward += _affine_fixups(r1, r2)
    # pair o forward[0] o ... o forward[-1] == id
    steps = tuple(e.inverse() for e in reversed(forward))
    return TameDecomposition(steps)


def is_automorphism(f1: Element, f2: Element) -> bool:
    dec = tame_decompose(f1, f2)
    if isinstance(dec, NotAnAutomorphism):
        return False
    if dec.compose() != (f1, f2):
        raise AssertionError("tame decomposition does not recompose to the input pair")
    return True
