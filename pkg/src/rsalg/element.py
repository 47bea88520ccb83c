"""Elements of the free right-symmetric algebra over the rationals.

An :class:`Element` is a finite rational combination of good words plus the
coefficient of a formally adjoined unit.  Products of good words are brought
to normal form with the right-symmetric identity

    (u1*u2)*v = (u1*v)*u2 + u1*(u2*v) - u1*(v*u2)

applied whenever the right factor ``u2`` of the left operand is larger than
``v``.  Every rewritten word is strictly smaller than the original at the
same degree, so the recursion terminates.
"""

from __future__ import annotations

import bisect
import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import AlphabetMismatchError, PreconditionError
from .words import Word, _compose, is_good, parse_word, r_decompose

__all__ = [
    "Element",
    "LeadingTerm",
    "as_scalar",
    "normalize_word",
    "mul_good",
    "add",
    "scale",
    "multiply",
    "commutator",
    "leading",
    "leading_product",
]


def as_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not supported")
    return Fraction(c)


@dataclass(frozen=True)
class LeadingTerm:
    word: Word
    coeff: Fraction


class Element:
    """Immutable exact-rational combination of good words (plus a unit part).

    Iteration via :meth:`items` is in descending word order, so the first
    item is the leading term.
    """

    __slots__ = ("n", "unit", "_terms", "_desc", "_hash")

    def __init__(self, n: int, terms: Mapping[Word, object] | Iterable = (), unit=0):
        if n < 1:
            raise PreconditionError("alphabet size must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for w, c in items:
            if w.n != n:
                raise AlphabetMismatchError(f"word {w} is not over an alphabet of size {n}")
            if not is_good(w):
                raise PreconditionError(f"{w} is not a good word; use normalize_word")
            c = as_scalar(c) + clean.get(w, 0)
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self._init(n, clean, as_scalar(unit))

    def _init(self, n, terms, unit):
        self.n = n
        self.unit = unit
        self._terms = terms
        self._desc = None
        self._hash = None

    @classmethod
    def _raw(cls, n, terms, unit=Fraction(0)):
        # trusted constructor: terms already good, nonzero, over n
        obj = cls.__new__(cls)
        obj._init(n, terms, unit)
        return obj

    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, c, n: int) -> "Element":
        return cls._raw(n, {}, as_scalar(c))

    @classmethod
    def var(cls, index: int, n: int) -> "Element":
        return cls._raw(n, {Word.leaf(index, n): Fraction(1)})

    @classmethod
    def from_word(cls, w: Word, coeff=1) -> "Element":
        return scale(coeff, normalize_word(w))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        if self._desc is None:
            self._desc = sorted(self._terms.items(), key=lambda wc: wc[0].key, reverse=True)
        return self._desc

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(w, Fraction(0))

    def support(self) -> list:
        return [w for w, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._terms and not self.unit

    def is_constant(self) -> bool:
        return not self._terms

    def leading(self) -> LeadingTerm | None:
        if not self._terms:
            return None
        w, c = self.items()[0]
        return LeadingTerm(w, c)

    @property
    def degree(self) -> int:
        """Degree of the leading word (0 for constants)."""
        return self.items()[0][0].degree if self._terms else 0

    def uses_letter(self, index: int) -> bool:
        return any(index in set(w.leaves()) for w in self._terms)

    def homogeneous_parts(self) -> dict:
        parts = {}
        for w, c in self._terms.items():
            parts.setdefault(w.degree, {})[w] = c
        return {d: Element._raw(self.n, t) for d, t in parts.items()}

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.n == other.n and self.unit == other.unit and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return not self._terms and self.unit == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.unit, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element.constant(other, self.n)
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale(-1, self)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element.constant(other, self.n)
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, scale(-1, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"Element({self}, n={self.n})"

    def to_json(self) -> dict:
        return {
            "unit": str(self.unit),
            "terms": [{"coeff": str(c), "word": str(w)} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, data, n: int) -> "Element":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data.get("terms", []):
            w = parse_word(t["word"], n)
            terms[w] = terms.get(w, 0) + Fraction(t["coeff"])
        return cls(n, terms, Fraction(data.get("unit", "0")))


def _fmt_coeff(c: Fraction) -> str:
    return str(c)


def to_string(a: Element) -> str:
    """Canonical text: terms in descending order, unit last, e.g. ``3/2*x1 - x2 + 1``."""
    parts = []
    for w, c in a.items():
        parts.append((c, str(w)))
    if a.unit:
        parts.append((a.unit, None))
    if not parts:
        return "0"
    out = []
    for k, (c, w) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if w is None:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = w
        else:
            body = f"{_fmt_coeff(mag)}*{w}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _check_same(a: Element, b: Element):
    if a.n != b.n:
        raise AlphabetMismatchError(
            f"elements over alphabets of size {a.n} and {b.n}"
        )


def _accumulate(acc: dict, terms, c):
    for w, d in terms.items():
        v = acc.get(w, 0) + c * d
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


@functools.lru_cache(maxsize=1 << 20)
def mul_good(u: Word, v: Word) -> dict:
    """Normal form of the product of two good words, as ``{word: coeff}``.

    The returned mapping is shared through the cache; callers must not
    mutate it.
    """
    left = u.left
    if u.is_leaf or u.right.key <= v.key:
        return {Word.node(u, v): Fraction(1)}
    u1, u2 = left, u.right
    acc = {}
    # (u1*u2)*v = (u1*v)*u2 + u1*(u2*v) - u1*(v*u2)
    for w, c in mul_good(u1, v).items():
        _accumulate(acc, mul_good(w, u2), c)
    for w, c in mul_good(u2, v).items():
        _accumulate(acc, mul_good(u1, w), c)
    for w, c in mul_good(v, u2).items():
        _accumulate(acc, mul_good(u1, w), -c)
    return acc


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    acc = {}
    for u, c in a.items():
        for v, d in b.items():
            _accumulate(acc, mul_good(u, v), c * d)
    return acc


@functools.lru_cache(maxsize=1 << 16)
def _normalize_terms(w: Word) -> dict:
    if w.is_leaf or is_good(w):
        return {w: Fraction(1)}
    return _mul_terms(_normalize_terms(w.left), _normalize_terms(w.right))


def normalize_word(w: Word) -> Element:
    """Unique combination of good words equal to the (possibly bad) word ``w``."""
    return Element._raw(w.n, dict(_normalize_terms(w)))


def add(a: Element, b: Element) -> Element:
    _check_same(a, b)
    if len(a._terms) < len(b._terms):
        a, b = b, a
    terms = dict(a._terms)
    _accumulate(terms, b._terms, 1)
    return Element._raw(a.n, terms, a.unit + b.unit)


def scale(c, a: Element) -> Element:
    c = as_scalar(c)
    if not c:
        return Element.zero(a.n)
    return Element._raw(a.n, {w: c * d for w, d in a._terms.items()}, c * a.unit)


def multiply(a: Element, b: Element) -> Element:
    """Product in the unitalised algebra; the unit part acts as identity."""
    _check_same(a, b)
    terms = _mul_terms(a._terms, b._terms)
    if a.unit:
        _accumulate(terms, b._terms, a.unit)
    if b.unit:
        _accumulate(terms, a._terms, b.unit)
    return Element._raw(a.n, terms, a.unit * b.unit)


def commutator(a: Element, b: Element) -> Element:
    return multiply(a, b) - multiply(b, a)


def leading(a: Element) -> LeadingTerm | None:
    return a.leading()


def leading_product(u: Word, v: Word) -> Word:
    """Leading word of ``u*v`` for good ``u``, ``v`` without expanding.

    ``v`` is inserted into the sorted right-factor list of ``u`` just before
    the first factor strictly greater than ``v``.
    """
    if u.n != v.n:
        raise AlphabetMismatchError("words over different alphabets")
    head, tail = r_decompose(u)
    pos = bisect.bisect_right(tail, v.key, key=lambda t: t.key)
    return _compose(head.word, tail[:pos] + (v,) + tail[pos:])


def clear_caches():
    mul_good.cache_clear()
    _normalize_terms.cache_clear()
