"""Endomorphisms and substitutions.

An endomorphism is fixed by the images of the variables; it may change the
alphabet size (the map collapsing the extra letter ``y`` onto a relator is
the main example).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .element import Element, _accumulate, multiply, normalize_word
from .errors import AlphabetMismatchError, InvalidGeneratorError, PreconditionError
from .words import Word, is_good, letter_count

__all__ = [
    "Endomorphism",
    "apply_endo",
    "eval_one_var",
    "eval_word",
    "rho_w",
    "substitute_y",
]


@dataclass(frozen=True)
class Endomorphism:
    source_n: int
    target_n: int
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source_n:
            raise PreconditionError(
                f"need {self.source_n} images, got {len(self.images)}"
            )
        for img in self.images:
            if img.n != self.target_n:
                raise AlphabetMismatchError("all images must share the target alphabet")

    @classmethod
    def from_images(cls, images, target_n: int | None = None) -> "Endomorphism":
        images = tuple(images)
        if target_n is None:
            target_n = images[0].n
        return cls(len(images), target_n, images)

    @classmethod
    def identity(cls, n: int) -> "Endomorphism":
        return cls(n, n, tuple(Element.var(i, n) for i in range(1, n + 1)))

    def __call__(self, a: Element) -> Element:
        return apply_endo(self, a)

    def to_json(self) -> dict:
        return {f"x{i}": img.to_json() for i, img in enumerate(self.images, 1)}

    @classmethod
    def from_json(cls, data, source_n: int, target_n: int) -> "Endomorphism":
        if isinstance(data, str):
            data = json.loads(data)
        images = []
        for i in range(1, source_n + 1):
            images.append(Element.from_json(data[f"x{i}"], target_n))
        return cls(source_n, target_n, tuple(images))


def eval_word(w: Word, images, target_n: int, memo: dict | None = None) -> Element:
    """Image of a single word when ``x_i`` is sent to ``images[i-1]``."""
    if memo is None:
        memo = {}
    hit = memo.get(w)
    if hit is not None:
        return hit
    if w.is_leaf:
        out = images[w.index - 1]
    else:
        out = multiply(
            eval_word(w.left, images, target_n, memo),
            eval_word(w.right, images, target_n, memo),
        )
    memo[w] = out
    return out


def apply_endo(e: Endomorphism, a: Element) -> Element:
    if a.n != e.source_n:
        raise AlphabetMismatchError(
            f"element over {a.n} letters, endomorphism expects {e.source_n}"
        )
    memo = {}
    terms = {}
    unit = a.unit
    for w, c in a.items():
        img = eval_word(w, e.images, e.target_n, memo)
        _accumulate(terms, img._terms, c)
        unit += c * img.unit
    return Element._raw(e.target_n, terms, unit)


def eval_one_var(s, f: Element) -> Element:
    """Image of a one-letter word (or element) under ``x -> f``."""
    if isinstance(s, Word):
        if s.n != 1:
            raise AlphabetMismatchError("expected a word in the single letter x")
        return eval_word(s, (f,), f.n)
    if s.n != 1:
        raise AlphabetMismatchError("expected an element in the single letter x")
    return apply_endo(Endomorphism(1, f.n, (f,)), s)


def rho_w(n: int, w: Word) -> Endomorphism:
    """Fix x1..x_{n-1} and send x_n to x_n*w."""
    if n < 1:
        raise PreconditionError("alphabet size must be positive")
    if w.n != n or not is_good(w):
        raise PreconditionError(f"{w} must be a good word over {n} letters")
    images = [Element.var(i, n) for i in range(1, n)]
    images.append(normalize_word(Word.node(Word.leaf(n, n), w)))
    return Endomorphism(n, n, tuple(images))


def substitute_y(u: Word, f: Element) -> Element:
    """Image of ``u`` under ``x_i -> x_i``, ``y -> f``; ``y`` is the top letter."""
    n = f.n
    if u.n != n + 1:
        raise AlphabetMismatchError(
            f"word must be over the {n + 1}-letter alphabet extended by y"
        )
    if letter_count(u, n + 1) != 1:
        raise InvalidGeneratorError(f"{u} must contain y exactly once")
    images = tuple(Element.var(i, n) for i in range(1, n + 1)) + (f,)
    return eval_word(u, images, n)
