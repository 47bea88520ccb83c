"""Nonassociative words over the ordered alphabet x1 < x2 < ... < xn.

A word is a full binary tree whose leaves carry variable indices.  Words are
ordered first by degree, then (for products) lexicographically on the pair
(left factor, right factor).  A word is *good* when no subword has the shape
``(r*s)*t`` with ``s > t``; good words form a linear basis of the free
right-symmetric algebra.

Every good word ``g`` factors uniquely as ``x_i R_{w1} R_{w2} ... R_{wm}``
(right multiplications along the left spine) with ``w1 <= ... <= wm`` good.
:func:`r_decompose` and :func:`r_compose` convert between the two views, and
:func:`enumerate_good` builds the basis degree by degree from that
factorisation.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import config
from .errors import (
    AlphabetMismatchError,
    InvalidDecompositionError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)

__all__ = [
    "Ordering",
    "Variable",
    "Word",
    "RDecomposition",
    "var",
    "compare",
    "is_good",
    "r_decompose",
    "r_compose",
    "enumerate_good",
    "enumerate_good_with_letter",
    "letter_count",
    "parse_word",
]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Variable:
    index: int
    alphabet_size: int

    def __post_init__(self):
        if not 1 <= self.index <= self.alphabet_size:
            raise PreconditionError(
                f"variable index {self.index} outside alphabet of size {self.alphabet_size}"
            )

    @property
    def word(self) -> "Word":
        return Word.leaf(self.index, self.alphabet_size)

    def __str__(self):
        return f"x{self.index}"


class Word:
    """Immutable binary tree with cached degree, sort key and hash.

    ``key`` is a nested tuple whose native tuple ordering coincides with the
    word order: ``(1, i)`` for the letter ``x_i`` and
    ``(degree, left.key, right.key)`` for a product.
    """

    __slots__ = ("left", "right", "index", "n", "degree", "key", "_hash", "_good")

    def __init__(self, left, right, index, n, degree, key):
        self.left = left
        self.right = right
        self.index = index
        self.n = n
        self.degree = degree
        self.key = key
        self._hash = hash((key, n))
        self._good = None

    @classmethod
    def leaf(cls, index: int, n: int) -> "Word":
        if not 1 <= index <= n:
            raise PreconditionError(f"variable index {index} outside alphabet of size {n}")
        return cls(None, None, index, n, 1, (1, index))

    @classmethod
    def node(cls, left: "Word", right: "Word") -> "Word":
        if left.n != right.n:
            raise AlphabetMismatchError(
                f"cannot multiply words over alphabets of size {left.n} and {right.n}"
            )
        degree = left.degree + right.degree
        return cls(left, right, None, left.n, degree, (degree, left.key, right.key))

    @property
    def is_leaf(self) -> bool:
        return self.index is not None

    def __mul__(self, other):
        if isinstance(other, Word):
            return Word.node(self, other)
        return NotImplemented

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Word):
            return NotImplemented
        return self._hash == other._hash and self.n == other.n and self.key == other.key

    def __hash__(self):
        return self._hash

    def _check(self, other):
        if not isinstance(other, Word):
            return False
        if self.n != other.n:
            raise AlphabetMismatchError(
                f"cannot compare words over alphabets of size {self.n} and {other.n}"
            )
        return True

    def __lt__(self, other):
        if not self._check(other):
            return NotImplemented
        return self.key < other.key

    def __le__(self, other):
        if not self._check(other):
            return NotImplemented
        return self.key <= other.key

    def __gt__(self, other):
        if not self._check(other):
            return NotImplemented
        return self.key > other.key

    def __ge__(self, other):
        if not self._check(other):
            return NotImplemented
        return self.key >= other.key

    def __str__(self):
        if self.is_leaf:
            return f"x{self.index}"
        return f"({self.left}*{self.right})"

    def __repr__(self):
        return f"Word({self})"

    def leaves(self) -> Iterator[int]:
        stack = [self]
        while stack:
            w = stack.pop()
            if w.is_leaf:
                yield w.index
            else:
                stack.append(w.right)
                stack.append(w.left)

    def relabel(self, n: int, mapping=None) -> "Word":
        """Same tree over an alphabet of size ``n``; ``mapping`` renames indices."""
        if self.is_leaf:
            i = self.index if mapping is None else mapping[self.index]
            return Word.leaf(i, n)
        return Word.node(self.left.relabel(n, mapping), self.right.relabel(n, mapping))


def var(index: int, n: int) -> Word:
    return Word.leaf(index, n)


def compare(u: Word, v: Word) -> Ordering:
    if u.n != v.n:
        raise AlphabetMismatchError(
            f"cannot compare words over alphabets of size {u.n} and {v.n}"
        )
    if u.key < v.key:
        return Ordering.LESS
    if u.key > v.key:
        return Ordering.GREATER
    return Ordering.EQUAL


def is_good(w: Word) -> bool:
    if w._good is not None:
        return w._good
    stack = [w]
    good = True
    while stack:
        u = stack.pop()
        if u.is_leaf:
            continue
        if u._good is True:
            continue
        if u._good is False:
            good = False
            break
        left = u.left
        if not left.is_leaf and left.right.key > u.right.key:
            good = False
            break
        stack.append(left)
        stack.append(u.right)
    w._good = good
    return good


@dataclass(frozen=True)
class RDecomposition:
    head: Variable
    tail: tuple

    def __iter__(self):
        yield self.head
        yield self.tail


def r_decompose(g: Word) -> RDecomposition:
    """Peel right factors off the left spine of a good word.

    Raises :class:`InvalidDecompositionError` when the spine tail is not
    sorted or contains a bad entry, i.e. exactly when ``g`` is bad.
    """
    tail = []
    u = g
    while not u.is_leaf:
        tail.append(u.right)
        u = u.left
    tail.reverse()
    for a, b in zip(tail, tail[1:]):
        if a.key > b.key:
            raise InvalidDecompositionError(f"{g} is not good: right factors out of order")
    for t in tail:
        if not is_good(t):
            raise InvalidDecompositionError(f"{g} is not good: factor {t} is bad")
    return RDecomposition(Variable(u.index, g.n), tuple(tail))


def _compose(head: Word, tail: Sequence[Word]) -> Word:
    w = head
    for t in tail:
        w = Word.node(w, t)
    return w


def r_compose(head, tail: Sequence[Word]) -> Word:
    if isinstance(head, Variable):
        head = head.word
    elif not (isinstance(head, Word) and head.is_leaf):
        raise InvalidDecompositionError("head must be a single variable")
    for a, b in zip(tail, tail[1:]):
        if a.key > b.key:
            raise InvalidDecompositionError("tail must be sorted nondecreasing")
    for t in tail:
        if not is_good(t):
            raise InvalidDecompositionError(f"tail entry {t} is not good")
    return _compose(head, tail)


def letter_count(w: Word, index: int) -> int:
    return sum(1 for i in w.leaves() if i == index)


def _enumerate(n, d, cap, letter=None, count=0):
    """Good words of degree ``d`` with exactly ``count`` copies of ``letter``.

    With ``letter=None`` no occurrence constraint is applied.  Builds one
    table per (degree, letter count) from sorted multisets of smaller entries.
    """
    if n < 1 or d < 1:
        raise PreconditionError("alphabet size and degree must be positive")
    if cap is None:
        cap = config.enum_cap()
    max_c = count if letter is not None else 0
    table = {}
    total = 0

    def weight(i):
        return 1 if letter is not None and i == letter else 0

    for i in range(1, n + 1):
        table.setdefault((1, weight(i)), []).append(Word.leaf(i, n))
    pool = []  # (word, degree, letter count), ascending word order

    for k in range(2, d + 1):
        # degree dominates the order, so appending the sorted degree k-1
        # layer keeps the pool sorted
        pool += sorted(
            ((w, kk, c) for (kk, c), ws in table.items() if kk == k - 1 for w in ws),
            key=lambda e: e[0].key,
        )

        def tails(start, rem_deg, rem_c):
            if rem_deg == 0:
                if rem_c == 0:
                    yield ()
                return
            for j in range(start, len(pool)):
                w, wd, wc = pool[j]
                if wd > rem_deg:
                    break
                if wc > rem_c:
                    continue
                for rest in tails(j, rem_deg - wd, rem_c - wc):
                    yield (w,) + rest

        for c in range(max_c + 1):
            out = []
            for i in range(1, n + 1):
                hc = weight(i)
                if hc > c:
                    continue
                head = Word.leaf(i, n)
                for tail in tails(0, k - 1, c - hc):
                    out.append(_compose(head, tail))
                    total += 1
                    if total > cap:
                        raise ResourceLimitError(
                            f"good-word enumeration exceeded cap of {cap} words"
                        )
            if out:
                out.sort(key=lambda w: w.key)
                table[(k, c)] = out
    return list(table.get((d, count if letter is not None else 0), []))


def enumerate_good(n: int, d: int, cap: int | None = None) -> list[Word]:
    """All good words of exact degree ``d`` over x1..xn in ascending order."""
    return _enumerate(n, d, cap)


def enumerate_good_with_letter(
    n: int, d: int, letter: int, count: int, cap: int | None = None
) -> list[Word]:
    """Good words of degree ``d`` containing ``letter`` exactly ``count`` times."""
    if not 1 <= letter <= n:
        raise PreconditionError(f"letter x{letter} outside alphabet of size {n}")
    return _enumerate(n, d, cap, letter=letter, count=count)


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\()|(\))|(\*))")


def parse_word(text: str, n: int) -> Word:
    """Parse the canonical fully parenthesised form, e.g. ``((x1*x2)*x1)``."""
    pos = 0

    def token():
        nonlocal pos
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input {text[pos:pos + 10]!r}", pos)
        pos = m.end()
        return m

    def word():
        start = pos
        m = token()
        if m.group(1):
            i = int(m.group(2))
            if not 1 <= i <= n:
                raise ParseError(f"variable x{i} outside alphabet of size {n}", start)
            return Word.leaf(i, n)
        if m.group(3):
            left = word()
            if not token().group(5):
                raise ParseError("expected '*'", pos)
            right = word()
            if not token().group(4):
                raise ParseError("expected ')'", pos)
            return Word.node(left, right)
        raise ParseError("expected a variable or '('", start)

    w = word()
    if text[pos:].strip():
        raise ParseError("trailing characters", pos)
    return w
