"""Exact computation in free right-symmetric (pre-Lie) algebras."""

from .element import Element, commutator, leading, leading_product, multiply, normalize_word
from .errors import (
    AlphabetMismatchError,
    DegenerateRelatorError,
    InvalidDecompositionError,
    InvalidGeneratorError,
    NeedsLargerBasisError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    RSAlgError,
)
from .words import Word, compare, enumerate_good, is_good, r_compose, r_decompose, var

__version__ = "0.1.0"

__all__ = [
    "Element",
    "commutator",
    "leading",
    "leading_product",
    "multiply",
    "normalize_word",
    "AlphabetMismatchError",
    "DegenerateRelatorError",
    "InvalidDecompositionError",
    "InvalidGeneratorError",
    "NeedsLargerBasisError",
    "ParseError",
    "PreconditionError",
    "ResourceLimitError",
    "RSAlgError",
    "Word",
    "compare",
    "enumerate_good",
    "is_good",
    "r_compose",
    "r_decompose",
    "var",
]
