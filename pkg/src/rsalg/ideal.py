"""Membership in a one-relator ideal ``(f)`` and the Freiheitssatz check.

The ideal ``(f)`` of the free algebra on x1..xn is spanned by the images of
the good words ``u`` over x1..xn,y that contain the extra top letter ``y``
exactly once, under ``y -> f``.  Such an image has leading degree
``d(u) - 1 + d(lead f)``, so the part of the ideal with leading degree at
most ``D`` is spanned by finitely many generators.  Echelonising those by
leading word yields rows with pairwise distinct leading words, and
membership reduces to a terminating leading-word reduction.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .element import Element, _accumulate
from .errors import (
    DegenerateRelatorError,
    NeedsLargerBasisError,
    PreconditionError,
)
from .substitute import apply_endo, rho_w, substitute_y
from .words import Word, enumerate_good_with_letter, r_compose

__all__ = [
    "LeadingBasis",
    "MembershipCertificate",
    "FreiheitReport",
    "BasisCache",
    "enumerate_Wy",
    "build_leading_basis",
    "reduce_mod",
    "is_member",
    "rho_shortcut",
    "freiheitssatz_check",
    "freiheitssatz_report",
]


def enumerate_Wy(n: int, max_degree: int, cap: int | None = None) -> list[Word]:
    """Good words of degree <= ``max_degree`` over x1..xn,y with one ``y``.

    ``y`` is the letter of index ``n + 1``, above every ``x_i``.
    """
    if max_degree < 1:
        raise PreconditionError("max_degree must be positive")
    out = []
    for d in range(1, max_degree + 1):
        out.extend(enumerate_good_with_letter(n + 1, d, n + 1, 1, cap=cap))
    return out


@dataclass(frozen=True)
class LeadingBasis:
    relator: Element
    degree_bound: int
    rows: tuple
    # generator words u and, per row, its coefficients over the images
    # substitute_y(u, f); None for bases loaded from disk
    generators: tuple | None = None
    provenance: tuple | None = None
    pivots: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.pivots is None:
            object.__setattr__(
                self, "pivots", {r.leading().word: i for i, r in enumerate(self.rows)}
            )

    @property
    def n(self) -> int:
        return self.relator.n

    def __len__(self):
        return len(self.rows)

    def to_json(self) -> dict:
        return {
            "relator": self.relator.to_json(),
            "vars": self.n,
            "degree_bound": self.degree_bound,
            "rows": [r.to_json() for r in self.rows],
        }

    @classmethod
    def from_json(cls, data) -> "LeadingBasis":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["vars"])
        rows = tuple(Element.from_json(r, n) for r in data["rows"])
        leads = [r.leading() for r in rows]
        if any(lt is None or lt.coeff != 1 for lt in leads):
            raise PreconditionError("stored basis rows must be nonzero and monic")
        if any(a.word.key >= b.word.key for a, b in zip(leads, leads[1:])):
            raise PreconditionError("stored basis rows must have increasing leading words")
        return cls(Element.from_json(data["relator"], n), int(data["degree_bound"]), rows)


@dataclass(frozen=True)
class MembershipCertificate:
    verdict: bool
    combination: tuple  # (coefficient, row index) pairs
    remainder: Element
    basis: LeadingBasis | None = None

    def recompute(self) -> Element:
        """sum(coeff * row) + remainder; equals the tested element."""
        out = self.remainder
        for c, i in self.combination:
            out = out + c * self.basis.rows[i]
        return out

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "combination": [
                {"coeff": str(c), "row": i, "element": self.basis.rows[i].to_json()}
                for c, i in self.combination
            ],
            "remainder": self.remainder.to_json(),
        }


def _check_relator(f: Element):
    if f.is_constant():
        raise DegenerateRelatorError("relator must have at least one word term")
    if f.unit:
        raise PreconditionError("relator must not have a unit part")


def build_leading_basis(f: Element, D: int, cap: int | None = None) -> LeadingBasis:
    """Echelonised spanning set of the elements of ``(f)`` with leading degree <= D."""
    _check_relator(f)
    lead_deg = f.degree
    if D < lead_deg:
        raise PreconditionError(
            f"degree bound {D} is below the relator's leading degree {lead_deg}"
        )
    n = f.n
    gens = enumerate_Wy(n, D + 1 - lead_deg, cap=cap)
    gens.sort(key=lambda u: u.key)

    resident = {}  # leading word -> (row terms, provenance)
    for gi, u in enumerate(gens):
        terms = dict(substitute_y(u, f)._terms)
        prov = {gi: Fraction(1)}
        while terms:
            lw = max(terms, key=lambda w: w.key)
            hit = resident.get(lw)
            if hit is None:
                break
            c = terms[lw]
            _accumulate(terms, hit[0], -c)
            _accumulate(prov, hit[1], -c)
        if not terms:
            continue
        lw = max(terms, key=lambda w: w.key)
        inv = 1 / terms[lw]
        resident[lw] = (
            {w: c * inv for w, c in terms.items()},
            {k: c * inv for k, c in prov.items()},
        )

    order = sorted(resident, key=lambda w: w.key)
    rows = tuple(Element._raw(n, resident[w][0]) for w in order)
    provenance = tuple(resident[w][1] for w in order)
    return LeadingBasis(f, D, rows, tuple(gens), provenance)


def reduce_mod(h: Element, basis: LeadingBasis) -> MembershipCertificate:
    if h.n != basis.n:
        raise PreconditionError("element and basis live over different alphabets")
    if h.degree > basis.degree_bound:
        raise NeedsLargerBasisError(
            f"leading degree {h.degree} exceeds basis bound {basis.degree_bound}"
        )
    rem = dict(h._terms)
    pivots = basis.pivots
    combination = []
    while True:
        hits = [w for w in rem if w in pivots]
        if not hits:
            break
        w = max(hits, key=lambda x: x.key)
        c = rem[w]
        i = pivots[w]
        _accumulate(rem, basis.rows[i]._terms, -c)
        combination.append((c, i))
    remainder = Element._raw(h.n, rem, h.unit)
    return MembershipCertificate(remainder.is_zero(), tuple(combination), remainder, basis)


class BasisCache:
    """Directory of exported bases keyed by a hash of (relator, bound)."""

    def __init__(self, directory):
        self.directory = os.fspath(directory)

    @staticmethod
    def key(f: Element, D: int) -> str:
        payload = json.dumps(
            {"relator": f.to_json(), "vars": f.n, "degree_bound": D}, sort_keys=True
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:32]

    def path(self, f: Element, D: int) -> str:
        return os.path.join(self.directory, f"basis-{self.key(f, D)}.json")

    def load(self, f: Element, D: int) -> LeadingBasis | None:
        p = self.path(f, D)
        if not os.path.exists(p):
            return None
        with open(p, encoding="utf-8") as fh:
            basis = LeadingBasis.from_json(json.load(fh))
        if basis.relator != f or basis.degree_bound != D:
            return None
        return basis

    def store(self, basis: LeadingBasis) -> str:
        os.makedirs(self.directory, exist_ok=True)
        p = self.path(basis.relator, basis.degree_bound)
        tmp = p + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(basis.to_json(), fh)
        os.replace(tmp, p)
        return p

    def get(self, f: Element, D: int, cap: int | None = None) -> LeadingBasis:
        basis = self.load(f, D)
        if basis is None:
            basis = build_leading_basis(f, D, cap=cap)
            self.store(basis)
        return basis


def is_member(
    h: Element,
    f: Element,
    degree_bound: int | None = None,
    cap: int | None = None,
    cache: BasisCache | None = None,
) -> MembershipCertificate:
    """Decide whether ``h`` lies in the two-sided ideal generated by ``f``."""
    _check_relator(f)
    if h.n != f.n:
        raise PreconditionError("element and relator live over different alphabets")
    if h.unit:
        raise PreconditionError("tested element must not have a unit part")
    if h.is_zero():
        return MembershipCertificate(True, (), h, None)
    if h.degree < f.degree:
        # every nonzero ideal element has leading degree >= that of f
        return MembershipCertificate(False, (), h, None)
    D = h.degree if degree_bound is None else degree_bound
    if D < h.degree:
        raise NeedsLargerBasisError(
            f"degree bound {D} is below the element's leading degree {h.degree}"
        )
    basis = cache.get(f, D, cap) if cache else build_leading_basis(f, D, cap=cap)
    return reduce_mod(h, basis)


@dataclass(frozen=True)
class FreiheitReport:
    verdict: bool
    shortcut: bool
    inflating_word: Word | None = None
    inflated_degree: int | None = None
    certificate: MembershipCertificate | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "method": "rho_w" if self.shortcut else "elimination"}
        if self.shortcut:
            out["inflating_word"] = str(self.inflating_word)
            out["inflated_leading_degree"] = self.inflated_degree
        else:
            out["certificate"] = self.certificate.to_json()
        return out


def _check_freiheit(f: Element, h: Element):
    _check_relator(f)
    n = f.n
    if h.n != n:
        raise PreconditionError("relator and element live over different alphabets")
    if not f.uses_letter(n):
        raise PreconditionError(f"relator does not involve x{n}")
    if h.is_constant() or h.unit:
        raise PreconditionError("element must be a nonzero combination of words")
    if h.uses_letter(n):
        raise PreconditionError(f"element must not involve x{n}")


def rho_shortcut(f: Element, h: Element):
    """Degree-inflation argument; returns (word, inflated degree) or None.

    With ``w`` of degree above the leading degree of ``h``, the map fixing
    x1..x_{n-1} and sending x_n to x_n*w fixes ``h`` and maps ``(f)`` into
    the ideal of the image of ``f``.  When that image has leading degree
    above ``h``'s, ``h`` cannot lie in ``(f)``.
    """
    _check_freiheit(f, h)
    n = f.n
    x1 = Word.leaf(1, n)
    w = r_compose(x1, [x1] * h.degree)
    image = apply_endo(rho_w(n, w), f)
    if image.degree > h.degree:
        return w, image.degree
    return None


def freiheitssatz_report(f: Element, h: Element, shortcut: bool = True, cap=None) -> FreiheitReport:
    _check_freiheit(f, h)
    if shortcut:
        hit = rho_shortcut(f, h)
        if hit is not None:
            return FreiheitReport(False, True, hit[0], hit[1])
    cert = is_member(h, f, cap=cap)
    return FreiheitReport(cert.verdict, False, certificate=cert)


def freiheitssatz_check(f: Element, h: Element, shortcut: bool = True, cap=None) -> bool:
    """Membership of ``h`` (free of x_n) in ``(f)`` where ``f`` involves x_n."""
    return freiheitssatz_report(f, h, shortcut, cap).verdict
