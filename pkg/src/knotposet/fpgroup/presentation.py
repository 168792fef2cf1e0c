"""Finitely presented groups, optionally decorated with peripheral words."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..algebra.snf import integer_kernel, smith_normal_form
from .words import Word, cyclic_reduce, format_word, parse_word


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    names: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise PresentationError(f"duplicate generator names {self.names}")
        rels = []
        for r in self.relators:
            if not isinstance(r, Word):
                r = Word(r)
            for x in r.letters:
                if not 0 < abs(x) <= len(self.names):
                    raise PresentationError(f"generator index {abs(x) - 1} out of range")
            rels.append(cyclic_reduce(r)[0])
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def fmt(self, w: Word) -> str:
        return format_word(w, self.names)

    def relator_matrix(self) -> List[List[int]]:
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def to_text(self) -> str:
        rels = ", ".join(self.fmt(r) for r in self.relators)
        return f"gens: {','.join(self.names)}; rels: {rels}"

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class PeripheralPresentation:
    """A presentation with a meridian/longitude pair per link component.

    ``torus`` marks the standard presentation ``<u,v | u^p v^-q>`` of a
    torus knot, for which an exact word problem is available. ``factors``
    records the summands when built by a connected sum.
    """

    presentation: Presentation
    meridians: Tuple[Word, ...]
    longitudes: Tuple[Word, ...]
    name: str = ""
    torus: Optional[Tuple[int, int]] = None
    factors: Optional[Tuple["PeripheralPresentation", "PeripheralPresentation"]] = field(
        default=None, compare=False)

    def __post_init__(self):
        if len(self.meridians) != len(self.longitudes):
            raise PresentationError("one meridian and one longitude per component")

    @property
    def meridian(self) -> Word:
        return self.meridians[0]

    @property
    def longitude(self) -> Word:
        return self.longitudes[0]

    @property
    def components(self) -> int:
        return len(self.meridians)

    @property
    def names(self):
        return self.presentation.names

    def to_text(self) -> str:
        p = self.presentation
        mer = ", ".join(p.fmt(w) for w in self.meridians)
        lon = ", ".join(p.fmt(w) for w in self.longitudes)
        return f"{p.to_text()}; meridian: {mer}; longitude: {lon}"

    def with_presentation(self, pres: Presentation) -> "PeripheralPresentation":
        return replace(self, presentation=pres)


# ------------------------------------------------------------------ text I/O

_FIELD_RE = re.compile(r"\s*(gens|rels|meridian|longitude|torus)\s*:\s*([^;]*)")


def parse_presentation(text: str):
    """Parse ``gens: x,y; rels: ...; meridian: x; longitude: ...``.

    Returns a :class:`PeripheralPresentation` when peripheral fields are
    present, else a :class:`Presentation`.
    """
    fields = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        m = _FIELD_RE.fullmatch(chunk)
        if not m:
            raise PresentationError(f"malformed presentation field {chunk.strip()!r}")
        fields[m.group(1)] = m.group(2).strip()
    if "gens" not in fields:
        raise PresentationError("presentation text needs a 'gens:' field")
    names = tuple(n.strip() for n in fields["gens"].split(",") if n.strip())
    rel_text = fields.get("rels", "")
    rels = tuple(parse_word(r, names) for r in rel_text.split(",") if r.strip())
    pres = Presentation(names, rels)
    if "meridian" not in fields:
        return pres
    mer = tuple(parse_word(w, names) for w in fields["meridian"].split(","))
    lon = tuple(parse_word(w, names) for w in fields.get("longitude", "1").split(","))
    torus = None
    if "torus" in fields:
        p, q = (int(x) for x in fields["torus"].split(","))
        torus = (p, q)
    return PeripheralPresentation(pres, mer, lon, torus=torus)


def presentation_text(p) -> str:
    if isinstance(p, PeripheralPresentation):
        s = p.to_text()
        if p.torus:
            s += f"; torus: {p.torus[0]},{p.torus[1]}"
        return s
    return p.to_text()


# --------------------------------------------------------------- operations

def quotient_by(p: Presentation, extra: Sequence[Word]) -> Presentation:
    """Add relators. The identity on generators is an epimorphism onto the result."""
    return Presentation(p.names, tuple(p.relators) + tuple(extra))


@dataclass(frozen=True)
class Abelianization:
    free_rank: int
    torsion: Tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_infinite_cyclic(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def abelianization(p: Presentation) -> Abelianization:
    sf = smith_normal_form(p.relator_matrix(), cols=p.ngens)
    torsion = tuple(d for d in sf.factors if d != 1)
    return Abelianization(p.ngens - sf.rank, torsion)


def abelian_weights(p: Presentation, meridians: Sequence[Word]) -> List[List[int]]:
    """Per component, integer generator weights of the map to Z^c sending
    meridian ``j`` to the ``j``-th basis vector.

    Raises :class:`PresentationError` when the abelianization is not free of
    rank ``len(meridians)`` with the meridians as a basis.
    """
    c = len(meridians)
    K = integer_kernel(p.relator_matrix(), p.ngens)
    if len(K) != c:
        raise PresentationError(
            f"abelianization has free rank {len(K)}, expected {c} (one per component)")
    G = [[sum(a * b for a, b in zip(m.exponent_sums(p.ngens), k)) for k in K] for m in meridians]
    inv = _rational_inverse(G)
    if inv is None:
        raise PresentationError("meridians do not form a basis of the abelianization")
    out = []
    for i in range(c):
        coeffs = [inv[j][i] for j in range(c)]
        w = [sum(coeffs[j] * K[j][g] for j in range(c)) for g in range(p.ngens)]
        if any(Fraction(x).denominator != 1 for x in w):
            raise PresentationError("meridians do not form a basis of the abelianization")
        out.append([int(x) for x in w])
    sf = smith_normal_form(p.relator_matrix(), cols=p.ngens)
    if any(d != 1 for d in sf.factors):
        raise PresentationError("abelianization has torsion")
    return out


def _rational_inverse(G):
    n = len(G)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(G)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def weight_of(w: Word, weights: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(w.exponent_sums(len(weights)), weights))
