"""A-polynomials of (2, n) torus knots and the peripheral divisibility obstruction.

If an epimorphism sends ``m1 -> m2^a l2^b`` and ``l1 -> m2^c l2^d``, every
irreducible factor of ``A2(M, L)`` divides
``(M^c L^d - 1) * A1(M^a L^b, M^c L^d)``. Failure for one factor refutes
that peripheral pattern.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, Optional, Tuple

from .algebra.bivar import (BivarPoly, bivar_divide, bivar_normalize, format_bivar,
                            is_certified_irreducible, monomial, substitute)
from .verdict import Verdict, register

Pattern = Tuple[int, int, int, int]


class APolyError(ValueError):
    pass


class NoAPolyData(APolyError):
    pass


@dataclass(frozen=True)
class APolyRecord:
    name: str
    A: BivarPoly
    provenance: str

    def __post_init__(self):
        if bivar_normalize(self.A) != self.A:
            raise APolyError(f"A-polynomial of {self.name} is not normalized")

    def to_dict(self) -> dict:
        return {"name": self.name, "A": format_bivar(self.A), "provenance": self.provenance}


@lru_cache(maxsize=None)
def load_table() -> Dict[Tuple[int, int], APolyRecord]:
    text = resources.files("knotposet.data").joinpath("apoly_table.json").read_text()
    out = {}
    for e in json.loads(text)["entries"]:
        rec = APolyRecord(e["name"], BivarPoly.parse(e["A"]), e["provenance"])
        if not is_certified_irreducible(rec.A):
            raise APolyError(f"table entry {rec.name} is not certified irreducible")
        out[tuple(e["torus"])] = rec
    return out


def torus_apoly(n: int) -> APolyRecord:
    """``1 + M^(2n) L`` for the (2, n) torus knot, n odd >= 3."""
    if n < 3 or n % 2 == 0:
        raise APolyError(f"(2, n) torus knot A-polynomial needs odd n >= 3, got {n}")
    rec = load_table().get((2, n))
    if rec is not None:
        return rec
    return APolyRecord(f"T(2,{n})", bivar_normalize(monomial(0, 0) + monomial(2 * n, 1)),
                       "closed form (not in the checked table)")


def apoly_for_torus(torus: Optional[Tuple[int, int]]) -> APolyRecord:
    if torus is None:
        raise NoAPolyData("no A-polynomial data (only (2, n) torus knots are tabulated)")
    p, q = sorted(torus)
    if p != 2 or (2, q) not in load_table():
        raise NoAPolyData(f"no A-polynomial data for T({p},{q})")
    return load_table()[(2, q)]


def obstruction_product(A1: BivarPoly, pattern: Pattern) -> BivarPoly:
    a, b, c, d = pattern
    sub = BivarPoly({(a * i + c * j, b * i + d * j): k for (i, j), k in A1.terms.items()})
    return bivar_normalize((monomial(c, d) - monomial(0, 0)) * sub)


def obstruction_check(A1: APolyRecord, A2: APolyRecord, pattern: Pattern) -> Verdict:
    """Refuted when the irreducible ``A2`` divides neither factor of the product."""
    if not is_certified_irreducible(A2.A):
        return Verdict.unknown(f"A-polynomial of {A2.name} is not certified irreducible")
    a, b, c, d = pattern
    sub = substitute(A1.A, a, b, c, d)
    product = obstruction_product(A1.A, pattern)
    ev = {"kind": "apoly_divisibility", "A1": format_bivar(A1.A), "A2": format_bivar(A2.A),
          "pattern": list(pattern), "product": format_bivar(product)}
    q = bivar_divide(sub, A2.A)
    if q is not None:
        return Verdict.unknown(
            f"{format_bivar(A2.A)} divides {format_bivar(sub)}",
            evidence={**ev, "kind": "apoly_divides", "substituted": format_bivar(sub),
                      "quotient": format_bivar(bivar_normalize(q)) if not q.is_zero() else "0"})
    if bivar_divide(product, A2.A) is not None:
        return Verdict.unknown(f"{format_bivar(A2.A)} divides M^cL^d-1")
    return Verdict.refuted(ev, note=f"{format_bivar(A2.A)} does not divide "
                                    f"(M^{c}L^{d}-1)*A1(M^{a}L^{b},M^{c}L^{d})")


@register("apoly_divisibility")
def _check(ev) -> bool:
    A1, A2 = BivarPoly.parse(ev["A1"]), BivarPoly.parse(ev["A2"])
    product = obstruction_product(A1, tuple(ev["pattern"]))
    return (format_bivar(product) == ev["product"] and is_certified_irreducible(A2)
            and bivar_divide(product, A2) is None)
