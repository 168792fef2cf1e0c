"""Integer polynomials in ``M`` and ``L`` (exponents possibly negative)."""

from __future__ import annotations

import math
from typing import Dict, Mapping, Optional, Tuple

from .laurent import (
    AlgebraError,
    LaurentPoly,
    ZeroPolynomialError,
    _format_terms,
    _var_power,
    parse_terms,
    poly_divmod_exact,
)

Exp = Tuple[int, int]


class BivarPoly:
    """Sparse polynomial ``sum c_(i,j) M^i L^j``."""

    __slots__ = ("_t",)

    def __init__(self, terms: Optional[Mapping[Exp, int]] = None):
        t = {}
        if terms:
            for (i, j), c in terms.items():
                c = int(c)
                if c:
                    t[(int(i), int(j))] = c
        self._t: Dict[Exp, int] = t

    @classmethod
    def parse(cls, text: str) -> "BivarPoly":
        return cls(parse_terms(text, ("M", "L")))

    @property
    def terms(self) -> Dict[Exp, int]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        t = dict(self._t)
        for k, v in other._t.items():
            t[k] = t.get(k, 0) + v
        return BivarPoly(t)

    def __neg__(self):
        return BivarPoly({k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        t: Dict[Exp, int] = {}
        for (a, b), c in self._t.items():
            for (x, y), d in other._t.items():
                k = (a + x, b + y)
                t[k] = t.get(k, 0) + c * d
        return BivarPoly(t)

    def __pow__(self, n: int) -> "BivarPoly":
        out = BivarPoly({(0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and self._t == other._t

    def __hash__(self):
        return hash(tuple(sorted(self._t.items())))

    def __repr__(self):
        return f"BivarPoly({format_bivar(self)!r})"

    def __str__(self):
        return format_bivar(self)

    def degree_L(self) -> int:
        return max(j for _, j in self._t) - min(j for _, j in self._t)

    def coefficient_in_L(self, j: int) -> LaurentPoly:
        """Coefficient of ``L^j`` as a Laurent polynomial in ``M`` (variable ``t``)."""
        return LaurentPoly({i: c for (i, jj), c in self._t.items() if jj == j})


def monomial(i: int, j: int, c: int = 1) -> BivarPoly:
    return BivarPoly({(i, j): c})


def _order_key(k: Exp):
    # graded-lex, ascending: total degree, then M exponent
    return (k[0] + k[1], k[0], k[1])


def format_bivar(p: BivarPoly) -> str:
    items = sorted(p.terms.items(), key=lambda kv: _order_key(kv[0]))
    terms = []
    for (i, j), c in items:
        parts = [s for s in (_var_power("M", i), _var_power("L", j)) if s]
        terms.append((c, "*".join(parts)))
    return _format_terms(terms)


def bivar_normalize(p: BivarPoly) -> BivarPoly:
    """Clear the minimal monomial, divide out content, make the leading term positive."""
    if p.is_zero():
        raise ZeroPolynomialError("cannot normalize the zero polynomial")
    mi = min(i for i, _ in p.terms)
    mj = min(j for _, j in p.terms)
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, c)
    t = {(i - mi, j - mj): c // g for (i, j), c in p.terms.items()}
    lead = max(t, key=_order_key)
    if t[lead] < 0:
        t = {k: -v for k, v in t.items()}
    return BivarPoly(t)


def substitute(A: BivarPoly, a: int, b: int, c: int, d: int) -> BivarPoly:
    """``A(M^a L^b, M^c L^d)`` with the minimal monomial unit cleared."""
    t: Dict[Exp, int] = {}
    for (i, j), coef in A.terms.items():
        k = (a * i + c * j, b * i + d * j)
        t[k] = t.get(k, 0) + coef
    out = BivarPoly(t)
    assert not out.is_zero() or A.is_zero(), "substitution collapsed a nonzero polynomial"
    return bivar_normalize(out)


def _l_coeffs(p: BivarPoly) -> Dict[int, LaurentPoly]:
    out: Dict[int, LaurentPoly] = {}
    for (i, j), c in p.terms.items():
        out[j] = out.get(j, LaurentPoly()) + LaurentPoly.monomial(i, c)
    return {j: v for j, v in out.items() if not v.is_zero()}


def bivar_divide(p: BivarPoly, d: BivarPoly) -> Optional[BivarPoly]:
    """Exact quotient ``p / d`` in Z[M^{±1}][L] (up to monomial units), or None.

    Long division in L with exact division of leading coefficients in Z[M^{±1}].
    """
    if d.is_zero():
        raise ZeroPolynomialError("division by zero polynomial")
    if p.is_zero():
        return BivarPoly()
    pn, dn = bivar_normalize(p), bivar_normalize(d)
    rem = _l_coeffs(pn)
    dc = _l_coeffs(dn)
    dtop = max(dc)
    dlead = dc[dtop]
    quot: Dict[int, LaurentPoly] = {}
    while rem and max(rem) >= dtop:
        top = max(rem)
        q = poly_divmod_exact(rem[top], dlead)
        if q is None:
            return None
        quot[top - dtop] = q
        for j, cj in dc.items():
            k = j + top - dtop
            v = rem.get(k, LaurentPoly()) - q * cj
            if v.is_zero():
                rem.pop(k, None)
            else:
                rem[k] = v
    if rem:
        return None
    out = BivarPoly({(i, j): c for j, poly in quot.items() for i, c in poly.coeffs.items()})
    # multiplication round-trip
    if bivar_normalize(out * dn) != pn:
        raise AlgebraError("bivariate division failed its multiplication check")
    return out


def is_certified_irreducible(p: BivarPoly) -> bool:
    """Sufficient test: linear in L with coprime L-coefficients in Z[M]."""
    from .laurent import laurent_gcd

    q = bivar_normalize(p)
    cs = _l_coeffs(q)
    if len(cs) != 2 or max(cs) - min(cs) != 1:
        return False
    g = laurent_gcd(cs[max(cs)], cs[min(cs)])
    return g.is_unit()
