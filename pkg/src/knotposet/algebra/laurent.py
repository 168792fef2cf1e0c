"""Integer Laurent polynomials in one variable ``t``.

Values are immutable; arithmetic is exact (Python ints). Alexander
polynomials are only defined up to multiplication by units ``±t^k``, so
most comparisons in this package go through :func:`laurent_normalize`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple


class AlgebraError(ValueError):
    """Raised on invalid algebraic input (zero divisor, bad syntax, ...)."""


class ZeroPolynomialError(AlgebraError):
    pass


class DegreeLimitError(AlgebraError):
    pass


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_e t^e`` with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = int(v)
                if v:
                    c[int(e)] = v
        self._c: Dict[int, int] = c
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_list(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        """``from_list([1, -3, 1])`` is ``1 - 3t + t^2``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_laurent(text)

    # basic queries
    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def low(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no exponents")
        return min(self._c)

    def high(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no exponents")
        return max(self._c)

    def span(self) -> int:
        return self.high() - self.low()

    def leading(self) -> int:
        return self._c[self.high()]

    def trailing(self) -> int:
        return self._c[self.low()]

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def to_list(self) -> List[int]:
        """Dense coefficients from the lowest exponent upward."""
        if not self._c:
            return []
        lo, hi = self.low(), self.high()
        return [self._c.get(e, 0) for e in range(lo, hi + 1)]

    def content(self) -> int:
        g = 0
        for v in self._c.values():
            g = math.gcd(g, v)
        return g

    def is_unit(self) -> bool:
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    def __call__(self, x):
        if isinstance(x, int) and x == 0 and self._c and self.low() < 0:
            raise ZeroDivisionError("negative exponent evaluated at 0")
        total = 0
        for e, c in self._c.items():
            total += c * (Fraction(x) ** e if e < 0 else x ** e)
        return total

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        c: Dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise AlgebraError("only units have Laurent inverses")
            (e, v), = self._c.items()
            return LaurentPoly({-e * (-n): v ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """``p(t^k)``; ``k = -1`` gives the conjugate ``p(t^-1)``."""
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({e: v * c for e, v in self._c.items()})

    def exact_div_int(self, c: int) -> "LaurentPoly":
        out = {}
        for e, v in self._c.items():
            q, r = divmod(v, c)
            if r:
                raise AlgebraError(f"{self} not divisible by {c}")
            out[e] = q
        return LaurentPoly(out)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)


# ---------------------------------------------------------------- text syntax

def _format_terms(terms: List[Tuple[int, str]]) -> str:
    """terms: (coefficient, monomial text or '') in display order."""
    if not terms:
        return "0"
    out = []
    for i, (c, mono) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}{mono}"
        else:
            body = str(a)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(sign + body)
    return "".join(out)


def _var_power(name: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{e}"


def format_laurent(p: LaurentPoly, var: str = "t") -> str:
    """Descending exponents, e.g. ``t^2-3t+1``; negative powers as ``t^-1``."""
    items = sorted(p.coeffs.items(), reverse=True)
    return _format_terms([(c, _var_power(var, e)) for e, c in items])


_TERM_RE = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*((?:[A-Za-z](?:\^-?\d+)?\s*\*?\s*)*)")
_VAR_RE = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")


def parse_terms(text: str, variables: Tuple[str, ...]) -> Dict[Tuple[int, ...], int]:
    """Parse an integer polynomial in the given single-letter variables.

    Accepts ``^`` exponents (negative allowed) and optional ``*``.
    Returns ``{exponent tuple: coefficient}`` with zero terms dropped.
    """
    s = text.strip()
    if not s:
        raise AlgebraError("empty polynomial text")
    pos = 0
    terms: Dict[Tuple[int, ...], int] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise AlgebraError(f"malformed polynomial at position {pos}: {text!r}")
        sign, digits, monos = m.group(1), m.group(2), m.group(3)
        if not first and not sign:
            raise AlgebraError(f"missing operator at position {pos}: {text!r}")
        if not digits and not monos.strip():
            raise AlgebraError(f"empty term at position {pos}: {text!r}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exps = [0] * len(variables)
        for vm in _VAR_RE.finditer(monos):
            name = vm.group(1)
            if name not in variables:
                raise AlgebraError(f"unknown variable {name!r} in {text!r}")
            exps[variables.index(name)] += int(vm.group(2)) if vm.group(2) else 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
        first = False
    return {k: v for k, v in terms.items() if v}


def parse_laurent(text: str, var: str = "t") -> LaurentPoly:
    return LaurentPoly({k[0]: v for k, v in parse_terms(text, (var,)).items()})


# ---------------------------------------------------------------- operations

def laurent_normalize(p: LaurentPoly) -> LaurentPoly:
    """Representative of ``p`` up to units: lowest exponent 0, leading coefficient > 0."""
    if p.is_zero():
        raise ZeroPolynomialError("cannot normalize the zero polynomial")
    q = p.shift(-p.low())
    return q if q.leading() > 0 else -q


def associates(p: LaurentPoly, q: LaurentPoly) -> bool:
    return laurent_normalize(p) == laurent_normalize(q)


def poly_divmod_exact(p: LaurentPoly, d: LaurentPoly) -> Optional[LaurentPoly]:
    """Quotient ``p / d`` in Z[t^{±1}] or None when it does not exist.

    Long division over the rationals on the shifted ordinary polynomials,
    then an integrality check of the quotient.
    """
    if d.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    a = p.shift(-p.low()).to_list()
    b = d.shift(-d.low()).to_list()
    if len(b) > len(a):
        return None
    rem = [Fraction(x) for x in a]
    lead = b[-1]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = rem[i + len(b) - 1] / lead
        q[i] = coef
        if coef:
            for j, bj in enumerate(b):
                rem[i + j] -= coef * bj
    if any(rem):
        return None
    if any(x.denominator != 1 for x in q):
        return None
    quot = LaurentPoly.from_list([int(x) for x in q])
    return quot.shift(p.low() - d.low())


def laurent_divides(d: LaurentPoly, p: LaurentPoly) -> Tuple[bool, Optional[LaurentPoly]]:
    """Whether ``d | p`` up to units; the normalized quotient when it does."""
    if d.is_zero():
        raise ZeroPolynomialError("zero divisor")
    q = poly_divmod_exact(p, d)
    if q is None:
        return False, None
    if q.is_zero():
        return True, ZERO
    return True, laurent_normalize(q)


def primitive_part(p: LaurentPoly) -> LaurentPoly:
    c = p.content()
    return p.exact_div_int(c) if c > 1 else p


def _pseudo_rem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of dense ascending coefficient lists."""
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b) and any(a):
        la = a[-1]
        shift = len(a) - len(b)
        a = [x * lb for x in a]
        for j, bj in enumerate(b):
            a[shift + j] -= la * bj
        while a and a[-1] == 0:
            a.pop()
    return a


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd in Z[t^{±1}], normalized (content times primitive PRS gcd)."""
    if p.is_zero():
        return laurent_normalize(q) if not q.is_zero() else ZERO
    if q.is_zero():
        return laurent_normalize(p)
    cont = math.gcd(p.content(), q.content())
    a = primitive_part(laurent_normalize(p)).to_list()
    b = primitive_part(laurent_normalize(q)).to_list()
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _pseudo_rem(a, b)
        if not r:
            a = b
            b = []
            break
        g = 0
        for x in r:
            g = math.gcd(g, x)
        r = [x // g for x in r]
        a, b = b, r
    if b:  # constant remainder: primitive gcd is 1
        prim = ONE
    else:
        prim = laurent_normalize(primitive_part(LaurentPoly.from_list(a)))
    return laurent_normalize(prim.scale(cont))


def gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    g = ZERO
    for p in polys:
        g = laurent_gcd(g, p)
        if g == ONE:
            break
    return g


# ------------------------------------------------------------ factorization

def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    large = [n // d for d in small if d * d != n]
    pos = small + large[::-1]
    return pos + [-d for d in pos]


def _interpolate(xs: List[int], ys: List[int]) -> Optional[LaurentPoly]:
    """Lagrange interpolation; None unless all coefficients are integers."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += Fraction(ys[i], denom) * basis[k]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return LaurentPoly.from_list([int(c) for c in coeffs])


def _eval_points(p: LaurentPoly, count: int) -> List[int]:
    # prefer points with few divisors of p(x); p(x) != 0 required
    cands = []
    for x in range(-20, 21):
        v = int(p(x))
        if v != 0:
            cands.append((len(_divisors(v)), abs(x), x))
    cands.sort()
    pts = sorted(c[2] for c in cands[:count])
    return pts


def _find_factor(p: LaurentPoly, deg: int) -> Optional[LaurentPoly]:
    """A nontrivial factor of exact degree ``deg`` (Kronecker), or None."""
    import itertools

    xs = _eval_points(p, deg + 1)
    divs = [_divisors(int(p(x))) for x in xs]
    # fix sign of the first value to positive: factors are found up to sign
    divs[0] = [d for d in divs[0] if d > 0]
    for ys in itertools.product(*divs):
        f = _interpolate(xs, list(ys))
        if f is None or f.is_zero() or f.high() != deg:
            continue
        if f.low() > 0:
            continue
        if poly_divmod_exact(p, f) is not None:
            return laurent_normalize(f)
    return None


def factor_integer_poly(p: LaurentPoly, max_span: int = 12) -> List[Tuple[LaurentPoly, int]]:
    """Irreducible factors over Z with multiplicities, via Kronecker's method.

    The constant content is returned as a degree-0 factor when it is not 1.
    Order: by span, then lexicographically on coefficient lists.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot factor zero")
    p = laurent_normalize(p)
    if p.span() > max_span:
        raise DegreeLimitError(f"span {p.span()} exceeds the factorization degree limit {max_span}")
    found: Dict[LaurentPoly, int] = {}
    cont = p.content()
    if cont > 1:
        p = p.exact_div_int(cont)
    work = [p]
    while work:
        f = work.pop()
        if f.span() == 0:
            continue
        if f.span() == 1:
            found[f] = found.get(f, 0) + 1
            continue
        split = None
        for d in range(1, f.span() // 2 + 1):
            g = _find_factor(f, d)
            if g is not None:
                split = g
                break
        if split is None:
            found[f] = found.get(f, 0) + 1
        else:
            h = laurent_normalize(poly_divmod_exact(f, split))
            work.extend([split, h])
    out = sorted(found.items(), key=lambda kv: (kv[0].span(), kv[0].to_list()))
    if cont > 1:
        out.insert(0, (LaurentPoly.const(cont), 1))
    return out


def is_irreducible(p: LaurentPoly, max_span: int = 12) -> bool:
    fs = factor_integer_poly(p, max_span)
    return len(fs) == 1 and fs[0][1] == 1 and fs[0][0].span() > 0


# ---------------------------------------------------------------- resultants

def _as_poly(p: LaurentPoly) -> List[Fraction]:
    if p.is_zero():
        raise ZeroPolynomialError("resultant of the zero polynomial")
    if p.low() < 0:
        raise AlgebraError("resultant needs ordinary polynomials; normalize first")
    return [Fraction(p.coeff(e)) for e in range(0, p.high() + 1)]


def _strip(a: List[Fraction]) -> List[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def resultant(f: LaurentPoly, g: LaurentPoly) -> int:
    """Res(f, g) of ordinary polynomials by the Euclidean recursion over Q.

    Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r) with r = f mod g.
    """
    a = _as_poly(f)
    b = _as_poly(g)
    result = Fraction(1)
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return int(result * b[0] ** m)
        if m < n:
            if (m * n) % 2:
                result = -result
            a, b = b, a
            continue
        # r = a mod b
        r = list(a)
        lb = b[-1]
        for i in range(m - n, -1, -1):
            coef = r[i + n] / lb
            if coef:
                for j in range(n + 1):
                    r[i + j] -= coef * b[j]
        r = _strip(r[:n])
        if not r:
            return 0
        k = len(r) - 1
        # Res(a, b) = (-1)^{mn} Res(b, a) ; Res(b, a) = lb^{m-k} Res(b, r)
        if (m * n) % 2:
            result = -result
        result *= lb ** (m - k)
        a, b = b, r


def cyclic_resultant(f: LaurentPoly, q: int) -> int:
    """Res(f, t^q - 1)."""
    if q < 1:
        raise AlgebraError("cyclic resultant needs q >= 1")
    g = LaurentPoly({q: 1, 0: -1})
    return resultant(laurent_normalize(f) if f.low() < 0 else f, g)
