"""Exact word problem and peripheral membership in torus-knot groups.

``G = <u, v | u^p = v^q>`` is a central extension of ``Z/p * Z/q`` by the
infinite cyclic group generated by ``z = u^p = v^q``. Every element is
uniquely ``z^k`` times an alternating product of syllables ``u^a``
(``0 < a < p``) and ``v^b`` (``0 < b < q``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence, Tuple

from ..verdict import register
from .presentation import PeripheralPresentation, Presentation
from .words import Word

U, V = 0, 1


class TorusError(ValueError):
    pass


@dataclass(frozen=True)
class TorusForm:
    central: int
    syllables: Tuple[Tuple[int, int], ...]   # (generator, exponent) alternating

    def __str__(self):
        body = "".join(f"{'uv'[g]}^{e}" for g, e in self.syllables)
        return f"z^{self.central}" + (f"*{body}" if body else "")


class TorusGroup:
    def __init__(self, p: int, q: int):
        if p < 2 or q < 2 or gcd(p, q) != 1:
            raise TorusError(f"torus group needs coprime p, q >= 2, got ({p}, {q})")
        self.p, self.q = p, q
        a = next(a for a in range(1, p) if (a * q) % p == 1) if p > 1 else 1
        b = (1 - a * q) // p
        self.a, self.b = a, b
        self.presentation = Presentation(("u", "v"), (Word.gen(U, p) * Word.gen(V, -q),))
        self.meridian = Word.gen(U, a) * Word.gen(V, b)
        self.longitude = Word.gen(U, p) * self.meridian ** (-p * q)

    def peripheral(self, name: str = "") -> PeripheralPresentation:
        return PeripheralPresentation(self.presentation, (self.meridian,), (self.longitude,),
                                      name=name, torus=(self.p, self.q))

    def order(self, g: int) -> int:
        return self.p if g == U else self.q

    # ---- normal form
    def normal_form(self, w: Word) -> TorusForm:
        k = 0
        syl: list = []
        for x in w.letters:
            g, e = abs(x) - 1, (1 if x > 0 else -1)
            if g not in (U, V):
                raise TorusError(f"letter {x} is not u or v")
            n = self.order(g)
            total = e + (syl[-1][1] if syl and syl[-1][0] == g else 0)
            if syl and syl[-1][0] == g:
                syl.pop()
            k += total // n
            r = total % n
            if r:
                syl.append((g, r))
        return TorusForm(k, tuple(syl))

    def from_form(self, f: TorusForm) -> Word:
        return Word.gen(U, self.p * f.central) * Word.from_syllables(f.syllables)

    def equal(self, a: Word, b: Word) -> bool:
        return self.normal_form(a) == self.normal_form(b)

    def is_trivial(self, w: Word) -> bool:
        return self.normal_form(w) == TorusForm(0, ())

    # ---- peripheral subgroup <m, l> = <m, z>
    def peripheral_exponents(self, w: Word) -> Optional[Tuple[int, int]]:
        """``(i, j)`` with ``w == m^i l^j``, or None when ``w`` is not in ``<m, l>``."""
        f = self.normal_form(w)
        n = len(f.syllables)
        if n % 2:
            return None
        for j in ({0} if n == 0 else {n // 2, -n // 2}):
            fm = self.normal_form(self.meridian ** j)
            if fm.syllables == f.syllables:
                c = f.central - fm.central
                return j + self.p * self.q * c, c
        return None

    def cyclic_core(self, w: Word) -> Tuple[Tuple[int, int], ...]:
        """Cyclically reduced syllables of the image in ``Z/p * Z/q``."""
        syl = list(self.normal_form(w).syllables)
        while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            g = syl[0][0]
            r = (syl[0][1] + syl[-1][1]) % self.order(g)
            syl = syl[1:-1]
            if r:
                syl = [(g, r)] + syl
        return tuple(syl)

    def conjugate_into_peripheral(self, w: Word) -> bool:
        """Whether some conjugate of ``w`` lies in ``<m, l>`` (decided in the free-product quotient)."""
        core = self.cyclic_core(w)
        if not core:
            return True
        n = len(core)
        if n % 2:
            return False
        for j in (n // 2, -n // 2):
            target = self.cyclic_core(self.meridian ** j)
            if any(core == target[k:] + target[:k] for k in range(len(target))):
                return True
        return False


def torus_group(p: int, q: int) -> TorusGroup:
    return TorusGroup(p, q)


def torus_normal_form(pq: Sequence[int], w: Word) -> TorusForm:
    return TorusGroup(*pq).normal_form(w)


@register("torus_normal_form")
def _check_torus(ev) -> bool:
    """Evidence that words are equal/trivial in a torus group, by normal forms."""
    T = TorusGroup(*ev["torus"])
    names = ("u", "v")
    from .words import parse_word
    lhs = parse_word(ev["word"], names)
    rhs = parse_word(ev.get("equals", "1"), names)
    return T.equal(lhs, rhs)
