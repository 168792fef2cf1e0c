"""Named presentations: unknot, torus knots, connected sums, mirrors and the
periodic figure-eight family ``pi k_q``."""

from __future__ import annotations

from dataclasses import replace
from typing import Tuple

from .presentation import PeripheralPresentation, Presentation, PresentationError
from .torus import TorusGroup
from .words import Word, parse_word

# the figure-eight knot group on two generators
FIGURE_EIGHT_RELATOR = "x^-1y^-1xy^-1x^-1yxy^-1xy"
_XY = ("x", "y")


def unknot_presentation() -> PeripheralPresentation:
    return PeripheralPresentation(Presentation(("x",), ()), (Word.gen(0),), (Word(),), name="unknot")


def torus_presentation(p: int, q: int, name: str = "") -> PeripheralPresentation:
    return TorusGroup(p, q).peripheral(name or f"T({p},{q})")


def figure_eight_peripheral_words() -> Tuple[Word, Word]:
    """Meridian ``x`` and longitude ``z^-1 x y^-1 w`` with ``w = x^-1 y x`` and ``z = y w y^-1``."""
    x, y = Word.gen(0), Word.gen(1)
    w = x.inverse() * y * x
    z = y * w * y.inverse()
    return x, z.inverse() * x * y.inverse() * w


def figure_eight_presentation() -> PeripheralPresentation:
    m, l = figure_eight_peripheral_words()
    pres = Presentation(_XY, (parse_word(FIGURE_EIGHT_RELATOR, _XY),))
    return PeripheralPresentation(pres, (m,), (l,), name="4_1")


def virtual_family_group(q: int) -> Presentation:
    """``<x, y | r_41, x^-q y x^q y^-1>`` for any ``q >= 1``."""
    if q < 1:
        raise PresentationError("q must be a positive integer")
    x, y = Word.gen(0), Word.gen(1)
    per = x ** -q * y * x ** q * y.inverse()
    return Presentation(_XY, (parse_word(FIGURE_EIGHT_RELATOR, _XY), per))


def virtual_family_presentation(q: int) -> PeripheralPresentation:
    """The group of the virtual knot ``k_q`` with the projected figure-eight peripheral pair.

    The identity on ``x, y`` is the canonical projection from the
    figure-eight group (``figure_eight_presentation``).
    """
    if q < 2:
        raise PresentationError("the virtual family is defined for q >= 2")
    m, l = figure_eight_peripheral_words()
    return PeripheralPresentation(virtual_family_group(q), (m,), (l,), name=f"k_{q}")


def virtual_family_paper_longitude(q: int, n: int = None) -> Word:
    """``z^-1 x^-(q-1) y^-1 w x^(n-2)``, the alternative longitude word for ``k_q``.

    ``n`` defaults to ``q + 2``, the only value for which the word has
    exponent sum zero (so that it can be a longitude at all).
    """
    n = q + 2 if n is None else n
    x, y = Word.gen(0), Word.gen(1)
    w = x.inverse() * y * x
    z = y * w * y.inverse()
    return z.inverse() * x ** (-(q - 1)) * y.inverse() * w * x ** (n - 2)


def _suffixed(p: PeripheralPresentation, tag: str, offset: int):
    names = tuple(f"{n}_{tag}" for n in p.names)
    mapping = {g: g + offset for g in range(len(p.names))}
    rels = tuple(r.relabel(mapping) for r in p.presentation.relators)
    return names, rels, p.meridian.relabel(mapping), p.longitude.relabel(mapping)


def connected_sum_presentation(p1: PeripheralPresentation,
                               p2: PeripheralPresentation) -> PeripheralPresentation:
    """Generators of both summands, all relators and ``m1 m2^-1``; meridian ``m1``, longitude ``l1 l2``."""
    if p1.components != 1 or p2.components != 1:
        raise PresentationError("connected sum needs single-component inputs")
    n1, r1, m1, l1 = _suffixed(p1, "1", 0)
    n2, r2, m2, l2 = _suffixed(p2, "2", len(n1))
    pres = Presentation(n1 + n2, r1 + r2 + (m1 * m2.inverse(),))
    name = f"{p1.name}#{p2.name}" if p1.name and p2.name else ""
    return PeripheralPresentation(pres, (m1,), (l1 * l2,), name=name, factors=(p1, p2))


def mirror_presentation(p: PeripheralPresentation, name: str = "") -> PeripheralPresentation:
    """Same group; the mirror image reverses the longitude relative to the meridian."""
    return replace(p, longitudes=tuple(l.inverse() for l in p.longitudes),
                   name=name or (f"{p.name}*" if p.name else ""))
