"""Reidemeister–Schreier rewriting for the kernel of a map onto a cyclic group."""

from __future__ import annotations

from typing import List, Sequence

from .presentation import Presentation, PresentationError, weight_of
from .words import Word


def rs_cyclic_kernel(p: Presentation, weights: Sequence[int], q: int,
                     kill_power: bool = False) -> Presentation:
    """Presentation of the kernel of ``p -> Z -> Z/q`` given by generator ``weights``.

    The transversal is ``x^0, ..., x^(q-1)`` for the first generator ``x``
    of weight 1. Schreier generator ``g_i`` stands for ``x^i g x^-(i+w(g))``
    (indices mod ``q``); the ones that are trivial by the choice of
    transversal are kept as one-letter relators so that the output is a
    literal Reidemeister–Schreier presentation.

    With ``kill_power`` the relator ``x^q`` is added. When ``x^q`` is
    central (as in the periodic families of interest) this turns the
    kernel into the commutator subgroup itself.
    """
    if q < 1:
        raise PresentationError("q must be a positive integer")
    if len(weights) != p.ngens:
        raise PresentationError("one weight per generator required")
    for r in p.relators:
        if weight_of(r, weights):
            raise PresentationError(f"relator {p.fmt(r)} has nonzero weight; not a map onto Z")
    try:
        x = next(g for g, w in enumerate(weights) if w == 1)
    except StopIteration:
        raise PresentationError("no generator of weight 1 to serve as transversal") from None

    n = p.ngens

    def sg(i: int, g: int) -> int:
        return g * q + i          # index of Schreier generator g_i

    names = tuple(f"{p.names[g]}_{i}" for g in range(n) for i in range(q))

    def rewrite(w: Word, start: int) -> Word:
        out: List[int] = []
        i = start
        for letter in w.letters:
            g = abs(letter) - 1
            if letter > 0:
                out.append(sg(i, g) + 1)
                i = (i + weights[g]) % q
            else:
                i = (i - weights[g]) % q
                out.append(-(sg(i, g) + 1))
        return Word(out)

    rels: List[Word] = [Word.gen(sg(i, x)) for i in range(q - 1)]
    if kill_power:
        rels.append(Word.gen(sg(q - 1, x)))
    for r in p.relators:
        for i in range(q):
            rels.append(rewrite(r, i))
    return Presentation(names, tuple(rels))
