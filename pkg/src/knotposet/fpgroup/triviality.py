"""Tietze simplification and the three-valued word problem."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from ..algebra.snf import in_row_lattice
from ..config import DEFAULT, Budget
from ..verdict import Verdict, register
from .certify import (Cert, CertificateTooLarge, Eliminator, check_certificate,
                      search_trivial)
from .finite import (SMALL_NAMES, FiniteGroup, SearchCapExceeded, fingerprint, group_by_name,
                     is_homomorphism, iter_homs)
from .presentation import Presentation, parse_presentation
from .words import Word, cyclic_reduce

REFUTING_GROUPS: Tuple[str, ...] = ("S3", "D5", "D7", "A4", "S4", "A5", "S5")


@dataclass(frozen=True)
class TietzeResult:
    presentation: Presentation
    history: Tuple[dict, ...]
    exhausted: bool
    images: Tuple[Word, ...]      # image of each input generator in the result


@lru_cache(maxsize=128)
def simplifier(p: Presentation, steps: int = DEFAULT.tietze_steps) -> Eliminator:
    """Cached, fully run eliminator for ``p`` (treat as read-only)."""
    return Eliminator(p).run(steps)


def tietze_simplify(p: Presentation, budget: int = DEFAULT.tietze_steps) -> TietzeResult:
    """Eliminate generators until none occurs exactly once in a relator, or the step budget runs out."""
    E = Eliminator(p).run(budget)
    q, _ = E.presentation()
    exhausted = len(E.eliminated) >= budget and bool(E.candidates())
    return TietzeResult(q, tuple(E.history), exhausted, tuple(E.generator_images()))


# ------------------------------------------------------------ evidence

def cert_to_json(p: Presentation, cert: Cert) -> list:
    return [[p.fmt(c), i, e] for c, i, e in cert]


def cert_from_json(p: Presentation, data) -> Cert:
    return tuple((p.word(c), int(i), int(e)) for c, i, e in data)


def relator_product_evidence(p: Presentation, w: Word, cert: Cert) -> dict:
    return {"kind": "relator_product", "presentation": p.to_text(), "word": p.fmt(w),
            "factors": cert_to_json(p, cert)}


def finite_quotient_evidence(p: Presentation, w: Word, F: FiniteGroup, images) -> dict:
    return {"kind": "finite_quotient", "presentation": p.to_text(), "word": p.fmt(w),
            "group": F.name, "images": list(images)}


def _pres(text):
    p = parse_presentation(text)
    return getattr(p, "presentation", p)


@register("relator_product")
def _check_relator_product(ev) -> bool:
    p = _pres(ev["presentation"])
    return check_certificate(p.relators, p.word(ev["word"]), cert_from_json(p, ev["factors"]))


@register("abelian_image")
def _check_abelian_image(ev) -> bool:
    p = _pres(ev["presentation"])
    v = p.word(ev["word"]).exponent_sums(p.ngens)
    return not in_row_lattice(p.relator_matrix(), v, p.ngens)


@register("finite_quotient")
def _check_finite_quotient(ev) -> bool:
    p = _pres(ev["presentation"])
    F = group_by_name(ev["group"])
    images = ev["images"]
    return (len(images) == p.ngens and is_homomorphism(p, F, images)
            and F.evaluate(p.word(ev["word"]), images) != F.identity)


# ------------------------------------------------------------ word problem

def refuting_quotient(p: Presentation, w: Word, groups: Sequence[str] = REFUTING_GROUPS,
                      cap: int = DEFAULT.quotient_cap) -> Optional[Tuple[FiniteGroup, Tuple[int, ...]]]:
    """A homomorphism to a library group under which ``w`` survives, searched on the simplified group."""
    E = simplifier(p)
    q, index = E.presentation()
    w2 = E.rewrite(w)[0].relabel(index)
    images = [u.relabel(index) for u in (E.rewrite(Word.gen(g))[0] for g in range(p.ngens))]
    for name in groups:
        F = group_by_name(name)
        try:
            for im in iter_homs(q, F, cap):
                if F.evaluate(w2, im) != F.identity:
                    return F, tuple(F.evaluate(u, im) for u in images)
        except SearchCapExceeded:
            continue
    return None


def _relator_conjugate(p: Presentation, w: Word) -> Optional[Cert]:
    """A one-factor certificate when ``w`` is a conjugate of a relator or its inverse."""
    core, conj = cyclic_reduce(w)
    for i, r in enumerate(p.relators):
        for e, rr in ((1, r), (-1, r.inverse())):
            n = len(rr)
            if n != len(core):
                continue
            for k in range(n):
                if rr.letters[k:] + rr.letters[:k] == core.letters:
                    cert = ((conj * Word(rr.letters[:k]).inverse(), i, e),)
                    if check_certificate(p.relators, w, cert):
                        return cert
    return None


def word_is_trivial(p: Presentation, w: Word, budget: Budget = DEFAULT,
                    groups: Sequence[str] = REFUTING_GROUPS) -> Verdict:
    """Decide ``w == 1`` in ``p`` where the cheap methods allow.

    Order: free reduction; abelian image; Tietze rewriting; refuting finite
    quotient; best-first relator-insertion search.
    """
    if not w.letters:
        return Verdict.proved(relator_product_evidence(p, w, ()))
    v = w.exponent_sums(p.ngens)
    if not in_row_lattice(p.relator_matrix(), v, p.ngens):
        return Verdict.refuted({"kind": "abelian_image", "presentation": p.to_text(),
                                "word": p.fmt(w)})
    direct = _relator_conjugate(p, w)
    if direct is not None:
        return Verdict.proved(relator_product_evidence(p, w, direct))
    E = simplifier(p, budget.tietze_steps)
    try:
        w2, c0 = E.rewrite(w)
    except CertificateTooLarge:
        w2, c0 = None, None
    if w2 is not None and not w2.letters:
        return Verdict.proved(relator_product_evidence(p, w, c0))
    found = refuting_quotient(p, w, groups, budget.quotient_cap)
    if found:
        F, images = found
        return Verdict.refuted(finite_quotient_evidence(p, w, F, images))
    if w2 is not None:
        try:
            cert = search_trivial(E.rels, w2, budget.nodes)
        except CertificateTooLarge:
            cert = None
        if cert is not None:
            full = c0 + cert
            if check_certificate(p.relators, w, full):
                return Verdict.proved(relator_product_evidence(p, w, full))
    return Verdict.unknown(f"no certificate within {budget.nodes} search nodes and no "
                           f"refuting quotient among {', '.join(groups)}")


def words_equal(p: Presentation, a: Word, b: Word, budget: Budget = DEFAULT) -> Verdict:
    return word_is_trivial(p, a * b.inverse(), budget)


def group_fingerprint(p: Presentation, names: Sequence[str] = SMALL_NAMES,
                      cap: int = DEFAULT.hom_cap) -> Tuple[Tuple[str, int, int], ...]:
    """Hom/epi counts per library group, enumerated on the simplified presentation."""
    return fingerprint(simplifier(p).presentation()[0], names, cap)
