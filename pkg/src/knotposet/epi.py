"""Epimorphisms between knot groups and the tri-state ``⪰`` / ``⪰₁`` edge decisions.

A :class:`HomCandidate` assigns a target word to every source generator and
optionally claims peripheral exponents ``(a, b, c, d)``:
``m1 -> h^-1 m2^a l2^b h`` and ``l1 -> h^-1 m2^c l2^d h`` for a conjugator ``h``.

Verification uses the best word problem the target offers: normal forms
in torus-knot groups, exponent sums in ``Z`` (the unknot), and the
certificate search of :mod:`knotposet.fpgroup.triviality` elsewhere.
Surjectivity is proved exactly when every target generator is itself the
image of a source generator, by products of images in torus targets, and
by a gcd in ``Z``; otherwise it is only tested in finite quotients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .config import DEFAULT, Budget
from .fpgroup.finite import SMALL_NAMES, SearchCapExceeded, group_by_name, hom_enumerate, iter_homs
from .fpgroup.presentation import (PeripheralPresentation, Presentation, PresentationError,
                                   abelian_weights, parse_presentation, presentation_text,
                                   weight_of)
from .fpgroup.torus import TorusGroup
from .fpgroup.triviality import (REFUTING_GROUPS, relator_product_evidence, simplifier,
                                 word_is_trivial)
from .fpgroup.words import Word, parse_word
from .verdict import Verdict, register, replay_evidence

Pattern = Tuple[int, int, int, int]

TRIVIAL_KINDS = frozenset({"relator_product", "torus_normal_form"})
NONTRIVIAL_KINDS = frozenset({"abelian_image", "finite_quotient", "torus_inequality"})
SURJECTIVITY_GRADE = "surjective-in-all-tested-quotients"
_B_ORDER = (0, 1, -1, 2, -2, 3, -3)


class EpiError(ValueError):
    pass


# ------------------------------------------------------------------ candidate

@dataclass(frozen=True)
class HomCandidate:
    source: PeripheralPresentation
    target: PeripheralPresentation
    images: Tuple[Word, ...]
    pattern: Optional[Pattern] = None
    conjugator: Optional[Word] = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if self.pattern is not None:
            object.__setattr__(self, "pattern", tuple(int(x) for x in self.pattern))
            if len(self.pattern) != 4:
                raise EpiError("peripheral pattern needs four exponents (a, b, c, d)")
        if len(self.images) != self.source.presentation.ngens:
            raise EpiError(f"generator mismatch: {len(self.images)} images for "
                           f"{self.source.presentation.ngens} source generators")
        n = self.target.presentation.ngens
        for w in self.images + ((self.conjugator,) if self.conjugator is not None else ()):
            if any(abs(x) > n for x in w.letters):
                raise EpiError("image word uses a generator outside the target")

    def apply(self, w: Word) -> Word:
        return w.substitute(self.images)

    def with_pattern(self, pattern: Optional[Pattern], conjugator: Optional[Word] = None):
        return HomCandidate(self.source, self.target, self.images, pattern,
                            conjugator if conjugator is not None else self.conjugator, self.label)

    def claimed_images(self) -> Optional[Tuple[Word, Word]]:
        """``h^-1 m2^a l2^b h`` and ``h^-1 m2^c l2^d h`` when a pattern is claimed."""
        if self.pattern is None:
            return None
        a, b, c, d = self.pattern
        h = self.conjugator or Word()
        m2, l2 = self.target.meridian, self.target.longitude
        return ((m2 ** a * l2 ** b).conjugate(h.inverse()),
                (m2 ** c * l2 ** d).conjugate(h.inverse()))

    def base_evidence(self) -> dict:
        tp = self.target.presentation
        return {"source": presentation_text(self.source), "target": presentation_text(self.target),
                "images": [tp.fmt(w) for w in self.images]}

    def to_dict(self) -> dict:
        out = {"label": self.label, **self.base_evidence(),
               "pattern": list(self.pattern) if self.pattern else None,
               "conjugator": (self.target.presentation.fmt(self.conjugator)
                              if self.conjugator is not None else None)}
        return out

    @classmethod
    def from_dict(cls, data) -> "HomCandidate":
        src, tgt = _peripheral(data["source"]), _peripheral(data["target"])
        images = tuple(tgt.presentation.word(s) for s in data["images"])
        conj = data.get("conjugator")
        pattern = data.get("pattern")
        return cls(src, tgt, images, tuple(pattern) if pattern else None,
                   tgt.presentation.word(conj) if conj is not None else None,
                   data.get("label", ""))


def _peripheral(text: str) -> PeripheralPresentation:
    p = parse_presentation(text)
    if not isinstance(p, PeripheralPresentation):
        raise EpiError("candidate presentations need meridian and longitude fields")
    return p


@dataclass(frozen=True)
class EdgeVerdict:
    source: str
    target: str
    relation: str                     # ">=" or ">=1"
    verdict: Verdict
    rule: str
    candidate: Optional[HomCandidate] = field(default=None, compare=False)

    def __post_init__(self):
        if self.relation not in (">=", ">=1"):
            raise EpiError(f"unknown relation {self.relation!r}")
        if self.verdict.is_proved and self.candidate is None:
            raise EpiError("a Proved edge must carry its candidate")

    def to_dict(self) -> dict:
        return {"source": self.source, "target": self.target, "relation": self.relation,
                "rule": self.rule, "verdict": self.verdict.to_dict(),
                "candidate": self.candidate.to_dict() if self.candidate else None}


# ------------------------------------------------------------------ oracles

def _reduced_words(ngens: int, max_len: int) -> Iterator[Word]:
    """All freely reduced words of length ``<= max_len``, shortest first."""
    layer = [()]
    yield Word()
    letters = [s * (g + 1) for g in range(ngens) for s in (1, -1)]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        for w in nxt:
            yield Word(w)
        layer = nxt


def _torus_ev(T: TorusGroup, w: Word, equals: str = "1", kind: str = "torus_normal_form") -> dict:
    return {"kind": kind, "torus": [T.p, T.q], "word": T.presentation.fmt(w), "equals": equals}


class _Oracle:
    """Word problem, peripheral exponents and surjectivity in one target."""
    exact = False

    def __init__(self, target: PeripheralPresentation, budget: Budget):
        self.target, self.budget = target, budget
        self.pres = target.presentation

    def trivial(self, w: Word) -> Verdict:
        return word_is_trivial(self.pres, w, self.budget)

    def exponent_options(self, w: Word) -> Iterator[Tuple[int, int]]:
        a = weight_of(w, self.weights)
        for b in _B_ORDER:
            yield a, b

    @property
    def weights(self):
        return abelian_weights(self.pres, self.target.meridians[:1])[0]

    def conjugators(self) -> Iterator[Word]:
        yield Word()

    def not_peripheral(self, w: Word) -> Optional[dict]:
        return None

    def surjective(self, images: Sequence[Word]) -> Verdict:
        hit = _generators_hit(self.target, images)
        if hit is not None:
            return Verdict.proved(hit)
        ref = _surjectivity_refutation(self.target, images, self.budget)
        if ref is not None:
            return Verdict.refuted(ref, note="images generate a proper subgroup of a finite quotient")
        return Verdict.unknown(SURJECTIVITY_GRADE)


class _TorusOracle(_Oracle):
    exact = True

    def __init__(self, target, budget):
        super().__init__(target, budget)
        T = self.T = TorusGroup(*target.torus)
        base = []
        for w in (target.meridian, target.longitude):
            e = T.peripheral_exponents(w)
            if e is None:
                raise EpiError("torus target peripheral words are not in <m, l>")
            base.append(e)
        (al, be), (ga, de) = base
        self.basis, self.det = base, al * de - be * ga
        if abs(self.det) != 1:
            raise EpiError("torus target peripheral words do not generate <m, l>")

    def trivial(self, w):
        if self.T.is_trivial(w):
            return Verdict.proved(_torus_ev(self.T, w))
        return Verdict.refuted(_torus_ev(self.T, w, kind="torus_inequality"))

    def exponent_options(self, w):
        e = self.T.peripheral_exponents(w)
        if e is None:
            return
        i, j = e
        (al, be), (ga, de) = self.basis
        yield (i * de - ga * j) // self.det, (al * j - be * i) // self.det

    def conjugators(self):
        yield from _reduced_words(2, self.budget.conjugator_length)

    def not_peripheral(self, w):
        if self.T.conjugate_into_peripheral(w):
            return None
        return _torus_ev(self.T, w, kind="torus_not_peripheral")

    def surjective(self, images):
        hit = _generators_hit(self.target, images)
        if hit is not None:
            return Verdict.proved(hit)
        found: Dict[object, Word] = {}
        want = {self.T.normal_form(Word.gen(g)): g for g in range(2)}
        for expr in _reduced_words(len(images), 5 if len(images) <= 2 else 3):
            nf = self.T.normal_form(expr.substitute(images))
            if nf in want and want[nf] not in found:
                found[want[nf]] = expr
                if len(found) == 2:
                    ev = {"kind": "torus_generation", "torus": [self.T.p, self.T.q],
                          "images": [self.pres.fmt(w) for w in images],
                          "u": [list(s) for s in found[0].syllables()],
                          "v": [list(s) for s in found[1].syllables()]}
                    return Verdict.proved(ev)
        return super().surjective(images)


class _CyclicOracle(_Oracle):
    """The unknot group ``<x | >``: words are equal iff their exponent sums are."""
    exact = True

    def __init__(self, target, budget):
        super().__init__(target, budget)
        m = target.meridian.exponent_sums(1)[0]
        if abs(m) != 1:
            raise EpiError("unknot target meridian must be a generator")
        self.sign = m

    def trivial(self, w):
        if not w.letters:
            return Verdict.proved(relator_product_evidence(self.pres, w, ()))
        return Verdict.refuted({"kind": "abelian_image", "presentation": self.pres.to_text(),
                                "word": self.pres.fmt(w)})

    def exponent_options(self, w):
        yield w.exponent_sums(1)[0] * self.sign, 0

    def surjective(self, images):
        if gcd(*[w.exponent_sums(1)[0] for w in images], 0) == 1:
            return Verdict.proved({"kind": "cyclic_generation",
                                   "images": [self.pres.fmt(w) for w in images],
                                   "name": self.pres.names[0]})
        return Verdict.refuted({"kind": "cyclic_generation_fails",
                                "images": [self.pres.fmt(w) for w in images],
                                "name": self.pres.names[0]})


def _is_cyclic_target(t: PeripheralPresentation) -> bool:
    return t.presentation.ngens == 1 and all(not r.letters for r in t.presentation.relators)


def _is_torus_target(t: PeripheralPresentation) -> bool:
    return t.torus is not None and t.presentation == TorusGroup(*t.torus).presentation


def target_oracle(target: PeripheralPresentation, budget: Budget = DEFAULT) -> _Oracle:
    if _is_cyclic_target(target):
        return _CyclicOracle(target, budget)
    if _is_torus_target(target):
        return _TorusOracle(target, budget)
    return _Oracle(target, budget)


# ------------------------------------------------------------ surjectivity

def _generators_hit(target: PeripheralPresentation, images: Sequence[Word]) -> Optional[dict]:
    imgs = set(images)
    for g in range(target.presentation.ngens):
        x = Word.gen(g)
        if x not in imgs and x.inverse() not in imgs:
            return None
    return {"kind": "generators_hit", "target": presentation_text(target),
            "images": [target.presentation.fmt(w) for w in images]}


def _surjectivity_refutation(target, images, budget) -> Optional[dict]:
    pres = target.presentation
    E = simplifier(pres)
    q, index = E.presentation()
    back = [E.rewrite(Word.gen(g))[0].relabel(index) for g in range(pres.ngens)]
    for name in REFUTING_GROUPS:
        F = group_by_name(name)
        try:
            for im in iter_homs(q, F, budget.quotient_cap):
                tim = [F.evaluate(u, im) for u in back]
                full = F.generated_subgroup(tim)
                sub = F.generated_subgroup([F.evaluate(w, tim) for w in images])
                if sub < full:
                    return {"kind": "surjectivity_quotient", "target": presentation_text(target),
                            "images": [pres.fmt(w) for w in images], "group": F.name,
                            "target_images": tim}
        except SearchCapExceeded:
            continue
    return None


@register("generators_hit")
def _check_generators_hit(ev) -> bool:
    t = _peripheral(ev["target"])
    return _generators_hit(t, [t.presentation.word(s) for s in ev["images"]]) is not None


@register("torus_generation")
def _check_torus_generation(ev) -> bool:
    T = TorusGroup(*ev["torus"])
    images = [parse_word(s, ("u", "v")) for s in ev["images"]]
    for g, key in enumerate(("u", "v")):
        expr = Word.from_syllables((int(i), int(e)) for i, e in ev[key])
        if any(abs(x) > len(images) for x in expr.letters):
            return False
        if not T.equal(expr.substitute(images), Word.gen(g)):
            return False
    return True


@register("cyclic_generation")
def _check_cyclic_generation(ev) -> bool:
    names = (ev["name"],)
    return gcd(*[parse_word(s, names).exponent_sums(1)[0] for s in ev["images"]], 0) == 1


@register("cyclic_generation_fails")
def _check_cyclic_generation_fails(ev) -> bool:
    return not _check_cyclic_generation(ev)


@register("surjectivity_quotient")
def _check_surjectivity_quotient(ev) -> bool:
    from .fpgroup.finite import is_homomorphism
    t = _peripheral(ev["target"])
    pres, F, tim = t.presentation, group_by_name(ev["group"]), ev["target_images"]
    if len(tim) != pres.ngens or not is_homomorphism(pres, F, tim):
        return False
    sub = F.generated_subgroup([F.evaluate(pres.word(s), tim) for s in ev["images"]])
    return sub < F.generated_subgroup(tim)


@register("torus_inequality")
def _check_torus_inequality(ev) -> bool:
    T = TorusGroup(*ev["torus"])
    names = ("u", "v")
    return not T.equal(parse_word(ev["word"], names), parse_word(ev.get("equals", "1"), names))


@register("torus_not_peripheral")
def _check_torus_not_peripheral(ev) -> bool:
    return not TorusGroup(*ev["torus"]).conjugate_into_peripheral(parse_word(ev["word"], ("u", "v")))


# ------------------------------------------------------------ peripheral check

def _pattern_words(target: PeripheralPresentation, a: int, b: int) -> Word:
    return target.meridian ** a * target.longitude ** b


def peripheral_check(c: HomCandidate, budget: Budget = DEFAULT,
                     oracle: Optional[_Oracle] = None) -> Verdict:
    """Find ``h`` and ``(a, b, c, d)`` with ``h φ(m1) h^-1 = m2^a l2^b`` and ``h φ(l1) h^-1 = m2^c l2^d``.

    Only the identity (or the supplied witness) is tried as a conjugator in
    targets without a normal form; normal-form targets search all words up
    to ``budget.conjugator_length``.
    """
    src, tgt = c.source, c.target
    if not src.meridians or not tgt.meridians:
        raise EpiError("missing peripheral words")
    oracle = oracle or target_oracle(tgt, budget)
    gm, gl = c.apply(src.meridian), c.apply(src.longitude)
    base = {**c.base_evidence(), "kind": "peripheral"}
    for w, what in ((gm, "meridian"), (gl, "longitude")):
        ev = oracle.not_peripheral(w)
        if ev is not None:
            return Verdict.refuted({**base, "failure": what, "evidence": ev},
                                   note=f"the {what} image is not conjugate into <m2, l2>")
    conjugators = [c.conjugator] if c.conjugator is not None else oracle.conjugators()
    for h in conjugators:
        X, Y = gm.conjugate(h), gl.conjugate(h)
        if c.pattern is not None:
            a, b, cc, d = c.pattern
            xs, ys = [(a, b)], [(cc, d)]
        else:
            xs, ys = oracle.exponent_options(X), oracle.exponent_options(Y)
        mer = _first_proved(oracle, X, tgt, xs)
        if mer is None:
            continue
        lon = _first_proved(oracle, Y, tgt, ys)
        if lon is None:
            continue
        (a, b, ev_m), (cc, d, ev_l) = mer, lon
        return Verdict.proved({**base, "pattern": [a, b, cc, d],
                               "conjugator": tgt.presentation.fmt(h),
                               "meridian": ev_m, "longitude": ev_l},
                              note=f"peripheral exponents ({a},{b},{cc},{d})")
    return Verdict.unknown("no conjugator within the search bound proves the peripheral images")


def _first_proved(oracle, X, tgt, options):
    for a, b in options:
        v = oracle.trivial(X * _pattern_words(tgt, a, b).inverse())
        if v.is_proved:
            return a, b, v.evidence
    return None


# ------------------------------------------------------------ verification

def verify_candidate(c: HomCandidate, budget: Budget = DEFAULT) -> Verdict:
    """Proved iff relators, surjectivity and the peripheral condition are all proved."""
    oracle = target_oracle(c.target, budget)
    base = {**c.base_evidence(), "kind": "candidate"}
    rel_ev, pending = [], []
    for j, r in enumerate(c.source.presentation.relators):
        v = oracle.trivial(c.apply(r))
        if v.is_refuted:
            return Verdict.refuted({**base, "failure": {"relator": j, "evidence": v.evidence}},
                                   note=f"image of source relator {j} is nontrivial")
        rel_ev.append(v.evidence if v.is_proved else None)
        if not v.is_proved:
            pending.append(j)
    surj = oracle.surjective(c.images)
    if surj.is_refuted:
        return Verdict.refuted({**base, "failure": {"surjectivity": surj.evidence}},
                               note="the images do not generate the target")
    per = peripheral_check(c, budget, oracle)
    if per.is_refuted:
        return Verdict.refuted({**base, "failure": {"peripheral": per.evidence}}, note=per.note)
    grades = {"relators": "proved" if not pending else f"unproved {pending}",
              "surjectivity": "proved" if surj.is_proved else SURJECTIVITY_GRADE,
              "peripheral": "proved" if per.is_proved else "unknown"}
    if not pending and surj.is_proved and per.is_proved:
        return Verdict.proved({**base, "relators": rel_ev, "surjectivity": surj.evidence,
                               "peripheral": per.evidence},
                              note=per.note)
    return Verdict.unknown("; ".join(f"{k}: {v}" for k, v in grades.items()),
                           evidence={"kind": "candidate_grades", **grades})


def candidate_pattern(v: Verdict) -> Optional[Pattern]:
    if v.is_proved:
        return tuple(v.evidence["peripheral"]["pattern"])
    return None


def _same_word(ev: dict, key: str, names, w: Word) -> bool:
    return parse_word(ev[key], names) == w


def _proves(ev: dict, target: PeripheralPresentation, w: Word, trivial: bool) -> bool:
    """Does ``ev`` prove ``w == 1`` (or ``w != 1``) in the target group?"""
    kind = ev.get("kind")
    if kind not in (TRIVIAL_KINDS if trivial else NONTRIVIAL_KINDS):
        return False
    if kind.startswith("torus"):
        if not _is_torus_target(target) or list(ev["torus"]) != list(target.torus):
            return False
        if ev.get("equals", "1") != "1" or not _same_word(ev, "word", ("u", "v"), w):
            return False
    else:
        p = parse_presentation(ev["presentation"])
        if getattr(p, "presentation", p) != target.presentation:
            return False
        if not _same_word(ev, "word", target.names, w):
            return False
    return replay_evidence(ev)


def _check_peripheral_ev(ev, c: HomCandidate) -> bool:
    a, b, cc, d = ev["pattern"]
    tgt = c.target
    h = tgt.presentation.word(ev["conjugator"])
    X, Y = c.apply(c.source.meridian).conjugate(h), c.apply(c.source.longitude).conjugate(h)
    return (_proves(ev["meridian"], tgt, X * _pattern_words(tgt, a, b).inverse(), True)
            and _proves(ev["longitude"], tgt, Y * _pattern_words(tgt, cc, d).inverse(), True))


def _check_surjectivity_ev(ev, c: HomCandidate, proved: bool) -> bool:
    tp = c.target.presentation
    if ev.get("kind") == "torus_generation":
        if not _is_torus_target(c.target) or list(ev["torus"]) != list(c.target.torus):
            return False
    elif ev.get("kind") in ("cyclic_generation", "cyclic_generation_fails"):
        if not _is_cyclic_target(c.target) or ev["name"] != tp.names[0]:
            return False
    elif ev.get("kind") in ("generators_hit", "surjectivity_quotient"):
        if _peripheral(ev["target"]) != c.target:
            return False
    else:
        return False
    if [tp.word(s) for s in ev["images"]] != list(c.images):
        return False
    if proved == (ev["kind"] in ("surjectivity_quotient", "cyclic_generation_fails")):
        return False
    return replay_evidence(ev)


@register("candidate")
def _check_candidate(ev) -> bool:
    c = HomCandidate.from_dict(ev)
    rels = c.source.presentation.relators
    if "failure" in ev:
        f = ev["failure"]
        if "relator" in f:
            j = int(f["relator"])
            return 0 <= j < len(rels) and _proves(f["evidence"], c.target, c.apply(rels[j]), False)
        if "surjectivity" in f:
            return _check_surjectivity_ev(f["surjectivity"], c, proved=False)
        if "peripheral" in f:
            return _check_not_peripheral_ev(f["peripheral"], c)
        return False
    if len(ev["relators"]) != len(rels):
        return False
    if not all(_proves(e, c.target, c.apply(r), True) for e, r in zip(ev["relators"], rels)):
        return False
    return (_check_surjectivity_ev(ev["surjectivity"], c, proved=True)
            and _check_peripheral_ev(ev["peripheral"], c))


def _check_not_peripheral_ev(ev, c: HomCandidate) -> bool:
    if not _is_torus_target(c.target):
        return False
    w = c.apply(c.source.meridian if ev["failure"] == "meridian" else c.source.longitude)
    sub = ev["evidence"]
    return (sub.get("kind") == "torus_not_peripheral" and list(sub["torus"]) == list(c.target.torus)
            and _same_word(sub, "word", ("u", "v"), w) and replay_evidence(sub))


@register("peripheral")
def _check_peripheral(ev) -> bool:
    c = HomCandidate.from_dict(ev)
    if "failure" in ev:
        return _check_not_peripheral_ev(ev, c)
    return _check_peripheral_ev(ev, c)


# ------------------------------------------------------------ hom-count obstruction

@lru_cache(maxsize=4096)
def _epi_count(p: Presentation, name: str, cap: int) -> int:
    q, _ = simplifier(p).presentation()
    return hom_enumerate(q, group_by_name(name), cap).epis


def homcount_obstruction(p1, p2, groups: Sequence[str] = SMALL_NAMES,
                         cap: int = DEFAULT.hom_cap) -> Verdict:
    """Refuted when some ``F`` has more epimorphisms from ``p2`` than from ``p1``.

    An epimorphism ``p1 ->> p2`` injects ``Epi(p2, F)`` into ``Epi(p1, F)``
    by precomposition. Counts are taken on Tietze-simplified presentations
    (epimorphism counts are isomorphism invariants).
    """
    q1, q2 = getattr(p1, "presentation", p1), getattr(p2, "presentation", p2)
    for name in groups:
        n1, n2 = _epi_count(q1, name, cap), _epi_count(q2, name, cap)
        if n2 > n1:
            return Verdict.refuted({"kind": "homcount", "group": name, "source": q1.to_text(),
                                    "target": q2.to_text(), "source_epis": n1, "target_epis": n2},
                                   note=f"|Epi(., {name})| = {n1} < {n2}")
    return Verdict.unknown("epimorphism counts consistent")


@register("homcount")
def _check_homcount(ev) -> bool:
    p1, p2 = parse_presentation(ev["source"]), parse_presentation(ev["target"])
    n1 = _epi_count(getattr(p1, "presentation", p1), ev["group"], DEFAULT.hom_cap)
    n2 = _epi_count(getattr(p2, "presentation", p2), ev["group"], DEFAULT.hom_cap)
    return n1 == ev["source_epis"] and n2 == ev["target_epis"] and n2 > n1


# ------------------------------------------------------------ constructions

def identity_candidate(p: PeripheralPresentation) -> HomCandidate:
    return HomCandidate(p, p, tuple(Word.gen(g) for g in range(p.presentation.ngens)),
                        label="identity")


def _knot_weights(p: PeripheralPresentation) -> List[int]:
    try:
        return abelian_weights(p.presentation, p.meridians[:1])[0]
    except PresentationError as exc:
        raise EpiError(f"{p.name or 'presentation'} is not a knot group: {exc}") from exc


def abelianization_candidate(p: PeripheralPresentation,
                             unknot: Optional[PeripheralPresentation] = None) -> HomCandidate:
    """``g -> x^weight(g)`` onto the unknot group; every knot group maps onto ``Z``."""
    from .fpgroup.families import unknot_presentation
    u = unknot or unknot_presentation()
    images = tuple(Word.gen(0, w) for w in _knot_weights(p))
    return HomCandidate(p, u, images, label="abelianization")


def torus_epimorphism(src: PeripheralPresentation, tgt: PeripheralPresentation) -> HomCandidate:
    """``T(p, n) ->> T(p, m)`` for ``m | n`` via ``u -> u^(n/m)``, ``v -> v``."""
    if not (_is_torus_target(src) and _is_torus_target(tgt)):
        raise EpiError("torus_epimorphism needs standard torus-knot presentations")
    (p1, n), (p2, m) = src.torus, tgt.torus
    if p1 != p2 or n % m or gcd(n // m, p1) != 1:
        raise EpiError(f"no standard torus map T({p1},{n}) -> T({p2},{m})")
    return HomCandidate(src, tgt, (Word.gen(0, n // m), Word.gen(1)), label="torus")


def _split_sum(s: PeripheralPresentation):
    if not s.factors:
        raise EpiError("input is not a recorded connected sum")
    f1, f2 = s.factors
    return f1, f2, f1.presentation.ngens


def factor_epimorphisms(s: PeripheralPresentation) -> Tuple[HomCandidate, HomCandidate]:
    """Onto each summand: keep its generators, collapse the other summand to powers of the meridian."""
    f1, f2, n1 = _split_sum(s)
    w1, w2 = _knot_weights(f1), _knot_weights(f2)
    onto1 = tuple(Word.gen(g) for g in range(n1)) + tuple(f1.meridian ** w for w in w2)
    onto2 = tuple(f2.meridian ** w for w in w1) + tuple(Word.gen(g) for g in range(f2.presentation.ngens))
    return (HomCandidate(s, f1, onto1, label="factor 1"),
            HomCandidate(s, f2, onto2, label="factor 2"))


def double_sum_epimorphism(s: PeripheralPresentation) -> HomCandidate:
    """``k # k ->> k`` folding both copies onto one; the longitude goes to its square."""
    f1, f2, n1 = _split_sum(s)
    if f1.presentation != f2.presentation or f1.meridians != f2.meridians \
            or f1.longitudes != f2.longitudes:
        raise EpiError("the two summands are not identical presentations")
    ident = tuple(Word.gen(g) for g in range(n1))
    return HomCandidate(s, f1, ident + ident, pattern=(1, 0, 0, 2), label="fold")


# ---- symmetry quotients

def _orbit_map(ngens: int, partition) -> Dict[int, int]:
    orbit_of: Dict[int, int] = {}
    for i, orbit in enumerate(partition):
        for g in orbit:
            if not 0 <= g < ngens:
                raise EpiError(f"generator index {g} out of range")
            if g in orbit_of:
                raise EpiError(f"generator x{g + 1} appears in two orbits")
            orbit_of[g] = i
    if len(orbit_of) != ngens:
        missing = sorted(set(range(ngens)) - set(orbit_of))
        raise EpiError(f"partition misses generators {[f'x{g + 1}' for g in missing]}")
    return orbit_of


def symmetry_quotient(W, partition) -> Tuple[PeripheralPresentation, HomCandidate]:
    """Identify the Wirtinger generators in each orbit of a diagram symmetry.

    ``partition`` lists orbits of 0-based generator indices. A crossing
    whose identified relator collapses to ``y_a y_b^-1`` with ``a != b``
    would force two orbits together, so the partition is rejected.
    The quotient longitude is read over one period of the identified
    undercrossing sequence; the candidate's longitude exponent is the
    number of periods.
    """
    from .fpgroup.words import canonical_cyclic, cyclic_reduce
    pres, pd = W.presentation, W.pd
    if len(pd.components) != 1:
        raise EpiError("symmetry quotients are implemented for knot diagrams")
    orbit_of = _orbit_map(pres.ngens, partition)
    rels, seen = [], set()
    for k, r in enumerate(pres.relators):
        img = cyclic_reduce(r.relabel(orbit_of))[0]
        lt = img.letters
        if len(lt) == 2 and lt[0] > 0 > lt[1] and lt[0] != -lt[1]:
            raise EpiError(f"partition not closed: crossing {k} {pd.crossings[k]} identifies "
                           f"orbits {lt[0] - 1} and {-lt[1] - 1}")
        if not lt:
            continue
        key = min(canonical_cyclic(img), canonical_cyclic(img.inverse()))
        if key not in seen:
            seen.add(key)
            rels.append(img)
    names = tuple(pres.names[min(o)] for o in partition)
    qpres = Presentation(names, tuple(rels))
    images = tuple(Word.gen(orbit_of[g]) for g in range(pres.ngens))

    comp = pd.components[0]
    seq = []
    for v in comp:
        k, slot = pd.heads[v]
        if slot == 0:
            seq.append((orbit_of[W.arc_of[pd.crossings[k][1]]], pd.signs[k]))
    N = len(seq)
    d = next(d for d in range(1, N + 1) if N % d == 0
             and all(seq[i] == seq[i % d] for i in range(N)))
    periods = N // d
    writhe = W.writhes[0]
    if writhe % periods:
        raise EpiError("the writhe is not divisible by the number of periods")
    m2 = Word.gen(orbit_of[W.arc_of[comp[0]]])
    l2 = Word.from_syllables(seq[:d]) * m2 ** (-(writhe // periods))
    name = f"{W.peripheral.name}/sym" if W.peripheral.name else ""
    quotient = PeripheralPresentation(qpres, (m2,), (l2,), name=name)
    return quotient, HomCandidate(W.peripheral, quotient, images, pattern=(1, 0, 0, periods),
                                  label="symmetry quotient")


# ---- satellites

def satellite_pattern_epi(pattern_link, companion: PeripheralPresentation, axis: int = 1):
    """Satellite group of ``pattern ⊂ S^3 - axis`` glued to ``companion``, with the map onto the pattern group.

    The exterior of the unknotted axis is a solid torus whose meridian disk
    is bounded by the axis longitude, so gluing identifies the companion
    meridian with the axis longitude and the companion longitude with the
    axis meridian. The pattern group kills the axis meridian; the map
    collapses the companion group onto powers of the axis longitude.
    Returns ``(satellite, pattern group, candidate)``.
    """
    pd = pattern_link.pd
    if len(pd.components) != 2:
        raise EpiError("the pattern link needs exactly two components (pattern knot and axis)")
    knot = 1 - axis
    link = pattern_link.presentation
    n = link.ngens
    mA, lA = pattern_link.meridians[axis], pattern_link.longitudes[axis]
    shift = {g: g + n for g in range(companion.presentation.ngens)}
    cnames = tuple(f"{c}_c" for c in companion.names)
    crels = tuple(r.relabel(shift) for r in companion.presentation.relators)
    cm, cl = companion.meridian.relabel(shift), companion.longitude.relabel(shift)
    sat = Presentation(link.names + cnames,
                       link.relators + crels + (cm * lA.inverse(), cl * mA.inverse()))
    m, l = pattern_link.meridians[knot], pattern_link.longitudes[knot]
    pname = pattern_link.peripheral.name or "pattern"
    satellite = PeripheralPresentation(sat, (m,), (l,), name=f"{pname}({companion.name})")
    target = PeripheralPresentation(Presentation(link.names, link.relators + (mA,)), (m,), (l,),
                                    name=pname)
    weights = _knot_weights(companion)
    images = tuple(Word.gen(g) for g in range(n)) + tuple(lA ** w for w in weights)
    return satellite, target, HomCandidate(satellite, target, images, pattern=(1, 0, 0, 1),
                                           label="satellite -> pattern")


# ---- the surgery family

@dataclass(frozen=True)
class SurgeryFamily:
    q: int
    knot_group: PeripheralPresentation        # pi k
    surgered: PeripheralPresentation          # pi K_q
    candidate: HomCandidate
    c_word: Word
    c_verdict: Verdict


def surgery_family(link, q: int, knot: int = 1, curve: int = 0,
                   budget: Budget = DEFAULT) -> SurgeryFamily:
    """``pi K_q = pi(k ∪ C) / <<w c^q>>`` and the identity map onto ``pi k = pi(k ∪ C) / <<w>>``.

    ``w`` and ``c`` are the meridian and longitude of ``C``. Requires
    ``lk(k, C) = 0`` and that ``c`` is not proved nontrivial in ``pi k``.
    """
    from .diagram import linking_number
    if q < 1:
        raise EpiError("q must be a positive integer")
    if len(link.pd.components) != 2:
        raise EpiError("the surgery family needs a two-component link k ∪ C")
    lk = linking_number(link.pd, knot, curve)
    if lk:
        raise EpiError(f"linking number lk(k, C) = {lk}; requirement 2 needs lk = 0")
    pres = link.presentation
    w, c = link.meridians[curve], link.longitudes[curve]
    m, l = link.meridians[knot], link.longitudes[knot]
    pk = PeripheralPresentation(Presentation(pres.names, pres.relators + (w,)), (m,), (l,), name="k")
    cv = word_is_trivial(pk.presentation, c, budget)
    if cv.is_refuted:
        raise EpiError("C is proved nontrivial in pi k; requirement 4 needs C = 1 in pi k")
    Kq = PeripheralPresentation(Presentation(pres.names, pres.relators + (w * c ** q,)), (m,), (l,),
                                name=f"K_{q}")
    cand = HomCandidate(Kq, pk, tuple(Word.gen(g) for g in range(pres.ngens)),
                        pattern=(1, 0, 0, 1), label=f"K_{q} -> k")
    return SurgeryFamily(q, pk, Kq, cand, c, cv)


# ------------------------------------------------------------ degree one

DEGREE_ONE_PATTERNS: Tuple[Pattern, ...] = tuple((1, p, 0, s) for p in (0, 1, -1) for s in (1, -1))


def degree_one_check(k1: PeripheralPresentation, k2: PeripheralPresentation,
                     candidates: Sequence[HomCandidate] = (), budget: Budget = DEFAULT) -> Verdict:
    """``k1 ⪰₁ k2``: some epimorphism with ``m1 -> m2 l2^p`` (p ∈ {0, ±1}) and ``l1 -> l2^±1``."""
    from .apoly import NoAPolyData, apoly_for_torus, obstruction_check
    cands = list(candidates)
    if _is_cyclic_target(k2):
        cands.insert(0, abelianization_candidate(k1, k2))
    if k1 == k2:
        cands.insert(0, identity_candidate(k1))
    for c in cands:
        tries = [None] + (list(DEGREE_ONE_PATTERNS) if target_oracle(c.target, budget).exact else [])
        for pattern in tries:
            v = verify_candidate(c.with_pattern(pattern) if pattern else c, budget)
            if v.is_proved and candidate_pattern(v) in DEGREE_ONE_PATTERNS:
                return Verdict.proved({"kind": "degree_one_candidate", "candidate": v.evidence},
                                      note=f"degree-one pattern {candidate_pattern(v)}")
    try:
        A1, A2 = apoly_for_torus(k1.torus), apoly_for_torus(k2.torus)
    except NoAPolyData as exc:
        return Verdict.unknown(str(exc))
    results = [obstruction_check(A1, A2, pat) for pat in DEGREE_ONE_PATTERNS]
    if all(r.is_refuted for r in results):
        return Verdict.refuted({"kind": "degree_one_apoly", "source": k1.name, "target": k2.name,
                                "patterns": [r.evidence for r in results]},
                               note="every degree-one peripheral pattern fails A-polynomial divisibility")
    open_ = [p for p, r in zip(DEGREE_ONE_PATTERNS, results) if not r.is_refuted]
    return Verdict.unknown(f"A-polynomial divisibility allows patterns {open_}")


@register("degree_one_apoly")
def _check_degree_one_apoly(ev) -> bool:
    pats = [tuple(e["pattern"]) for e in ev["patterns"]]
    if sorted(pats) != sorted(DEGREE_ONE_PATTERNS):
        return False
    if len({(e["A1"], e["A2"]) for e in ev["patterns"]}) != 1:
        return False
    return all(e.get("kind") == "apoly_divisibility" and replay_evidence(e) for e in ev["patterns"])


@register("degree_one_candidate")
def _check_degree_one_candidate(ev) -> bool:
    sub = ev["candidate"]
    return (tuple(sub["peripheral"]["pattern"]) in DEGREE_ONE_PATTERNS
            and sub.get("kind") == "candidate" and "failure" not in sub and replay_evidence(sub))


# ------------------------------------------------------------ composition and search

def compose(c1: HomCandidate, c2: HomCandidate) -> HomCandidate:
    """``c2 ∘ c1``; the target of ``c1`` must be the source of ``c2``."""
    if c1.target.presentation != c2.source.presentation:
        raise EpiError("candidates are not composable")
    return HomCandidate(c1.source, c2.target, tuple(c2.apply(w) for w in c1.images),
                        label=f"{c2.label} ∘ {c1.label}".strip(" ∘"))


def torus_meridian_search(src: PeripheralPresentation, tgt: PeripheralPresentation,
                          max_len: int = 2) -> Optional[HomCandidate]:
    """Send every generator of a Wirtinger-type presentation to a conjugate of the torus meridian.

    Backtracks over conjugators of length ``<= max_len``; the source
    meridian goes to the target meridian itself. Relators are checked in
    torus normal form as soon as all their generators are assigned.
    """
    if not _is_torus_target(tgt):
        raise EpiError("torus_meridian_search needs a torus-knot target")
    T = TorusGroup(*tgt.torus)
    pres = src.presentation
    mer = src.meridian
    if len(mer) != 1:
        raise EpiError("source meridian must be a single generator")
    first = abs(mer.letters[0]) - 1
    sign = 1 if mer.letters[0] > 0 else -1
    weights = _knot_weights(src)
    if any(abs(w) != 1 for w in weights):
        raise EpiError("every source generator must be a meridian (weight ±1)")
    order = [first] + [g for g in range(pres.ngens) if g != first]
    pos = {g: i for i, g in enumerate(order)}
    due: Dict[int, List[Word]] = {}
    for r in pres.relators:
        last = max((pos[abs(x) - 1] for x in r.letters), default=0)
        due.setdefault(last, []).append(r)
    conjs = list(_reduced_words(2, max_len))
    images: List[Optional[Word]] = [None] * pres.ngens
    oracle = _TorusOracle(tgt, DEFAULT)

    def rec(i):
        if i == len(order):
            return oracle.surjective(images).is_proved
        g = order[i]
        opts = [Word()] if i == 0 else conjs
        base = tgt.meridian ** (weights[g] * (sign if i == 0 else 1))
        for h in opts:
            images[g] = base.conjugate(h)
            if all(T.is_trivial(r.substitute(images)) for r in due.get(i, ())):
                if rec(i + 1):
                    return True
        images[g] = None
        return False

    if rec(0):
        return HomCandidate(src, tgt, tuple(images), label="meridian search")
    return None
