import random

import pytest
from hypothesis import given, settings, strategies as st

from knotposet.algebra.laurent import cyclic_resultant
from knotposet.alexander import alexander_poly
from knotposet.diagram import parse_pd, wirtinger
from knotposet.fpgroup.certify import check_certificate
from knotposet.fpgroup.finite import (FiniteGroup, SearchCapExceeded, cyclic_group, dihedral_group,
                                      group_by_name, hom_enumerate, library,
                                      symmetric_group)
from knotposet.fpgroup.presentation import (Presentation, PresentationError, abelianization,
                                            parse_presentation, presentation_text)
from knotposet.fpgroup.schreier import rs_cyclic_kernel
from knotposet.fpgroup.torus import TorusError, torus_group
from knotposet.fpgroup.triviality import cert_from_json, tietze_simplify, word_is_trivial
from knotposet.fpgroup.words import (Word, canonical_cyclic, cyclic_permutations, cyclic_reduce,
                                     format_word, free_reduce, parse_word, WordSyntaxError)
from knotposet.verdict import replay

from conftest import FIGURE_EIGHT_PD, TREFOIL_PD, burau

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=14)


# ------------------------------------------------------------------ words

@given(letters)
def test_free_reduce_is_reduced_and_idempotent(xs):
    r = free_reduce(xs)
    assert all(a != -b for a, b in zip(r, r[1:]))
    assert free_reduce(r) == r


@given(letters, letters)
def test_group_laws(a, b):
    u, v = Word(a), Word(b)
    assert not (u * u.inverse()).letters
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert v.conjugate(u) == u * v * u.inverse()


@given(letters)
def test_canonical_cyclic_is_rotation_invariant(xs):
    w, _ = cyclic_reduce(Word(xs))
    keys = {canonical_cyclic(c) for c in cyclic_permutations(w)}
    assert len(keys) == 1


@given(letters)
def test_format_parse_roundtrip(xs):
    names = ("x", "y", "z")
    w = Word(xs)
    assert parse_word(format_word(w, names), names) == w


def test_parse_word_errors():
    with pytest.raises(WordSyntaxError):
        parse_word("xq", ("x", "y"))


# ------------------------------------------------------------------ presentations

def test_presentation_text_roundtrip():
    text = "gens: u,v; rels: u^2v^-3; meridian: u^-1v; longitude: u^2v^-1u^-1v^-1u^-1v^-1u^-1v^-1u^-1"
    p = parse_presentation(text)
    assert parse_presentation(presentation_text(p)) == p
    with pytest.raises(PresentationError):
        parse_presentation("rels: x")
    with pytest.raises(PresentationError):
        Presentation(("x", "x"))


@pytest.mark.parametrize("rels, expected", [
    (["x^2y^-3"], "Z"),
    (["xyx^-1y^-1"], "Z + Z"),
    (["x^4", "y^6"], "Z/2 + Z/12"),
])
def test_abelianization(rels, expected):
    names = ("x", "y")
    p = Presentation(names, tuple(parse_word(r, names) for r in rels))
    assert str(abelianization(p)) == expected


# ------------------------------------------------------------------ finite groups

@pytest.mark.parametrize("F", library(), ids=lambda F: F.name)
def test_library_groups_are_groups(F):
    n = F.order
    rng = random.Random(F.name)
    for _ in range(200):
        a, b, c = (rng.randrange(n) for _ in range(3))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert all(F.mul(a, F.inverse[a]) == F.identity for a in range(n))


def brute_hom_count(p: Presentation, F: FiniteGroup) -> int:
    from itertools import product
    return sum(all(F.evaluate(r, im) == F.identity for r in p.relators)
               for im in product(range(F.order), repeat=p.ngens))


@pytest.mark.parametrize("name", ["S3", "D5", "A4"])
def test_hom_counts_match_brute_force(name):
    F = group_by_name(name)
    for text in ["gens: x,y; rels: xyx^-1y^-1", "gens: x,y; rels: xyxy^-1x^-1y^-1",
                 "gens: x,y; rels: x^-1y^-1xy^-1x^-1yxy^-1xy"]:
        p = parse_presentation(text)
        assert hom_enumerate(p, F).homs == brute_hom_count(p, F)


def test_trefoil_epis_onto_s3():
    W = wirtinger(parse_pd(TREFOIL_PD))
    c = hom_enumerate(W.presentation, symmetric_group(3))
    assert c.epis == 6
    assert hom_enumerate(wirtinger(parse_pd(FIGURE_EIGHT_PD)).presentation, symmetric_group(3)).epis == 0
    assert hom_enumerate(W.presentation, dihedral_group(5)).epis == 0


def test_hom_cap():
    p = parse_presentation("gens: a,b,c,d,e,f; rels: ")
    with pytest.raises(SearchCapExceeded):
        hom_enumerate(p, group_by_name("A5"), cap=10 ** 6)
    assert hom_enumerate(parse_presentation("gens: a; rels: "), cyclic_group(7)).homs == 7


# ------------------------------------------------------------------ Tietze and word problem

def test_tietze_preserves_invariants(catalog):
    pres = []
    for name in catalog.names():
        rec = catalog.get(name)
        pres.append(rec.presentation.presentation)
        if rec.wirtinger is not None:
            pres.append(rec.wirtinger.presentation)
    for p in pres:
        r = tietze_simplify(p)
        q = r.presentation
        assert q.ngens <= p.ngens
        assert abelianization(q) == abelianization(p)
        for F in library():
            if F.order ** p.ngens <= 2 * 10 ** 5:
                assert hom_enumerate(q, F) == hom_enumerate(p, F), F.name
        for w in r.images:
            assert len(w.generators()) <= q.ngens


@pytest.mark.parametrize("pd_text", [TREFOIL_PD, FIGURE_EIGHT_PD])
def test_word_problem_verdicts(pd_text):
    W = wirtinger(parse_pd(pd_text))
    p = W.presentation
    m, l = W.meridians[0], W.longitudes[0]
    proved = word_is_trivial(p, m * l * m.inverse() * l.inverse())
    assert proved.is_proved and replay(proved)
    ev = proved.evidence
    assert check_certificate(p.relators, p.word(ev["word"]), cert_from_json(p, ev["factors"]))
    assert word_is_trivial(p, m).is_refuted
    # a commutator of meridians is nontrivial; only a finite quotient can see that
    x1, x2 = Word.gen(0), Word.gen(1)
    v = word_is_trivial(p, x1 * x2 * x1.inverse() * x2.inverse())
    assert v.is_refuted and v.evidence["kind"] == "finite_quotient" and replay(v)


# ------------------------------------------------------------------ Reidemeister-Schreier

@pytest.mark.parametrize("pd_text", [TREFOIL_PD, FIGURE_EIGHT_PD])
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_branched_cover_homology_orders(pd_text, q):
    W = wirtinger(parse_pd(pd_text))
    p = W.presentation
    K = rs_cyclic_kernel(p, [1] * p.ngens, q, kill_power=True)
    ab = abelianization(K)
    res = abs(cyclic_resultant(alexander_poly(W.peripheral), q))
    if res == 0:
        assert ab.free_rank > 0
    else:
        assert ab.free_rank == 0 and ab.torsion_order == res


def test_schreier_rejects_bad_weights():
    p = parse_presentation("gens: x,y; rels: x^2y^-3")
    with pytest.raises(PresentationError):
        rs_cyclic_kernel(p, [1, 1], 2)
    with pytest.raises(PresentationError):
        rs_cyclic_kernel(p, [3, 2], 0)


# ------------------------------------------------------------------ torus normal forms

uv_words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=8).map(Word)


@settings(max_examples=40, deadline=None)
@given(uv_words, uv_words)
def test_torus_normal_form_agrees_with_burau(a, b):
    G = torus_group(2, 3)
    assert G.equal(a, b) == (burau(a) == burau(b))
    assert burau(G.from_form(G.normal_form(a))) == burau(a)


@given(uv_words, st.integers(0, 8), st.booleans())
def test_torus_normal_form_ignores_relators(w, k, inv):
    G = torus_group(2, 5)
    r = G.presentation.relators[0]
    r = r.inverse() if inv else r
    k = min(k, len(w))
    w2 = Word(w.letters[:k]) * r * Word(w.letters[k:])
    assert G.normal_form(w2) == G.normal_form(w)


def test_torus_peripheral_structure():
    G = torus_group(2, 3)
    assert G.peripheral_exponents(G.meridian) == (1, 0)
    assert G.peripheral_exponents(G.longitude ** 2 * G.meridian) == (1, 2)
    assert G.peripheral_exponents(Word.gen(1)) is None
    assert G.conjugate_into_peripheral(G.meridian.conjugate(Word.gen(1)))
    assert not G.conjugate_into_peripheral(Word.gen(1))
    assert abelianization(G.presentation).is_infinite_cyclic()
    with pytest.raises(TorusError):
        torus_group(2, 4)


# ------------------------------------------------------------------ the virtual family

@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_virtual_family_longitude_words(q):
    from knotposet.fpgroup.families import (virtual_family_group, virtual_family_paper_longitude,
                                            virtual_family_presentation)
    from knotposet.fpgroup.triviality import words_equal
    G, k = virtual_family_group(q), virtual_family_presentation(q)
    x, y = Word.gen(0), Word.gen(1)
    w = x.inverse() * y * x
    z = y * w * y.inverse()
    short = z.inverse() * x * y.inverse() * w
    assert words_equal(G, k.longitude, short).is_proved
    proved = words_equal(G, virtual_family_paper_longitude(q), k.longitude)
    assert proved.is_proved and replay(proved)
    # n = q gives a word of nonzero exponent sum: refuted by the abelian image
    assert words_equal(G, virtual_family_paper_longitude(q, q), k.longitude).is_refuted
    with pytest.raises(PresentationError):
        virtual_family_presentation(1)
