import pytest

from knotposet.alexander import alexander_poly, fox_jacobian
from knotposet.algebra.laurent import associates, parse_laurent
from knotposet.diagram import (PDError, linking_number, mirror_pd, parse_pd, pd_connected_sum,
                               pd_from_tuples, torus_2n_pd, wirtinger)
from knotposet.fpgroup.presentation import abelianization
from knotposet.fpgroup.triviality import word_is_trivial
from knotposet.poset import load_links

from conftest import FIGURE_EIGHT_PD, TREFOIL_PD


def test_parse_trefoil(trefoil_pd):
    assert len(trefoil_pd.crossings) == 3
    assert len(trefoil_pd.components) == 1
    assert len(set(trefoil_pd.signs)) == 1
    assert parse_pd(trefoil_pd.to_text()) == trefoil_pd
    assert pd_from_tuples(trefoil_pd.to_json()) == trefoil_pd


def test_figure_eight_is_amphichiral_in_signs(figure_eight_pd):
    assert sum(figure_eight_pd.signs) == 0


@pytest.mark.parametrize("text, fragment", [
    ("X(1,2,3)", "malformed"),
    ("X(1,4,2,5) X(3,6,4,1)", "appears 1 time"),
    ("X(1,1,2,2)", "repeated"),
    ("X(1,2,2,1)", "repeated"),
    ("X(0,4,2,5) X(3,6,4,1) X(5,2,6,3)", "positive"),
    ("X(1,4,3,5) X(2,6,4,1) X(5,3,6,2)", "inconsistent"),
])
def test_malformed_pd_rejected(text, fragment):
    with pytest.raises(PDError, match=fragment):
        parse_pd(text)


def test_mirror_flips_signs(trefoil_pd):
    m = mirror_pd(trefoil_pd)
    assert m.signs == tuple(-s for s in trefoil_pd.signs)
    assert mirror_pd(m).signs == trefoil_pd.signs


def test_torus_diagram_matches_trefoil_invariants(trefoil_pd):
    t3 = torus_2n_pd(3)
    assert associates(alexander_poly(wirtinger(t3).peripheral),
                      alexander_poly(wirtinger(trefoil_pd).peripheral))
    assert len(torus_2n_pd(9).crossings) == 9


@pytest.mark.parametrize("pd_text", [TREFOIL_PD, FIGURE_EIGHT_PD])
def test_wirtinger_structure(pd_text):
    W = wirtinger(parse_pd(pd_text))
    p = W.presentation
    assert p.ngens == len(W.pd.crossings) == len(p.relators)
    assert abelianization(p).is_infinite_cyclic()
    # the longitude is null-homologous and commutes with the meridian
    m, l = W.meridians[0], W.longitudes[0]
    assert sum(l.exponent_sums(p.ngens)) == 0
    comm = m * l * m.inverse() * l.inverse()
    assert word_is_trivial(p, comm).is_proved


@pytest.mark.parametrize("pd_text", [TREFOIL_PD, FIGURE_EIGHT_PD])
def test_jacobian_rows_sum_to_zero(pd_text):
    J = fox_jacobian(wirtinger(parse_pd(pd_text)).peripheral)
    for row in J.rows:
        total = row[0]
        for x in row[1:]:
            total = total + x
        assert total.is_zero()


def test_connected_sum_diagram(trefoil_pd, figure_eight_pd):
    s = pd_connected_sum(trefoil_pd, figure_eight_pd)
    assert len(s.crossings) == 7 and len(s.components) == 1
    d = alexander_poly(wirtinger(s).peripheral)
    assert associates(d, parse_laurent("t^2-t+1") * parse_laurent("t^2-3t+1"))


def test_link_fixtures_linking_numbers():
    links = load_links()
    assert abs(linking_number(links["hopf"]["pd"], 0, 1)) == 1
    assert linking_number(links["whitehead"]["pd"], 0, 1) == 0
    fx = links["k_union_C"]
    assert linking_number(fx["pd"], fx["knot"], fx["curve"]) == 0
    with pytest.raises(PDError):
        linking_number(links["hopf"]["pd"], 0, 0)


def test_link_wirtinger_has_peripheral_pair_per_component():
    W = wirtinger(load_links()["whitehead"]["pd"])
    assert W.peripheral.components == 2
    ab = abelianization(W.presentation)
    assert ab.free_rank == 2 and not ab.torsion
