import random

import mpmath
import pytest

from knotposet.algebra.bivar import BivarPoly, bivar_divide, bivar_normalize
from knotposet.apoly import (APolyError, NoAPolyData, apoly_for_torus, load_table,
                             obstruction_check, obstruction_product, torus_apoly)
from knotposet.fpgroup.torus import torus_group
from knotposet.verdict import replay

mpmath.mp.dps = 120


def _rep_eigenvalues(q: int, k: int, rng: random.Random):
    """Meridian/longitude eigenvalues of an irreducible SL(2,C) rep of <u,v | u^2 = v^q>.

    u is sent to an element of order 4 (u^2 = -I, central), v to a conjugate of
    diag(z, 1/z) with z^q = -1, in general position. The words for the
    meridian and longitude come from the torus group itself.
    """
    G = torus_group(2, q)
    U = mpmath.matrix([[1j, 0], [0, -1j]])
    z = mpmath.expj(mpmath.pi * k / q)
    P = mpmath.matrix([[1, rng.uniform(0.3, 2)], [rng.uniform(0.3, 2), 1 + rng.uniform(0.3, 2)]])
    V = P * mpmath.matrix([[z, 0], [0, 1 / z]]) * mpmath.inverse(P)
    imgs = {1: U, -1: mpmath.inverse(U), 2: V, -2: mpmath.inverse(V)}

    def ev(w):
        M = mpmath.eye(2)
        for x in w.letters:
            M = M * imgs[x]
        return M

    m, l = ev(G.meridian), ev(G.longitude)
    assert mpmath.norm(m * l - l * m) < 1e-25 * mpmath.norm(m) * mpmath.norm(l)
    Ms, vecs = mpmath.eig(m)
    vec = vecs[:, 0]
    Lv = l * vec
    i = 0 if abs(vec[0]) > abs(vec[1]) else 1
    return Ms[0], Lv[i] / vec[i]


def _relative_value(A: BivarPoly, M, L):
    terms = [c * M ** i * L ** j for (i, j), c in A.terms.items()]
    return abs(sum(terms)) / max(abs(t) for t in terms)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_table_vanishes_on_sl2_representations(q):
    rng = random.Random(q)
    A = apoly_for_torus((2, q)).A
    for k in range(1, q, 2):
        M, L = _rep_eigenvalues(q, k, rng)
        assert _relative_value(A, M, L) < 1e-25
        assert _relative_value(torus_apoly(q + 2).A, M, L) > 1e-6   # the oracle discriminates
        assert abs(M * M - 1) > 1e-6          # non-abelian rep, not on the L = 1 component


def test_table_entries():
    table = load_table()
    assert sorted(table) == [(2, 3), (2, 5), (2, 7), (2, 9)]
    assert table[(2, 3)].A == BivarPoly.parse("1+M^6*L")
    assert torus_apoly(11).A == bivar_normalize(BivarPoly.parse("1+M^22*L"))
    with pytest.raises(APolyError):
        torus_apoly(4)
    with pytest.raises(NoAPolyData):
        apoly_for_torus(None)
    with pytest.raises(NoAPolyData):
        apoly_for_torus((3, 4))


def test_obstruction_on_9_1_and_3_1():
    A1, A2 = apoly_for_torus((2, 9)), apoly_for_torus((2, 3))
    v = obstruction_check(A1, A2, (1, 0, 0, 3))
    assert v.is_unknown
    quotient = BivarPoly.parse(v.evidence["quotient"])
    assert quotient == bivar_normalize(BivarPoly.parse("1-M^6*L+M^12*L^2"))
    assert bivar_normalize(quotient * A2.A) == BivarPoly.parse(v.evidence["substituted"])
    for pattern in [(1, 0, 0, 1), (1, 0, 0, -1)]:
        r = obstruction_check(A1, A2, pattern)
        assert r.is_refuted and replay(r)
        assert bivar_divide(obstruction_product(A1.A, pattern), A2.A) is None


def test_tampered_evidence_fails_replay():
    r = obstruction_check(apoly_for_torus((2, 9)), apoly_for_torus((2, 3)), (1, 0, 0, 1))
    bad = dict(r.evidence, A2="1+M^18*L")
    from knotposet.verdict import replay_evidence
    assert not replay_evidence(bad)
