import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sympy.matrices.normalforms import invariant_factors
from sympy.polys.subresultants_qq_zz import sylvester

from knotposet.algebra.bivar import (BivarPoly, bivar_divide, bivar_normalize,
                                     is_certified_irreducible, substitute)
from knotposet.algebra.laurent import (AlgebraError, LaurentPoly, ZeroPolynomialError,
                                       associates, cyclic_resultant, factor_integer_poly,
                                       is_irreducible, laurent_divides, laurent_gcd,
                                       laurent_normalize, parse_laurent, resultant)
from knotposet.algebra.snf import identity, in_row_lattice, integer_kernel, matmul, smith_normal_form

from conftest import T, from_sympy, to_sympy

coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=6).filter(lambda c: any(c))
polys = st.builds(lambda c, low: LaurentPoly.from_list(c, low), coeff_lists, st.integers(-3, 3))


# ------------------------------------------------------------------ Laurent polynomials

def test_parse_and_format_roundtrip():
    p = parse_laurent("t^2-3t+1")
    assert p.coeffs == {2: 1, 1: -3, 0: 1}
    assert str(p) == "t^2-3t+1"
    assert parse_laurent(str(p)) == p
    assert parse_laurent("t^-1 - 1 + t") == LaurentPoly({-1: 1, 0: -1, 1: 1})


def test_parse_rejects_garbage():
    with pytest.raises(AlgebraError):
        parse_laurent("t^^2")


@given(polys, polys)
def test_ring_operations_match_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0


@given(polys, polys)
def test_divisibility_of_products(p, q):
    ok, quot = laurent_divides(p, p * q)
    assert ok and associates(quot, q)


@settings(max_examples=50)
@given(polys, polys)
def test_gcd_agrees_with_sympy(p, q):
    ours = laurent_gcd(p, q)
    shift = lambda x: x.shift(-x.low())
    theirs = from_sympy(sympy.gcd(to_sympy(shift(p)), to_sympy(shift(q))))
    assert associates(ours, theirs)


def test_normalize_is_canonical_up_to_units():
    p = parse_laurent("-t^3+3t^2-t")
    n = laurent_normalize(p)
    assert n.low() == 0 and n.leading() > 0
    assert associates(p, n)
    assert n == parse_laurent("t^2-3t+1")


def test_factorization_agrees_with_sympy():
    p = from_sympy(sympy.cancel((T ** 9 + 1) / (T + 1)))   # Delta of 9_1
    fs = factor_integer_poly(p)
    assert [(str(f), e) for f, e in fs] == [("t^2-t+1", 1), ("t^6-t^3+1", 1)]
    sym = sympy.factor_list(to_sympy(p))[1]
    assert sorted(sympy.degree(f, T) for f, _ in sym) == [2, 6]


def test_irreducibility():
    assert is_irreducible(parse_laurent("t^2-3t+1"))
    assert is_irreducible(parse_laurent("t^2-t+1"))
    assert not is_irreducible(parse_laurent("t^4-2t^3+3t^2-2t+1"))
    with pytest.raises(ZeroPolynomialError):
        factor_integer_poly(LaurentPoly())


# ------------------------------------------------------------------ resultants

def sylvester_det(f, g) -> int:
    """Independent oracle: determinant of the Sylvester matrix."""
    return int(sylvester(f, g, T, 1).det())


def sylvester_resultant(f: LaurentPoly, q: int) -> int:
    return sylvester_det(to_sympy(laurent_normalize(f)), T ** q - 1)


def test_cyclic_resultant_value():
    assert cyclic_resultant(parse_laurent("t^2-3t+1"), 3) == -16


@pytest.mark.parametrize("q", range(1, 13))
def test_cyclic_resultant_matches_sylvester_oracle(q):
    f = parse_laurent("t^2-3t+1")
    assert cyclic_resultant(f, q) == sylvester_resultant(f, q)


@settings(max_examples=40)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5).filter(lambda c: c[0] and c[-1]),
       st.lists(st.integers(-4, 4), min_size=1, max_size=4).filter(lambda c: c[-1]))
def test_resultant_matches_sympy(fc, gc):
    f, g = LaurentPoly.from_list(fc), LaurentPoly.from_list(gc)
    assert resultant(f, g) == sylvester_det(to_sympy(f), to_sympy(g))


def test_resultant_rejects_bad_input():
    with pytest.raises(AlgebraError):
        cyclic_resultant(parse_laurent("t+1"), 0)
    with pytest.raises(ZeroPolynomialError):
        resultant(LaurentPoly(), parse_laurent("t"))


# ------------------------------------------------------------------ Smith normal form

def _random_unimodular(n, rng):
    U = identity(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return U


matrices = st.integers(1, 4).flatmap(lambda m: st.lists(
    st.lists(st.integers(-6, 6), min_size=m, max_size=m), min_size=1, max_size=4))


@given(matrices)
def test_snf_transforms_and_divisibility(A):
    sf = smith_normal_form(A, transforms=True)
    assert matmul(matmul(sf.U, A), sf.V) == sf.diagonal()
    assert all(d > 0 for d in sf.factors)
    assert all(b % a == 0 for a, b in zip(sf.factors, sf.factors[1:]))
    if any(any(r) for r in A):
        theirs = invariant_factors(sympy.Matrix(A))
        assert [abs(int(x)) for x in theirs if x != 0] == list(sf.factors)


def test_snf_stable_under_unimodular_perturbation():
    rng = random.Random(20240611)
    for _ in range(20):
        n, m = rng.randint(2, 4), rng.randint(2, 4)
        A = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)]
        B = matmul(matmul(_random_unimodular(n, rng), A), _random_unimodular(m, rng))
        assert smith_normal_form(A).factors == smith_normal_form(B).factors


def test_snf_examples_and_lattice():
    assert smith_normal_form([[2, 4], [6, 8]]).factors == (2, 4)
    assert smith_normal_form([], cols=3).rank == 0
    assert in_row_lattice([[2, 0], [0, 3]], [4, 3])
    assert not in_row_lattice([[2, 0], [0, 3]], [1, 0])
    K = integer_kernel([[1, -1, 0], [0, 1, -1]], 3)
    assert len(K) == 1 and abs(K[0][0]) == 1 and K[0][0] == K[0][1] == K[0][2]
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])


# ------------------------------------------------------------------ bivariate polynomials

def test_bivar_division_roundtrip():
    A = BivarPoly.parse("1+M^6*L")
    B = BivarPoly.parse("1-M^6*L+M^12*L^2")
    prod = A * B
    assert bivar_divide(prod, A) == bivar_normalize(B)
    assert bivar_divide(B, A) is None


def test_substitute_and_irreducibility():
    A = BivarPoly.parse("1+M^6*L")
    assert bivar_normalize(substitute(A, 1, 0, 0, 3)) == bivar_normalize(BivarPoly.parse("1+M^6*L^3"))
    assert is_certified_irreducible(A)
    assert not is_certified_irreducible(BivarPoly.parse("1+M^6*L^3"))
