import pytest
import sympy

from knotposet.algebra.laurent import LaurentPoly
from knotposet.diagram import parse_pd

T = sympy.Symbol("t")

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT_PD = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"


def to_sympy(p: LaurentPoly):
    return sum(c * T ** e for e, c in p.coeffs.items()) if not p.is_zero() else sympy.Integer(0)


def from_sympy(expr) -> LaurentPoly:
    poly = sympy.Poly(sympy.expand(expr), T)
    return LaurentPoly({m[0]: int(c) for m, c in zip(poly.monoms(), poly.coeffs())})


@pytest.fixture(scope="session")
def trefoil_pd():
    return parse_pd(TREFOIL_PD)


@pytest.fixture(scope="session")
def figure_eight_pd():
    return parse_pd(FIGURE_EIGHT_PD)


@pytest.fixture(scope="session")
def catalog():
    from knotposet.poset import load_catalog
    return load_catalog()


@pytest.fixture(scope="session")
def report(catalog):
    from knotposet.poset import build_poset
    return build_poset(catalog)


# Reduced Burau representation of B_3, which is faithful; T(2,3) = <u, v | u^2 v^-3> embeds
# as u = s1 s2 s1, v = s1 s2. Entries are Laurent polynomials, compared after expansion.
_S1 = sympy.Matrix([[-T, 1], [0, 1]])
_S1I = sympy.Matrix([[-1 / T, 1 / T], [0, 1]])
_S2 = sympy.Matrix([[1, 0], [T, -T]])
_S2I = sympy.Matrix([[1, 0], [1, -1 / T]])
_BURAU = {1: _S1 * _S2 * _S1, -1: _S1I * _S2I * _S1I, 2: _S1 * _S2, -2: _S2I * _S1I}


def burau(w):
    """Independent word-problem oracle for the (2,3) torus knot group."""
    M = sympy.eye(2)
    for x in w.letters:
        M = (M * _BURAU[x]).applyfunc(sympy.expand)
    return M


# ------------------------------------------------------------------ acceptance summary lines

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
