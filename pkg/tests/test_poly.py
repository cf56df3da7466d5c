from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from macinv.poly import (
    DualPoly,
    Jet,
    contract,
    monomial_basis,
    monomials_of_degree,
    pairing,
)
from conftest import P


def test_contraction_examples():
    assert contract(P("x1"), P("y1^3")) == P("3*y1^2")
    assert contract(P("x1*x2"), P("y1^2*y2^2")) == P("4*y1*y2")
    assert contract(P("x1^3 - x2^3"), P("y1^3 - y2^3")) == DualPoly.constant(2, 12)


def test_contraction_rejects_mismatch():
    with pytest.raises(TypeError):
        contract(P("y1"), P("y1"))
    with pytest.raises(ValueError):
        contract(P("x1"), P("y1*y2"))


def test_monomial_basis_counts_and_order():
    assert len(monomial_basis(3, 3)) == 20
    assert monomials_of_degree(2, 2) == ((2, 0), (1, 1), (0, 2))
    for m in range(1, 4):
        for s in range(5):
            assert len(monomial_basis(m, s)) == comb(m + s, s)


def _sympy_contract(f, g):
    ys = sympy.symbols(f"y1:{g.nvars + 1}")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([y ** k for y, k in zip(ys, e)])
               for e, c in g.terms.items())
    total = 0
    for a, c in f.terms.items():
        d = expr
        for y, k in zip(ys, a):
            if k:
                d = sympy.diff(d, y, k)
        total += sympy.Rational(c.numerator, c.denominator) * d
    poly = sympy.Poly(sympy.expand(total), *ys)
    return {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in poly.terms() if c}


def _terms(m, maxdeg):
    return st.dictionaries(
        st.tuples(*[st.integers(0, maxdeg)] * m).filter(lambda e: sum(e) <= maxdeg),
        st.integers(-6, 6),
        max_size=6,
    )


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_contraction_matches_sympy_differentiation(data):
    m = data.draw(st.integers(1, 3))
    f = Jet(m, data.draw(_terms(m, 3)))
    g = DualPoly(m, data.draw(_terms(m, 4)))
    got = dict(contract(f, g).terms)
    assert got == _sympy_contract(f, g)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_composition_law(data):
    m = data.draw(st.integers(1, 3))
    f = Jet(m, data.draw(_terms(m, 2)))
    h = Jet(m, data.draw(_terms(m, 2)))
    g = DualPoly(m, data.draw(_terms(m, 4)))
    assert contract(f * h, g) == contract(f, contract(h, g))


def test_dual_basis_gram_matrix_is_identity():
    m, s = 2, 3
    basis = monomial_basis(m, s)
    for a in basis:
        for b in basis:
            dual_b = DualPoly.from_dual_coefficients(m, {b: 1})
            assert pairing(Jet.monomial(a), dual_b) == (1 if a == b else 0)


def test_truncation_criterion():
    g = P("y1^2*y2 + y2^3 - 4*y1")
    for e in monomials_of_degree(2, 4):
        assert contract(Jet.monomial(e), g).is_zero()
    g4 = g + P("y1^4", 2)
    assert any(not contract(Jet.monomial(e), g4).is_zero() for e in monomials_of_degree(2, 4))


def test_dual_coordinates_round_trip():
    g = P("y1^3 - 1/2*y1*y2 + 7")
    assert DualPoly.from_dual_vector(2, 3, g.dual_vector(3)) == g
    assert g.dual_coefficients()[(3, 0)] == 6


def test_linear_substitution():
    g = P("y1^2*y2")
    assert g.linear_substitution([[1, 1], [0, 1]]) == P("(y1 + y2)^2*y2")


def test_jet_truncation_and_compose():
    z = Jet(1, {(1,): 1, (2,): Fraction(1, 6)}, bound=3)
    x2 = Jet.monomial((2,)).compose([z], bound=3)
    assert x2 == Jet(1, {(2,): 1, (3,): Fraction(1, 3)}, bound=3)
    assert (P("x1^2") * P("x1^2")).with_bound(3).is_zero()


def test_text_round_trip():
    g = P("y1^3 - 1/2*y1*y2^2 + 3*y2 - 7")
    assert P(g.to_text(), 2) == g
    assert P("0", 1).to_text() == "0"
