from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from terwcodes.exactnum import named_constants, to_complex_approx
from terwcodes.invariants import (BivarPoly, act_on, e_polynomial, expand_product_series,
                                  express_in_generators, is_invariant, jacobian, molien_series,
                                  reynolds_dimension, verify_generation)
from terwcodes.matgroup import builtin_group, mat, mat_mul

P = BivarPoly.parse
NAMES = ["I", "II", "III", "IV"]
DEGREES = {"I": (2, 8), "II": (8, 24), "III": (4, 12), "IV": (2, 6)}


def test_parse_and_text():
    p = P("(x + y)^2 - 2*x*y")
    assert p == P("x^2 + y^2")
    assert p.homogeneous_degree() == 2
    assert P("x^2 + y").homogeneous_degree() is None
    assert P("1/2*x^3").to_text() == "1/2 * x^3"


def test_act_examples():
    assert act_on(P("x^2 + y^2"), mat(1, 0, 0, 1)) == P("x^2 + y^2")
    assert act_on(P("x"), mat(1, 0, 0, -1)) == P("x")
    assert act_on(P("x*y^2"), mat(0, 1, 1, 0)) == P("y*x^2")
    assert is_invariant(P("x^2 + y^2"), builtin_group("I").elements)


def test_action_matches_sympy_substitution():
    s2 = named_constants()["sqrt2"]
    sigma = mat(1 / s2, 1 / s2, 1 / s2, -1 / s2)
    x, y = sp.symbols("x y")
    f = x ** 3 + 5 * x * y ** 2
    expected = sp.Poly(sp.expand(f.subs({x: (x + y) / sp.sqrt(2), y: (x - y) / sp.sqrt(2)},
                                        simultaneous=True)), x, y)
    got = act_on(P("x^3 + 5*x*y^2"), sigma)
    assert len(expected.terms()) == len(got.terms)
    for (a, b), c in expected.terms():
        assert abs(complex(to_complex_approx(got.coeff(a, b))) - complex(c)) < 1e-12


@settings(max_examples=25)
@given(st.sampled_from(range(48)), st.sampled_from(range(48)))
def test_composition_law(i, j):
    g = builtin_group("III")
    s, t = g.elements[i], g.elements[j]
    p = P("x^3 + 2*x*y^2 - 7*y^3")
    assert act_on(act_on(p, s), t) == act_on(p, mat_mul(s, t))


def test_e_polynomial_examples():
    g1, g3 = builtin_group("I"), builtin_group("III")
    assert e_polynomial(g1, 2) == P("(x^2 + y^2)/2")
    assert e_polynomial(g3, 4) == P("(x^4 + 8*x*y^3)/3")
    assert e_polynomial(g1, 0) == 1
    assert not e_polynomial(g1, 1)


def test_phi_forms_for_ii_and_iii():
    assert e_polynomial(builtin_group("II"), 8) == P("(5*x^8 + 70*x^4*y^4 + 5*y^8)/24")
    phi12 = e_polynomial(builtin_group("III"), 12)
    assert phi12 == P("(61*x^12 + 440*x^9*y^3 + 14784*x^6*y^6 + 28160*x^3*y^9 + 1024*y^12)/243")


def test_molien_examples(trivial_group):
    assert molien_series(builtin_group("I"), 9).as_ints() == [1, 0, 1, 0, 1, 0, 1, 0, 2]
    assert molien_series(trivial_group, 6).as_ints() == [1, 2, 3, 4, 5, 6]
    assert expand_product_series(2, 6, 13).as_ints() == [1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3]
    assert expand_product_series(1, 1, 4).as_ints() == [1, 2, 3, 4]


@pytest.mark.parametrize("name", NAMES)
def test_molien_matches_product_formula(name):
    a, b = DEGREES[name]
    assert molien_series(builtin_group(name), 40) == expand_product_series(a, b, 40)


@pytest.mark.parametrize("name", ["I", "IV", "III"])
def test_reynolds_matches_molien(name):
    g = builtin_group(name)
    assert [reynolds_dimension(g, k) for k in range(13)] == molien_series(g, 13).as_ints()


def test_express():
    g3 = builtin_group("III")
    phi4, phi12 = e_polynomial(g3, 4), e_polynomial(g3, 12)
    expr = express_in_generators(P("y^3*(x^3 - y^3)^3"), phi4, phi12)
    assert expr == {(3, 0): Fraction(1647, 1024), (0, 1): Fraction(-243, 1024)}
    g1 = builtin_group("I")
    phi2, phi8 = e_polynomial(g1, 2), e_polynomial(g1, 8)
    assert express_in_generators(P("x^2 + y^2"), phi2, phi8) == {(1, 0): 2}
    assert express_in_generators(P("y"), phi2, phi8) is None
    assert express_in_generators(P("x*y"), phi2, phi8) is None


def test_jacobian():
    assert jacobian(P("x"), P("y")) == 1
    assert not jacobian(P("x^2 + y^2"), P("(x^2 + y^2)^2"))


@pytest.mark.parametrize("name", NAMES)
def test_generation_certificates(name):
    g = builtin_group(name)
    a, b = DEGREES[name]
    cert = verify_generation(g, e_polynomial(g, a), e_polynomial(g, b))
    assert cert["passed"] and cert["degreeProduct"]["value"] == g.order


def test_wrong_pair_fails():
    g = builtin_group("I")
    cert = verify_generation(g, e_polynomial(g, 2), e_polynomial(g, 4))
    assert not cert["passed"]
    assert not cert["jacobianNonzero"]


def test_non_invariant_rejected():
    with pytest.raises(ValueError):
        verify_generation(builtin_group("I"), P("x"), P("y"))
