import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from terwcodes.codes import (CodeInputError, CodeTooLarge, FiniteFieldElem, LinearCode,
                             check_enumerator_invariance, classify_type, dual_code, fixture,
                             is_self_dual, parse_code, weight_enumerator)
from terwcodes.invariants import BivarPoly, act_on
from terwcodes.matgroup import builtin_group

P = BivarPoly.parse


def elems(q):
    return [FiniteFieldElem(q, v) for v in range(q)]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_field_axioms(q):
    F = elems(q)
    zero, one = F[0], F[1]
    for a, b, c in itertools.product(F, repeat=3):
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in F:
        assert a + zero == a and a * one == a and a - a == zero
        if a != zero:
            assert a * a.inverse() == one


def test_f4_conjugation():
    w = FiniteFieldElem.from_pair(0, 1)
    assert w * w == w + 1
    assert w.conjugate() == w * w
    for a in elems(4):
        assert a.conjugate().conjugate() == a
        for b in elems(4):
            assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@pytest.mark.parametrize("name, enum, ctype", [
    ("rep2", "x^2 + y^2", "I"),
    ("hamming8", "x^8 + 14*x^4*y^4 + y^8", "II"),
    ("tetracode", "x^4 + 8*x*y^3", "III"),
])
def test_fixture_types(name, enum, ctype):
    c = fixture(name)
    assert weight_enumerator(c) == P(enum)
    assert classify_type(c) == ctype
    assert dual_code(c) == c


def test_hexacode_is_hermitian_only():
    c = fixture("hexacode")
    assert weight_enumerator(c) == P("x^6 + 45*x^2*y^4 + 18*y^6")
    assert not is_self_dual(c) and classify_type(c) == "none"
    assert is_self_dual(c, hermitian=True) and classify_type(c, hermitian=True) == "IV"
    assert dual_code(c, hermitian=True) == c


def test_f4_repetition_both_forms():
    c = fixture("rep2f4")
    assert classify_type(c) == classify_type(c, hermitian=True) == "IV"
    assert weight_enumerator(c) == P("x^2 + 3*y^2")


def test_codewords_by_brute_force():
    c = fixture("tetracode")
    span = {tuple((a * r0 + b * r1) % 3 for r0, r1 in zip(*c.generator)) for a in range(3) for b in range(3)}
    assert set(c.codewords()) == span and len(span) == c.size() == 9


def test_duals():
    full = LinearCode.from_rows(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert dual_code(full).k == 0
    c = fixture("hamming8")
    assert dual_code(dual_code(c)) == c
    assert c.size() * dual_code(c).size() == 2 ** 8


def test_not_self_dual():
    c = LinearCode.from_rows(2, [[1, 1, 0, 0]])
    assert classify_type(c) == "none"
    with pytest.raises(ValueError):
        check_enumerator_invariance(c)


@pytest.mark.parametrize("name, order", [("rep2", 16), ("hamming8", 192), ("tetracode", 48), ("hexacode", 12)])
def test_invariance(name, order):
    rep = check_enumerator_invariance(fixture(name))
    assert rep["passed"] and rep["elementsChecked"] == order and all(rep["perElement"])


def test_degree_obstruction():
    rep = check_enumerator_invariance(fixture("rep2"), code_type="II")
    assert not rep["passed"] and rep["failing"]


@pytest.mark.parametrize("name, gname", [("rep2", "I"), ("hamming8", "II"), ("tetracode", "III"), ("hexacode", "IV")])
def test_first_generator_fixes_enumerator(name, gname):
    w = weight_enumerator(fixture(name))
    assert act_on(w, builtin_group(gname).generators[0]) == w


def test_guard():
    rows = [[int(i == j) for j in range(25)] for i in range(25)]
    with pytest.raises(CodeTooLarge):
        weight_enumerator(LinearCode.from_rows(2, rows))


def test_parse_code():
    c = parse_code(json.dumps({"q": 4, "rows": [[[1, 0], [1, 0]]]}))
    assert c == fixture("rep2f4")
    assert parse_code("[[1, 2, 2, 0]]", q=3).generator == ((1, 2, 2, 0),)
    with pytest.raises(CodeInputError):
        parse_code("[[1, 2]]")
    with pytest.raises(CodeInputError):
        parse_code('{"q": 4, "rows": [[[1, 2]]]}')
    with pytest.raises(CodeInputError):
        parse_code('{"q": 5, "rows": [[1]]}')


rows = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=1, max_size=4))


@settings(max_examples=40)
@given(rows)
def test_enumerator_properties(r):
    c = LinearCode.from_rows(3, r)
    w = weight_enumerator(c)
    assert w.homogeneous_degree() == c.n
    assert w.evaluate(1, 1) == 3 ** c.k and w.evaluate(1, 0) == 1
    assert c.size() * dual_code(c).size() == 3 ** c.n
    assert dual_code(dual_code(c)) == c
