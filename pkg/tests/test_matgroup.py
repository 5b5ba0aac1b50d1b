import json
from collections import Counter

import pytest

from terwcodes.exactnum import CycNum
from terwcodes import published as pub
from terwcodes.matgroup import (GeneratorFileError, GroupCapExceeded,
                                SingularGenerator, builtin_group, generate_group, mat, mat_mul,
                                parse_generators)

ORDERS = {"I": 16, "II": 192, "III": 48, "IV": 12}
CLASS_COUNTS = {"I": 7, "II": 32, "III": 14, "IV": 6}


@pytest.mark.parametrize("name", ORDERS)
def test_order_and_classes(name):
    g = builtin_group(name)
    assert g.order == ORDERS[name]
    assert len(g.classes()) == CLASS_COUNTS[name]
    assert Counter(g.classes().sizes) == Counter(pub.CLASS_SIZES[name])


@pytest.mark.parametrize("name", ORDERS)
def test_contains_minus_identity(name):
    g = builtin_group(name)
    assert any(x == mat(-1, 0, 0, -1) for x in g.elements)


@pytest.mark.parametrize("name", ["I", "III", "IV"])
def test_closed_and_table_consistent(name):
    g = builtin_group(name)
    for i, x in enumerate(g.elements):
        for j, y in enumerate(g.elements):
            assert g.lookup(mat_mul(x, y)) == g.mul(i, j)
        assert g.mul(i, g.inv(i)) == 0


@pytest.mark.parametrize("name", ["I", "IV", "III"])
def test_classes_are_conjugacy_classes(name):
    g = builtin_group(name)
    n = g.order
    # brute force: conjugate by every element
    for cls in g.classes().classes:
        x = cls[0]
        orbit = {g.mul(g.mul(s, x), g.inv(s)) for s in range(n)}
        assert orbit == set(cls)
        assert n % len(cls) == 0
    assert g.classes().classes[0] == (0,)


def test_identity_only_group(trivial_group):
    assert trivial_group.order == 1
    assert len(trivial_group.classes()) == 1


def test_cap_and_singular():
    with pytest.raises(GroupCapExceeded):
        generate_group([mat(2, 0, 0, 1)], cap=50)
    with pytest.raises(SingularGenerator):
        generate_group([mat(1, 1, 1, 1)])


def test_parse_generators():
    text = json.dumps([[["0", "1"], ["1", "0"]], [["-1", 0], [0, "-1"]]])
    gens = parse_generators(text)
    assert generate_group(gens).order == 4
    assert parse_generators('[[["z^6", "0"], ["0", "1"]]]')[0][0] == CycNum.from_text("z^6")


@pytest.mark.parametrize("text, line", [
    ('[[["1", "0"],\n ["0", "1"]],\n [["1", "0"],\n ["0", "q"]]]', 4),
    ('[\n[["1", "0"], ["0", "1"]\n', 3),
    ('{"a": 1}', 1),
    ('[\n [["1", "0", "2"], ["0", "1"]]\n]', 2),
])
def test_generator_file_errors(text, line):
    with pytest.raises(GeneratorFileError) as err:
        parse_generators(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)
