import json

import pytest

from wakatilt import fixtures
from wakatilt.algebra import (
    Arrow,
    KupischSeries,
    Quiver,
    algebra_from_json,
    build_monomial_algebra,
    check_string_algebra,
    nakayama,
    opposite,
)
from wakatilt.errors import InfiniteDimensional, InvalidInput, InvalidKupisch, NonComposableRelation


def a2_quiver():
    return Quiver.from_triples(2, [("a", 1, 2)])


def test_path_algebra_of_a2():
    a = build_monomial_algebra(a2_quiver(), [])
    assert a.dimension == 3
    assert a.paths[(1, 1)] == [()] and a.paths[(1, 2)] == [("a",)] and a.paths[(2, 1)] == []


def test_a7_basis():
    a = fixtures.load("A7")
    assert a.dimension == 9
    basis = {w for ws in a.paths.values() for w in ws}
    assert basis == {(), ("a",), ("b",), ("c",), ("d",), ("a", "c"), ("b", "d")}
    assert sum(len(ws) for (i, j), ws in a.paths.items() if i == j) == 3


def test_loop_without_relations_is_infinite():
    q = Quiver.from_triples(1, [("x", 1, 1)])
    with pytest.raises(InfiniteDimensional):
        build_monomial_algebra(q, [], dim_cap=100)


def test_non_composable_relation():
    with pytest.raises(NonComposableRelation):
        build_monomial_algebra(Quiver.from_triples(3, [("a", 1, 2), ("b", 3, 1)]), [("a", "b")])


def test_quiver_validation():
    with pytest.raises(InvalidInput):
        Quiver.from_triples(2, [("a", 1, 2), ("a", 2, 1)])
    with pytest.raises(InvalidInput):
        Quiver.from_triples(2, [("a", 1, 3)])


@pytest.mark.parametrize("c", [[3, 4, 4, 4], [5, 6, 6], [5, 6, 5, 6, 6, 6], [3, 4, 3, 4], [2, 2], [3, 2, 1], [2, 1]])
def test_nakayama_dimensions(c):
    a = nakayama(c)
    assert a.dimension == sum(c)
    for i in range(1, a.n + 1):
        assert sum(len(ws) for ws in a.paths_from(i).values()) == c[i - 1]


def test_nakayama_presentations():
    assert {"".join(r) for r in nakayama([3, 4, 4, 4]).relations} == {"abc", "bcda", "cdab"}
    assert {"".join(r) for r in nakayama([5, 6, 6]).relations} == {"abcab", "bcabca"}
    assert {"".join(r) for r in nakayama([3, 4, 3, 4]).relations} == {"abc", "cda"}
    assert {"".join(r) for r in nakayama([5, 6, 5, 6, 6, 6]).relations} == {"abcde", "cdefa", "defabc", "efabcd"}


@pytest.mark.parametrize(
    "c,shape",
    [([3, 1, 4, 4], None), ([1, 2], "cyclic"), ([2, 2, 2], "linear"), ([4, 2, 1], None), ([], None), ([3, 1, 1], None)],
)
def test_invalid_kupisch(c, shape):
    with pytest.raises(InvalidKupisch):
        KupischSeries.parse(c, shape)


def test_kupisch_shape_default():
    assert KupischSeries.parse([2, 2, 1]).shape == "linear"
    assert KupischSeries.parse([2, 2]).shape == "cyclic"


def test_opposite_involution():
    for name in ("A1", "A5", "A7"):
        a = fixtures.load(name)
        op = opposite(a)
        assert op.dimension == a.dimension
        assert op.opposite() is a
        assert op.opposite().structurally_equal(a)
    q = opposite(build_monomial_algebra(a2_quiver(), []))
    assert q.arrows == (Arrow("a", 2, 1),)
    a7 = fixtures.load("A7").opposite()
    assert {"".join(r) for r in a7.relations} == {"ba", "dc", "ad"}


def test_string_algebra_check():
    assert check_string_algebra(fixtures.load("A5"))[0]
    assert check_string_algebra(fixtures.load("A1"))[0]
    assert check_string_algebra(fixtures.load("A6"))[0]
    # ac and bd survive, ab and cd vanish: the Kronecker pair at 2 -> 3 is allowed
    assert check_string_algebra(fixtures.load("A7"))[0]
    q = Quiver.from_triples(4, [("a", 1, 2), ("b", 2, 3), ("c", 2, 4)])
    ok, why = check_string_algebra(build_monomial_algebra(q, []))
    assert not ok and any("arrow a" in w for w in why)


def test_json_roundtrip():
    a = fixtures.load("A5")
    b = algebra_from_json(json.loads(json.dumps(a.to_json())))
    assert a.structurally_equal(b)
    k = algebra_from_json({"kupisch": [3, 4, 4, 4]})
    assert k.kupisch.c == (3, 4, 4, 4)
    with pytest.raises(InvalidInput):
        algebra_from_json({"arrows": []})


def test_a6_readings():
    assert fixtures.load("A6").dimension == 13
    with pytest.raises(NonComposableRelation):
        fixtures.load("A6-e41-ec")
    assert fixtures.load("A6-e41-eb").dimension == 15
