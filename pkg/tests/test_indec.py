import random

import numpy as np
import pytest

import oracles
from wakatilt import fixtures
from wakatilt import homological as hx
from wakatilt import linalg as la
from wakatilt.errors import BandFound, DecompositionFailure, DuplicateIsoClass, InvalidInput, UnsupportedAlgebra
from wakatilt.indec import (
    decompose,
    enumerate_indecomposables,
    is_isomorphic,
    string_walks,
)
from wakatilt.rep import direct_sum, injective, interval, projective, rep_to_json, rep_from_json, simple, zero_module

ALGEBRAS = ["A1", "A2", "A3", "A4", "A5", "K2"]


@pytest.mark.parametrize("name,count", [("A1", 15), ("A2", 17), ("A3", 34), ("A4", 14), ("K2", 4), ("A5", 13)])
def test_counts(reg, name, count):
    r = reg(name)
    assert len(r) == count and r.complete
    if r.algebra.kupisch is not None:
        assert count == sum(r.algebra.kupisch.c)


def test_a5_count_matches_separated_quiver():
    # rad^2 = 0: indecomposables = (indecomposables of the separated quiver) - (vertices)
    # the separated quiver of A5 is 1'-2, 2'-1, 2'-3, 3'-4, 4'-5, 5'-4: two copies of A2/A3/A3 type
    # components {1',2}, {2',1,3}, {3',4,5'}, {4',5}: counts 3 + 6 + 6 + 3
    assert 3 + 6 + 6 + 3 - 5 == 13


def test_a5_contains_figure_modules(reg):
    r = reg("A5")
    a = r.algebra
    dims = {m.dims for m in r.modules}
    # 2 over 1 and 3, 3 over 4, 5 over 4, and the two projective-injectives
    for d in [(1, 1, 1, 0, 0), (0, 0, 1, 1, 0), (0, 0, 0, 1, 1), projective(a, 1).dims, projective(a, 4).dims]:
        assert d in dims
    assert r.labels[r.lookup("P2")] == "1<-b-2-c->3"


def test_registry_pairwise_nonisomorphic(reg):
    for name in ("A1", "A5", "K2"):
        r = reg(name)
        for j, x in enumerate(r.modules):
            for y in r.modules[j + 1:]:
                assert not is_isomorphic(x, y)


@pytest.mark.parametrize("name", ALGEBRAS)
def test_hom_table_matches_recomputation(reg, name):
    r = reg(name)
    for j in range(0, len(r), 2):
        for k in range(len(r)):
            assert r.hom[j, k] == hx.hom_dim(r.modules[j], r.modules[k])


def test_decompose_examples(reg):
    r = reg("A1")
    a = r.algebra
    got = decompose(direct_sum([projective(a, 1), simple(a, 2)]), r)
    assert got == {r.lookup("P1"): 1, r.lookup("M(2,1)"): 1}
    assert r.lookup("P1") == r.lookup("M(1,3)")
    assert not decompose(zero_module(a), r)
    assert decompose(hx.syzygy(interval(a, 1, 2)), r) == {r.lookup("M(3,1)"): 1}


def _roundtrip(r, rng):
    k = rng.randint(1, 4)
    ids = [rng.randrange(len(r)) for _ in range(k)]
    m = direct_sum([r.modules[i] for i in ids], r.algebra)
    want = {}
    for i in ids:
        want[i] = want.get(i, 0) + 1
    return decompose(m, r) == want


@pytest.mark.parametrize("name", ALGEBRAS)
def test_decompose_roundtrip(reg, name):
    r = reg(name)
    rng = random.Random(name)
    assert all(_roundtrip(r, rng) for _ in range(100))


def test_decompose_incomplete_registry_fails():
    a = fixtures.load("A1")
    r = enumerate_indecomposables(a, "file", [simple(a, v) for v in range(1, 5)])
    assert not r.complete
    assert r.decompose(direct_sum([simple(a, 2), simple(a, 2)])) == {1: 2}
    with pytest.raises(DecompositionFailure):
        r.decompose(projective(a, 1))
    # the Cartan matrix of A1 is singular, so its projectives alone are rejected
    with pytest.raises(DecompositionFailure):
        enumerate_indecomposables(a, "file", [projective(a, v) for v in range(1, 5)])


def test_decompose_projective_cover_sums(reg):
    r = reg("A2")
    for m in r.modules:
        cover, _ = hx.projective_cover(m)
        assert set(r.decompose(cover)) <= set(r.projective_ids)


def test_is_isomorphic_examples():
    a = fixtures.load("A1")
    m = direct_sum([interval(a, 2, 2), simple(a, 3)])
    assert is_isomorphic(m, m)
    assert not is_isomorphic(simple(a, 1), simple(a, 2))
    assert is_isomorphic(projective(a, 1), interval(a, 1, 3))
    # same dimension vector, different modules
    assert not is_isomorphic(direct_sum([simple(a, 1), simple(a, 2)]), interval(a, 1, 2))
    # a base-changed copy with a large Hom space
    big = direct_sum([simple(a, 1)] * 3 + [interval(a, 1, 2)])
    assert is_isomorphic(big, direct_sum([interval(a, 1, 2)] + [simple(a, 1)] * 3))
    b = fixtures.load("A2")
    with pytest.raises(InvalidInput):
        is_isomorphic(simple(a, 1), simple(b, 1))


def test_is_isomorphic_random_base_change():
    a = fixtures.load("A2")
    m = direct_sum([interval(a, 1, 3), interval(a, 2, 2), simple(a, 3)])
    rng = np.random.default_rng(7)
    mats, gs = [], []
    for d in m.dims:
        while True:
            g = rng.integers(0, m.p, size=(d, d))
            if la.rank(g, m.p) == d:
                break
        gs.append(g)
    for k, arr in enumerate(a.arrows):
        s, t = arr.source - 1, arr.target - 1
        ginv = la.inverse(gs[s], m.p)
        mats.append(la.matmul(la.matmul(gs[t], m.mats[k], m.p), ginv, m.p))
    n = type(m)(a, m.dims, tuple(mats), "")
    assert is_isomorphic(m, n)


def test_nakayama_registry_names(reg):
    r = reg("A1")
    assert r.format([r.lookup("M(1,2)"), r.lookup("P2")]) == ["M(1,2)", "P2"]
    assert r.labels[r.lookup("M(3,2)")] == "3\\4"
    with pytest.raises(InvalidInput):
        r.lookup("nope")


def test_string_strategy_on_nakayama_agrees(reg):
    a = fixtures.load("A1")
    s = enumerate_indecomposables(a, "string")
    n = reg("A1")
    assert len(s) == len(n)
    assert sorted(m.dims for m in s.modules) == sorted(m.dims for m in n.modules)


def test_a7_band():
    a = fixtures.load("A7")
    with pytest.raises(BandFound):
        string_walks(a)
    with pytest.raises(UnsupportedAlgebra):
        enumerate_indecomposables(a)


def test_nakayama_strategy_needs_kupisch():
    with pytest.raises(UnsupportedAlgebra):
        enumerate_indecomposables(fixtures.load("A5"), "nakayama")
    with pytest.raises(InvalidInput):
        enumerate_indecomposables(fixtures.load("A5"), "bogus")
    with pytest.raises(InvalidInput):
        enumerate_indecomposables(fixtures.load("A5"), "file")


def test_file_registry_roundtrip(reg):
    r = reg("K2")
    a = r.algebra
    data = [rep_to_json(m) for m in r.modules]
    mods = [rep_from_json(d, a, f"X{k}") for k, d in enumerate(data)]
    f = enumerate_indecomposables(a, "file", mods, complete=True)
    assert f.names == ["X0", "X1", "X2", "X3"]
    assert np.array_equal(f.hom, r.hom)
    assert f.decompose(direct_sum([simple(a, 1), projective(a, 2)])) == {
        r.lookup("M(1,1)"): 1,
        r.lookup("P2"): 1,
    }


def test_file_registry_duplicates():
    a = fixtures.load("A1")
    with pytest.raises(DuplicateIsoClass):
        enumerate_indecomposables(a, "file", [simple(a, 1), projective(a, 2), simple(a, 1)])


def test_dual_registry(reg):
    r = reg("A1")
    d = r.dual()
    assert d.names[0] == "D" + r.names[0]
    assert d.algebra.n == r.algebra.n
    assert set(d.projective_ids) == set(r.injective_ids)
    assert sorted(m.dims for m in d.modules) == sorted(m.dims for m in r.modules)


def test_projective_and_injective_ids(reg):
    r = reg("A1")
    a = r.algebra
    assert [r.modules[k].dims for k in r.projective_ids] == [projective(a, v).dims for v in range(1, 5)]
    assert [r.modules[k].dims for k in r.injective_ids] == [injective(a, v).dims for v in range(1, 5)]


@pytest.mark.parametrize("name", ["A1", "A2", "A4"])
def test_vanish_matches_oracle(reg, name):
    r = reg(name)
    c = list(r.algebra.kupisch.c)
    ivs = oracles.intervals(c)
    for j, x in enumerate(ivs):
        for k, y in enumerate(ivs):
            assert bool(r.vanish[j, k]) == oracles.vanish(c, x, y)
