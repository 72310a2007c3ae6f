import numpy as np
import pytest

from wakatilt import fixtures
from wakatilt import homological as hx
from wakatilt.errors import InvalidInput, LengthExceedsKupisch
from wakatilt.rep import (
    _make,
    direct_sum,
    dualize,
    injective,
    interval,
    projective,
    rep_from_json,
    rep_to_json,
    same_structure,
    simple,
    validate,
    zero_module,
)


@pytest.fixture
def a1():
    return fixtures.load("A1")


def test_projective_a1(a1):
    p1 = projective(a1, 1)
    assert p1.dims == (1, 1, 1, 0)
    assert hx.top_dims(p1) == (1, 0, 0, 0)
    assert same_structure(p1, interval(a1, 1, 3))


def test_simple(a1):
    s = simple(a1, 2)
    assert s.dims == (0, 1, 0, 0) and all(not m.any() for m in s.mats)


def test_a7_modules():
    a = fixtures.load("A7")
    assert projective(a, 1).dims == (1, 1, 1)
    # paths ending at 3: e3, b, c and ac
    assert injective(a, 3).dims == (1, 2, 1)


def test_interval(a1):
    m = interval(a1, 4, 2)
    assert m.dims == (1, 0, 0, 1)
    assert hx.top_dims(m) == (0, 0, 0, 1)
    with pytest.raises(LengthExceedsKupisch):
        interval(a1, 1, 4)
    with pytest.raises(InvalidInput):
        interval(fixtures.load("A5"), 1, 1)


def test_direct_sum(a1):
    s = simple(a1, 1)
    assert direct_sum([s]) is s
    assert direct_sum([], a1).total_dim == 0
    ds = direct_sum([simple(a1, 1), simple(a1, 2)])
    assert ds.dims == (1, 1, 0, 0) and not any(m.any() for m in ds.mats)
    with pytest.raises(InvalidInput):
        direct_sum([])


def test_dualize(a1):
    op = a1.opposite()
    assert same_structure(dualize(simple(a1, 2)), simple(op, 2))
    assert same_structure(dualize(projective(a1, 3)), injective(op, 3))
    assert dualize(projective(a1, 1)).dims == (1, 1, 1, 0)
    m = interval(a1, 2, 3)
    assert same_structure(dualize(dualize(m)), m)


def test_validate(a1):
    for i in range(1, 5):
        for m in (simple(a1, i), projective(a1, i), injective(a1, i)):
            assert validate(m) == []
    assert validate(zero_module(a1)) == []
    # a uniserial 1\\2\\3\\4 with every arrow nonzero breaks abc = 0
    bad = _make(a1, [1, 1, 1, 1], {"a": [[1]], "b": [[1]], "c": [[1]]})
    assert validate(bad) == ["abc"]


def test_projective_top_simple():
    for name in ("A1", "A2", "A5", "A6", "A7"):
        a = fixtures.load(name)
        for i in range(1, a.n + 1):
            top = hx.top_dims(projective(a, i))
            assert top == tuple(int(v == i) for v in range(1, a.n + 1))


def test_json_roundtrip(a1):
    m = interval(a1, 3, 3)
    back = rep_from_json(rep_to_json(m), a1)
    assert same_structure(m, back)
    with pytest.raises(InvalidInput):
        rep_from_json({"dims": [1, 1, 0, 0], "action": {"a": [[1, 1]]}}, a1)
    with pytest.raises(InvalidInput):
        rep_from_json({"dims": [1]}, a1)


def test_rep_from_json_rejects_relation_violation():
    a = fixtures.load("A5")
    data = {"dims": [1, 1, 0, 0, 0], "action": {"a": [[1]], "b": [[1]]}}
    with pytest.raises(InvalidInput):
        rep_from_json(data, a)


def test_a1_intervals_distinct(a1):
    mods = [interval(a1, i, l) for i in range(1, 5) for l in range(1, a1.kupisch.c[i - 1] + 1)]
    assert len(mods) == 15
    sigs = {(m.dims, tuple(hx.top_dims(m))) for m in mods}
    assert len(sigs) == 15
    assert np.all([m.total_dim >= 1 for m in mods])
