import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wakatilt import linalg as la

BACKENDS = sorted(la.KERNELS)


@pytest.fixture(params=BACKENDS)
def kernels(request, monkeypatch):
    monkeypatch.setattr(la, "_kernels", la.KERNELS[request.param])
    return request.param


def small_mats(p=la.DEFAULT_P):
    return st.tuples(st.integers(0, 6), st.integers(0, 6)).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(0, p - 1))
    )


def test_backend_reported():
    assert la.BACKEND in ("cython", "python")
    assert la.KERNELS[la.BACKEND] is la._kernels


def test_rank_examples(kernels):
    assert la.rank(la.identity(2)) == 2
    assert la.rank(la.zeros(3, 4)) == 0
    assert la.rank(la.mat([[1, 2], [2, 4]])) == 1


def test_rref_is_reduced(kernels):
    r, red, piv = la.rank_and_rref(la.mat([[2, 4, 1], [1, 2, 0], [0, 0, 3]]))
    assert r == 2 and piv == [0, 2]
    assert red[0].tolist() == [1, 2, 0]
    assert red[1].tolist() == [0, 0, 1]


def test_nullspace_examples(kernels):
    assert la.nullspace(la.identity(3)).shape == (3, 0)
    assert la.nullspace(la.zeros(3, 3)).shape == (3, 3)
    b = la.nullspace(la.mat([[1, 1]]))
    assert b.shape == (2, 1)
    assert (b[0, 0] + b[1, 0]) % la.DEFAULT_P == 0 and b[1, 0] != 0


def test_solve_examples(kernels):
    v = la.mat([[3], [7]])
    assert np.array_equal(la.solve(la.identity(2), v), v)
    assert la.solve(la.mat([[1], [1]]), np.array([1, 2])) is None
    assert la.solve(la.mat([[2]]), np.array([1])).tolist() == [51]


def test_inverse(kernels):
    a = la.mat([[1, 2], [3, 4]])
    inv = la.inverse(a)
    assert np.array_equal(la.matmul(a, inv), la.identity(2))
    assert la.inverse(la.mat([[1, 2], [2, 4]])) is None


def test_check_field():
    assert la.check_field(101) == 101
    for bad in (100, 1, 1 << 25):
        with pytest.raises(ValueError):
            la.check_field(bad)


@settings(max_examples=60, deadline=None)
@given(small_mats())
def test_rank_transpose_and_nullity(m):
    for name, k in la.KERNELS.items():
        la_rank = len(k.rref(m, la.DEFAULT_P)[1]) if m.size else 0
        assert la_rank == (len(k.rref(m.T.copy(), la.DEFAULT_P)[1]) if m.size else 0), name
    r = la.rank(m)
    ns = la.nullspace(m)
    assert ns.shape[1] == m.shape[1] - r
    if ns.size and m.shape[0]:
        assert not la.matmul(m, ns).any()
        assert la.rank(ns) == ns.shape[1]


@settings(max_examples=60, deadline=None)
@given(small_mats(), st.integers(0, 2**31))
def test_solve_consistent(a, seed):
    x0 = np.random.default_rng(seed).integers(0, la.DEFAULT_P, size=a.shape[1])
    b = (a @ x0) % la.DEFAULT_P
    x = la.solve(a, b)
    assert x is not None
    assert np.array_equal((a @ x) % la.DEFAULT_P, b)


@settings(max_examples=60, deadline=None)
@given(small_mats(7))
def test_backends_agree(m):
    outs = [k.rref(m, 7) if m.size else None for k in la.KERNELS.values()]
    if m.size:
        assert all(np.array_equal(o[0], outs[0][0]) and list(o[1]) == list(outs[0][1]) for o in outs)
        assert len({int(k.rank(m, 7)) for k in la.KERNELS.values()}) == 1


def test_hom_system_backends_agree(reg):
    r = reg("A1")
    for x in r.modules[:6]:
        for y in r.modules[:6]:
            args = (tuple(x.dims), tuple(y.dims), x.arrow_pairs(), list(x.mats), list(y.mats), x.p)
            vals = {name: int(k.hom_dim(*args)) for name, k in la.KERNELS.items()}
            assert len(set(vals.values())) == 1, vals
            systems = [k.hom_system(*args) for k in la.KERNELS.values()]
            assert all(np.array_equal(s, systems[0]) for s in systems)
