"""Finite-dimensional representations of bound quiver algebras.

An arrow ``a: s -> t`` acts by a ``dims[t] x dims[s]`` matrix and a path acts
by composing along the word left to right, so ``P(i)`` is spanned by the
nonzero paths starting at ``i`` and its top sits at vertex ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import Algebra, Word
from .errors import InvalidInput, LengthExceedsKupisch

Morphism = tuple  # per-vertex matrices, phi[v - 1] of shape (dims_N[v], dims_M[v])


@dataclass(eq=False)
class Representation:
    algebra: Algebra
    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != self.algebra.n:
            raise InvalidInput(f"dimension vector has {len(self.dims)} entries, algebra has {self.algebra.n} vertices")
        if len(self.mats) != len(self.algebra.arrows):
            raise InvalidInput("one matrix per arrow is required")

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def act(self, word: Word, v: int) -> np.ndarray:
        """Matrix of the path ``word`` (starting at vertex ``v``)."""
        idx = self.algebra.arrow_index
        m = la.identity(self.dims[v - 1])
        for name in word:
            m = la.matmul(self.mats[idx[name]], m, self.p)
        return m

    def arrow_pairs(self) -> list[tuple[int, int]]:
        return [(a.source - 1, a.target - 1) for a in self.algebra.arrows]

    def __repr__(self) -> str:
        label = self.name or "Rep"
        return f"{label}{list(self.dims)}"


def _make(a: Algebra, dims, mats: dict[str, np.ndarray] | None = None, name: str = "") -> Representation:
    mats = mats or {}
    out = []
    for arr in a.arrows:
        m = mats.get(arr.name)
        shape = (dims[arr.target - 1], dims[arr.source - 1])
        if m is None:
            m = la.zeros(*shape)
        else:
            m = np.ascontiguousarray(np.asarray(m, dtype=np.int64).reshape(shape) % a.p)
        out.append(m)
    return Representation(a, tuple(dims), tuple(out), name)


def zero_module(a: Algebra) -> Representation:
    return _make(a, [0] * a.n, name="0")


def simple(a: Algebra, i: int) -> Representation:
    _check_vertex(a, i)
    dims = [0] * a.n
    dims[i - 1] = 1
    return _make(a, dims, name=f"S{i}")


def _check_vertex(a: Algebra, i: int) -> None:
    if not 1 <= i <= a.n:
        raise InvalidInput(f"vertex {i} outside 1..{a.n}")


def _path_module(a: Algebra, i: int, keep, name: str) -> Representation:
    """Span of the nonzero paths from ``i`` accepted by ``keep``; arrows extend paths."""
    basis = {v: [w for w in a.paths[(i, v)] if keep(w)] for v in range(1, a.n + 1)}
    index = {v: {w: k for k, w in enumerate(ws)} for v, ws in basis.items()}
    dims = [len(basis[v]) for v in range(1, a.n + 1)]
    mats = {}
    for arr in a.arrows:
        m = la.zeros(dims[arr.target - 1], dims[arr.source - 1])
        for col, w in enumerate(basis[arr.source]):
            row = index[arr.target].get(w + (arr.name,))
            if row is not None:
                m[row, col] = 1
        mats[arr.name] = m
    return _make(a, dims, mats, name)


def projective(a: Algebra, i: int) -> Representation:
    _check_vertex(a, i)
    return _path_module(a, i, lambda w: True, f"P{i}")


def injective(a: Algebra, i: int) -> Representation:
    _check_vertex(a, i)
    m = dualize(projective(a.opposite(), i))
    m.name = f"I{i}"
    return m


def standard_module(a: Algebra, kind: str, i: int) -> Representation:
    try:
        return {"simple": simple, "projective": projective, "injective": injective}[kind](a, i)
    except KeyError:
        raise InvalidInput(f"unknown module kind {kind!r}") from None


def truncated_projective(a: Algebra, i: int, length: int) -> Representation:
    """``P(i) / rad^length P(i)``."""
    _check_vertex(a, i)
    return _path_module(a, i, lambda w: len(w) < length, f"P{i}/rad^{length}")


def interval(a: Algebra, i: int, length: int) -> Representation:
    """Uniserial module M(i, l) of a Nakayama algebra: top S(i), length l."""
    if a.kupisch is None:
        raise InvalidInput("interval modules need a Nakayama algebra")
    _check_vertex(a, i)
    c = a.kupisch.c[i - 1]
    if not 1 <= length <= c:
        raise LengthExceedsKupisch(f"length {length} exceeds Kupisch bound c_{i} = {c}")
    m = truncated_projective(a, i, length)
    m.name = f"M({i},{length})"
    return m


def direct_sum(ms, algebra: Algebra | None = None) -> Representation:
    ms = list(ms)
    if not ms:
        if algebra is None:
            raise InvalidInput("direct_sum of an empty list needs the algebra")
        return zero_module(algebra)
    a = ms[0].algebra
    if any(m.algebra is not a for m in ms):
        raise InvalidInput("direct_sum needs modules over the same algebra")
    if len(ms) == 1:
        return ms[0]
    dims = [sum(m.dims[v] for m in ms) for v in range(a.n)]
    mats = []
    for k, arr in enumerate(a.arrows):
        block = la.zeros(dims[arr.target - 1], dims[arr.source - 1])
        r = c = 0
        for m in ms:
            mk = m.mats[k]
            block[r:r + mk.shape[0], c:c + mk.shape[1]] = mk
            r += mk.shape[0]
            c += mk.shape[1]
        mats.append(block)
    return Representation(a, tuple(dims), tuple(mats), " + ".join(m.name or "?" for m in ms))


def dualize(m: Representation) -> Representation:
    """Vector-space dual, a representation of the opposite algebra."""
    op = m.algebra.opposite()
    mats = tuple(np.ascontiguousarray(x.T) for x in m.mats)
    name = f"D({m.name})" if m.name else ""
    return Representation(op, m.dims, mats, name)


def validate(m: Representation) -> list[str]:
    """Violated relations and shape problems; empty means a valid module."""
    problems = []
    for k, arr in enumerate(m.algebra.arrows):
        want = (m.dims[arr.target - 1], m.dims[arr.source - 1])
        if m.mats[k].shape != want:
            problems.append(f"shape {arr.name}: {m.mats[k].shape} != {want}")
    if problems:
        return problems
    for rel in m.algebra.relations:
        start = m.algebra.quiver.arrow(rel[0]).source
        if np.any(m.act(rel, start)):
            problems.append("".join(rel))
    return problems


def same_structure(m: Representation, n: Representation) -> bool:
    return (
        m.algebra.structurally_equal(n.algebra)
        and m.dims == n.dims
        and all(np.array_equal(x, y) for x, y in zip(m.mats, n.mats))
    )


def kernel(m: Representation, f: Morphism, name: str = "") -> tuple[Representation, Morphism]:
    """Kernel subrepresentation of ``f: m -> ?`` with its inclusion."""
    p = m.p
    basis = []
    for v in range(m.algebra.n):
        fv = f[v]
        if fv.shape[0] == 0:
            basis.append(la.identity(m.dims[v]))
        else:
            basis.append(la.nullspace(fv, p))
    dims = [b.shape[1] for b in basis]
    mats = []
    for k, arr in enumerate(m.algebra.arrows):
        s, t = arr.source - 1, arr.target - 1
        if dims[s] == 0 or dims[t] == 0:
            mats.append(la.zeros(dims[t], dims[s]))
            continue
        image = la.matmul(m.mats[k], basis[s], p)
        x = la.solve(basis[t], image, p)
        if x is None:
            raise ArithmeticError("kernel is not a subrepresentation; the map is not a homomorphism")
        mats.append(np.ascontiguousarray(x))
    return Representation(m.algebra, tuple(dims), tuple(mats), name), tuple(basis)


def rep_from_json(data: dict, a: Algebra, name: str | None = None) -> Representation:
    try:
        dims = [int(x) for x in data["dims"]]
        action = data.get("action", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed module JSON: {exc}") from exc
    if len(dims) != a.n:
        raise InvalidInput(f"module has {len(dims)} dims, algebra has {a.n} vertices")
    mats = {}
    for arr in a.arrows:
        shape = (dims[arr.target - 1], dims[arr.source - 1])
        raw = action.get(arr.name)
        if raw is None or shape[0] * shape[1] == 0:
            mats[arr.name] = la.zeros(*shape)
            continue
        m = np.array(raw, dtype=np.int64)
        if m.shape != shape:
            raise InvalidInput(f"arrow {arr.name}: matrix shape {m.shape}, expected {shape}")
        mats[arr.name] = m
    rep = _make(a, dims, mats, name if name is not None else data.get("name", ""))
    bad = validate(rep)
    if bad:
        raise InvalidInput(f"module violates relations: {', '.join(bad)}")
    return rep


def rep_to_json(m: Representation) -> dict:
    out = {
        "dims": list(m.dims),
        "action": {arr.name: m.mats[k].tolist() for k, arr in enumerate(m.algebra.arrows)},
    }
    if m.name:
        out["name"] = m.name
    return out
