"""Hom spaces, traces, projective covers, syzygies and Ext by dimension shifting.

Functions that take an optional ``registry`` use its precomputed tables when
it is given and fall back to direct computation on representations otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import InvalidInput, Undecided
from .rep import Morphism, Representation, direct_sum, kernel, projective, zero_module


@dataclass
class HomSpace:
    basis: list[Morphism]
    dim: int


@dataclass
class PdResult:
    """Projective dimension. ``value`` is ``math.inf`` for infinite dimension.

    ``certificate`` is the syzygy chain (ending at the zero module when finite)
    or, when infinite, the chain up to the repeated state.
    """

    value: float
    certificate: list = field(default_factory=list)

    @property
    def finite(self) -> bool:
        return self.value != math.inf

    def __str__(self) -> str:
        return "inf" if not self.finite else str(int(self.value))


def _same_algebra(m: Representation, n: Representation) -> None:
    if m.algebra is not n.algebra:
        raise InvalidInput("modules live over different algebras")


def _system(m: Representation, n: Representation) -> np.ndarray:
    return la.hom_system(m.dims, n.dims, m.arrow_pairs(), m.mats, n.mats, m.p)


def hom_dim(m: Representation, n: Representation) -> int:
    _same_algebra(m, n)
    if m.total_dim == 0 or n.total_dim == 0:
        return 0
    return la.hom_dim(m.dims, n.dims, m.arrow_pairs(), m.mats, n.mats, m.p)


def hom_basis(m: Representation, n: Representation) -> HomSpace:
    _same_algebra(m, n)
    sizes = [dn * dm for dn, dm in zip(n.dims, m.dims)]
    nvars = sum(sizes)
    if nvars == 0:
        return HomSpace([], 0)
    sysm = _system(m, n)
    ns = la.nullspace(sysm, m.p) if sysm.shape[0] else la.identity(nvars)
    basis = []
    for k in range(ns.shape[1]):
        col = ns[:, k]
        phi, off = [], 0
        for v, sz in enumerate(sizes):
            phi.append(np.ascontiguousarray(col[off:off + sz].reshape(n.dims[v], m.dims[v])))
            off += sz
        basis.append(tuple(phi))
    return HomSpace(basis, len(basis))


def is_homomorphism(f: Morphism, m: Representation, n: Representation) -> bool:
    p = m.p
    for k, arr in enumerate(m.algebra.arrows):
        s, t = arr.source - 1, arr.target - 1
        lhs = la.matmul(f[t], m.mats[k], p) if f[t].size and m.mats[k].size else la.zeros(n.dims[t], m.dims[s])
        rhs = la.matmul(n.mats[k], f[s], p) if n.mats[k].size and f[s].size else la.zeros(n.dims[t], m.dims[s])
        if not np.array_equal(lhs, rhs):
            return False
    return True


def image_basis(maps: list[Morphism], x: Representation) -> list[np.ndarray]:
    """Per-vertex column bases of the sum of the images of ``maps`` in ``x``."""
    out = []
    for v in range(x.algebra.n):
        blocks = [f[v] for f in maps if f[v].shape[1]]
        if not blocks or x.dims[v] == 0:
            out.append(la.zeros(x.dims[v], 0))
            continue
        out.append(la.column_basis(np.hstack(blocks), x.p))
    return out


def trace(s: list[Representation], x: Representation) -> list[np.ndarray]:
    maps = []
    for m in s:
        maps.extend(hom_basis(m, x).basis)
    return image_basis(maps, x)


def trace_and_cover(s: list[Representation], x: Representation) -> tuple[tuple[int, ...], bool]:
    dims = tuple(b.shape[1] for b in trace(s, x))
    return dims, dims == x.dims


def radical_basis(m: Representation) -> list[np.ndarray]:
    a = m.algebra
    out = []
    for v in range(1, a.n + 1):
        blocks = [m.mats[k] for k, arr in enumerate(a.arrows) if arr.target == v and m.mats[k].shape[1]]
        if not blocks or m.dims[v - 1] == 0:
            out.append(la.zeros(m.dims[v - 1], 0))
        else:
            out.append(la.column_basis(np.hstack(blocks), m.p))
    return out


def top_dims(m: Representation) -> tuple[int, ...]:
    return tuple(d - r.shape[1] for d, r in zip(m.dims, radical_basis(m)))


def _path_images(m: Representation, v: int, g: np.ndarray) -> dict:
    """Images of the generator ``g`` (at vertex ``v``) under every nonzero path from ``v``."""
    a = m.algebra
    idx = a.arrow_index
    words = sorted((w for u in range(1, a.n + 1) for w in a.paths[(v, u)]), key=len)
    img = {(): g}
    for w in words:
        if w:
            img[w] = la.matmul(m.mats[idx[w[-1]]], img[w[:-1]], m.p)
    return img


def projective_cover(m: Representation) -> tuple[Representation, Morphism]:
    """``P(m) -> m`` lifting a basis of the top; summands ordered by vertex."""
    a = m.algebra
    if m.total_dim == 0:
        z = zero_module(a)
        return z, tuple(la.zeros(0, 0) for _ in range(a.n))
    rad = radical_basis(m)
    gens = []
    for v in range(1, a.n + 1):
        comp = la.complement_basis(rad[v - 1], m.dims[v - 1], m.p)
        for k in range(comp.shape[1]):
            gens.append((v, comp[:, k:k + 1]))
    summands = [projective(a, v) for v, _ in gens]
    cover = direct_sum(summands, a)
    cols = {u: [] for u in range(1, a.n + 1)}
    for v, g in gens:
        img = _path_images(m, v, g)
        for u in range(1, a.n + 1):
            cols[u].extend(img[w] for w in a.paths[(v, u)])
    f = []
    for u in range(1, a.n + 1):
        if cols[u]:
            f.append(np.ascontiguousarray(np.hstack(cols[u])))
        else:
            f.append(la.zeros(m.dims[u - 1], 0))
    cover.name = f"P({m.name})" if m.name else ""
    return cover, tuple(f)


def syzygy(m: Representation) -> Representation:
    cover, f = projective_cover(m)
    if cover.total_dim == 0:
        return cover
    k, _ = kernel(cover, f, name=f"Ω({m.name})" if m.name else "")
    return k


def is_projective(m: Representation) -> bool:
    return syzygy(m).total_dim == 0


def ext_dim(m: Representation, n: Representation, i: int = 1) -> int:
    """``dim Ext^i(m, n)`` via ``0 -> Ωm -> P(m) -> m -> 0``."""
    if i < 1:
        raise InvalidInput(f"Ext degree must be >= 1, got {i}")
    _same_algebra(m, n)
    for _ in range(i - 1):
        m = syzygy(m)
    if m.total_dim == 0 or n.total_dim == 0:
        return 0
    cover, f = projective_cover(m)
    om = kernel(cover, f)[0]
    return hom_dim(om, n) - hom_dim(cover, n) + hom_dim(m, n)


def proj_dimension(m: Representation, registry=None, cap: int | None = None) -> PdResult:
    if registry is not None:
        return registry.proj_dimension(m)
    from .indec import is_isomorphic

    if cap is None:
        cap = 10 * m.algebra.dimension
    chain: list[Representation] = []
    cur = m
    for k in range(cap + 1):
        if cur.total_dim == 0:
            return PdResult(max(k - 1, 0), [c.dims for c in chain] + [cur.dims])
        for j, prev in enumerate(chain):
            if is_isomorphic(prev, cur):
                return PdResult(math.inf, [c.dims for c in chain[j:]] + [cur.dims])
        chain.append(cur)
        cur = syzygy(cur)
    raise Undecided(f"projective dimension undecided after {cap} syzygies; supply a registry")


def inj_dimension(m: Representation, registry_op=None, cap: int | None = None) -> PdResult:
    from .rep import dualize

    return proj_dimension(dualize(m), registry_op, cap)


def omega_closure(t: Representation, registry) -> tuple[int, ...]:
    return registry.omega_closure(registry.decompose(t))


def ext_all_vanish(m: Representation, n: Representation, registry=None) -> bool:
    """``Ext^i(m, n) = 0`` for all ``i > 0``."""
    if registry is not None:
        return registry.ext_vanish(registry.decompose(m), registry.decompose(n))
    pd = proj_dimension(m)
    if not pd.finite:
        raise Undecided("infinite projective dimension; a registry is needed to decide total Ext-vanishing")
    cur = m
    for _ in range(int(pd.value)):
        if ext_dim(cur, n, 1):
            return False
        cur = syzygy(cur)
    return True
