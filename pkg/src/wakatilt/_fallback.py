"""Pure numpy implementations of the ``_kernels`` extension.

Same signatures and results as the compiled module; used when the extension
is not built or when ``WAKATILT_PURE=1``.
"""
from __future__ import annotations

import numpy as np


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    work = np.ascontiguousarray(m % p, dtype=np.int64)
    rows, cols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(work[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            work[[r, piv]] = work[[piv, r]]
        inv = pow(int(work[r, c]), -1, p)
        if inv != 1:
            work[r] = (work[r] * inv) % p
        col = work[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            work[hit] = (work[hit] - np.outer(col[hit], work[r])) % p
        pivots.append(c)
        r += 1
    return work, pivots


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def hom_system(dims_m, dims_n, arrows, mats_m, mats_n, p: int) -> np.ndarray:
    offsets = np.concatenate([[0], np.cumsum([a * b for a, b in zip(dims_n, dims_m)])]).astype(int)
    nvars = int(offsets[-1])
    blocks = []
    for (s, t), ma, na in zip(arrows, mats_m, mats_n):
        ms, mt, ns, nt = dims_m[s], dims_m[t], dims_n[s], dims_n[t]
        if nt == 0 or ms == 0:
            continue
        block = np.zeros((nt * ms, nvars), dtype=np.int64)
        # row-major vec(A X B) = (A kron B^T) vec(X)
        if mt:
            block[:, offsets[t]:offsets[t] + nt * mt] += np.kron(np.eye(nt, dtype=np.int64), ma.T)
        if ns:
            block[:, offsets[s]:offsets[s] + ns * ms] -= np.kron(na, np.eye(ms, dtype=np.int64))
        blocks.append(block % p)
    if not blocks:
        return np.zeros((0, nvars), dtype=np.int64)
    return np.vstack(blocks)


def hom_dim(dims_m, dims_n, arrows, mats_m, mats_n, p: int) -> int:
    sysm = hom_system(dims_m, dims_n, arrows, mats_m, mats_n, p)
    nvars = sysm.shape[1]
    if sysm.shape[0] == 0 or nvars == 0:
        return nvars
    return nvars - rank(sysm, p)
