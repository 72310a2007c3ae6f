"""Dense exact linear algebra over a prime field F_p.

Matrices are ``numpy`` int64 arrays with entries in ``[0, p)``. The
elimination kernels come from the compiled ``_kernels`` extension when it is
importable, else from the numpy fallback; set ``WAKATILT_PURE=1`` to force
the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _fallback

DEFAULT_P = 101
# p^2 * (matrix side) must stay inside int64
MAX_P = 1 << 24

if os.environ.get("WAKATILT_PURE") == "1":
    _kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _kernels = _fallback
        BACKEND = "python"

KERNELS = {"python": _fallback}
if BACKEND == "cython":
    KERNELS["cython"] = _kernels


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_field(p: int) -> int:
    if not is_prime(p) or p >= MAX_P:
        raise ValueError(f"field characteristic must be a prime below {MAX_P}, got {p}")
    return p


def mat(rows, p: int = DEFAULT_P, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce nested lists (or an array) into a reduced int64 matrix."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return np.ascontiguousarray(a % p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    return np.ascontiguousarray((a @ b) % p)


def rank_and_rref(m: np.ndarray, p: int = DEFAULT_P) -> tuple[int, np.ndarray, list[int]]:
    """Rank, unique reduced row-echelon form, and pivot columns of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return 0, m.copy(), []
    reduced, pivots = _kernels.rref(m, p)
    return len(pivots), reduced, list(pivots)


def rank(m: np.ndarray, p: int = DEFAULT_P) -> int:
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return 0
    return int(_kernels.rank(m, p))


def nullspace(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Columns spanning the right kernel of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    r, reduced, pivots = rank_and_rref(m, p)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-reduced[row, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_P) -> np.ndarray | None:
    """A particular solution of ``a x = b`` (free variables zero), or ``None``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    if a.shape[0] == 0:
        x = zeros(n, b.shape[1])
        return x[:, 0] if vector else x
    _, reduced, pivots = rank_and_rref(np.hstack([a, b]), p)
    if pivots and pivots[-1] >= n:
        return None
    x = zeros(n, b.shape[1])
    for row, pc in enumerate(pivots):
        x[pc] = reduced[row, n:]
    return x[:, 0] if vector else x


def column_basis(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Linearly independent columns of ``m`` spanning its column space."""
    if m.shape[1] == 0 or m.shape[0] == 0:
        return zeros(m.shape[0], 0)
    _, _, pivots = rank_and_rref(m, p)
    return np.ascontiguousarray(m[:, pivots])


def complement_basis(sub: np.ndarray, dim: int, p: int = DEFAULT_P) -> np.ndarray:
    """Standard basis vectors extending the column span of ``sub`` to F_p^dim."""
    if sub.shape[1] == 0:
        return identity(dim)
    _, _, pivots = rank_and_rref(np.hstack([sub, identity(dim)]), p)
    k = sub.shape[1]
    picks = [c - k for c in pivots if c >= k]
    return np.ascontiguousarray(identity(dim)[:, picks])


def inverse(a: np.ndarray, p: int = DEFAULT_P) -> np.ndarray | None:
    n = a.shape[0]
    if a.shape != (n, n):
        return None
    if n == 0:
        return zeros(0, 0)
    return solve(a, identity(n), p) if rank(a, p) == n else None


def hom_system(dims_m, dims_n, arrows, mats_m, mats_n, p: int = DEFAULT_P) -> np.ndarray:
    return _kernels.hom_system(tuple(dims_m), tuple(dims_n), list(arrows), list(mats_m), list(mats_n), p)


def hom_dim(dims_m, dims_n, arrows, mats_m, mats_n, p: int = DEFAULT_P) -> int:
    return int(_kernels.hom_dim(tuple(dims_m), tuple(dims_n), list(arrows), list(mats_m), list(mats_n), p))
