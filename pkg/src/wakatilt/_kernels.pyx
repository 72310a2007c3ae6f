# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled modular elimination kernels.

Every function here has a drop-in twin in ``_fallback``; the two must agree
bit for bit on every input.
"""
import numpy as np
cimport numpy as cnp

ctypedef long long i64

cnp.import_array()


cdef inline i64 _inv(i64 a, i64 p) nogil:
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef inline i64 _mod(i64 x, i64 p) nogil:
    # C remainder keeps the sign of x
    x = x % p
    return x + p if x < 0 else x


cdef list _rref(i64[:, ::1] m, i64 p):
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, v
    cdef list pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                v = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = v
        inv = _inv(m[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = m[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if m[r, j] != 0:
                    m[i, j] = _mod(m[i, j] - f * m[r, j], p)
        pivots.append(c)
        r += 1
    return pivots


cdef Py_ssize_t _rank(i64[:, ::1] m, i64 p):
    # forward elimination only
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, v
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                v = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = v
        inv = _inv(m[r, c], p)
        for i in range(r + 1, rows):
            f = m[i, c]
            if f == 0:
                continue
            f = (f * inv) % p
            for j in range(c, cols):
                if m[r, j] != 0:
                    m[i, j] = _mod(m[i, j] - f * m[r, j], p)
        r += 1
    return r


def rref(cnp.ndarray m, i64 p):
    """Return ``(reduced, pivots)`` for a copy of ``m`` reduced modulo ``p``."""
    cdef cnp.ndarray[i64, ndim=2, mode="c"] work = np.ascontiguousarray(np.mod(m, p), dtype=np.int64)
    pivots = _rref(work, p)
    return work, pivots


def rank(cnp.ndarray m, i64 p):
    cdef cnp.ndarray[i64, ndim=2, mode="c"] work = np.ascontiguousarray(m % p, dtype=np.int64)
    return _rank(work, p)


def hom_system(tuple dims_m, tuple dims_n, list arrows, list mats_m, list mats_n, i64 p):
    """Coefficient matrix of the intertwining equations ``phi_t M_a = N_a phi_s``.

    Unknowns are the entries of ``phi_v`` (shape ``dims_n[v] x dims_m[v]``),
    row-major, concatenated over vertices.
    """
    cdef Py_ssize_t nv = len(dims_m)
    cdef Py_ssize_t v, nvars = 0, neqs = 0, k, r, c, s, t, row, ms, mt, ns, nt
    cdef list offsets = []
    for v in range(nv):
        offsets.append(nvars)
        nvars += dims_n[v] * dims_m[v]
    for k in range(len(arrows)):
        s, t = arrows[k]
        neqs += dims_n[t] * dims_m[s]
    cdef cnp.ndarray[i64, ndim=2, mode="c"] out = np.zeros((neqs, nvars), dtype=np.int64)
    cdef i64[:, ::1] ma
    cdef i64[:, ::1] na
    cdef Py_ssize_t off_s, off_t, kk
    row = 0
    for k in range(len(arrows)):
        s, t = arrows[k]
        ms = dims_m[s]
        mt = dims_m[t]
        ns = dims_n[s]
        nt = dims_n[t]
        if nt == 0 or ms == 0:
            continue
        off_s = offsets[s]
        off_t = offsets[t]
        ma = mats_m[k]
        na = mats_n[k]
        for r in range(nt):
            for c in range(ms):
                # (phi_t M_a)[r, c] = sum_kk phi_t[r, kk] M_a[kk, c]
                for kk in range(mt):
                    if ma[kk, c] != 0:
                        out[row, off_t + r * mt + kk] = (out[row, off_t + r * mt + kk] + ma[kk, c]) % p
                # (N_a phi_s)[r, c] = sum_kk N_a[r, kk] phi_s[kk, c]
                for kk in range(ns):
                    if na[r, kk] != 0:
                        out[row, off_s + kk * ms + c] = _mod(out[row, off_s + kk * ms + c] - na[r, kk], p)
                row += 1
    return out


def hom_dim(tuple dims_m, tuple dims_n, list arrows, list mats_m, list mats_n, i64 p):
    sysm = hom_system(dims_m, dims_n, arrows, mats_m, mats_n, p)
    cdef Py_ssize_t nvars = sysm.shape[1]
    if sysm.shape[0] == 0 or nvars == 0:
        return nvars
    cdef cnp.ndarray[i64, ndim=2, mode="c"] work = sysm
    return nvars - _rank(work, p)
