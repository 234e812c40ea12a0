# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled peeling kernels; same contract as ``_peel_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef cnp.int64_t idx_t


cdef Py_ssize_t _peel(const idx_t[:] offs, const idx_t[:] pj, const idx_t[:] pk,
                      const idx_t[:] doffs, const idx_t[:] deps,
                      unsigned char* alive, Py_ssize_t n,
                      const idx_t* seeds, Py_ssize_t nseeds,
                      idx_t* ring, unsigned char* inq) nogil:
    cdef Py_ssize_t head = 0, size = 0, i, t, a, d, count = 0
    cdef bint extremal
    for i in range(n):
        inq[i] = 0
    for i in range(nseeds):
        a = seeds[i]
        if alive[a] and not inq[a]:
            inq[a] = 1
            ring[(head + size) % n] = a
            size += 1
    while size > 0:
        a = ring[head]
        head = (head + 1) % n
        size -= 1
        inq[a] = 0
        if not alive[a]:
            continue
        extremal = True
        for t in range(offs[a], offs[a + 1]):
            if alive[pj[t]] and alive[pk[t]]:
                extremal = False
                break
        if extremal:
            alive[a] = 0
            for t in range(doffs[a], doffs[a + 1]):
                d = deps[t]
                if alive[d] and not inq[d]:
                    inq[d] = 1
                    ring[(head + size) % n] = d
                    size += 1
    for i in range(n):
        count += alive[i]
    return count


def peel(offs, pj, pk, doffs, deps, alive, seeds):
    cdef const idx_t[:] o = np.ascontiguousarray(offs, dtype=np.int64)
    cdef const idx_t[:] j = np.ascontiguousarray(pj, dtype=np.int64)
    cdef const idx_t[:] k = np.ascontiguousarray(pk, dtype=np.int64)
    cdef const idx_t[:] do = np.ascontiguousarray(doffs, dtype=np.int64)
    cdef const idx_t[:] de = np.ascontiguousarray(deps, dtype=np.int64)
    cdef idx_t[:] s = np.ascontiguousarray(seeds, dtype=np.int64)
    cdef unsigned char[:] al = alive
    cdef Py_ssize_t n = al.shape[0]
    cdef Py_ssize_t count
    if n == 0:
        return 0
    cdef idx_t* ring = <idx_t*>malloc(n * sizeof(idx_t))
    cdef unsigned char* inq = <unsigned char*>malloc(n)
    try:
        with nogil:
            count = _peel(o, j, k, do, de, &al[0], n, &s[0] if s.shape[0] else NULL,
                          s.shape[0], ring, inq)
    finally:
        free(ring)
        free(inq)
    return count


def min_peel(offs, pj, pk, doffs, deps, alive, order):
    cdef const idx_t[:] o = np.ascontiguousarray(offs, dtype=np.int64)
    cdef const idx_t[:] j = np.ascontiguousarray(pj, dtype=np.int64)
    cdef const idx_t[:] k = np.ascontiguousarray(pk, dtype=np.int64)
    cdef const idx_t[:] do = np.ascontiguousarray(doffs, dtype=np.int64)
    cdef const idx_t[:] de = np.ascontiguousarray(deps, dtype=np.int64)
    cdef idx_t[:] ordv = np.ascontiguousarray(order, dtype=np.int64)
    cdef unsigned char[:] al = alive
    cdef Py_ssize_t n = al.shape[0]
    cdef Py_ssize_t levels = 0, i, a
    cdef bint progress = True
    if n == 0:
        return 0
    cdef idx_t* ring = <idx_t*>malloc(n * sizeof(idx_t))
    cdef unsigned char* inq = <unsigned char*>malloc(n)
    cdef unsigned char* trial = <unsigned char*>malloc(n)
    try:
        with nogil:
            while progress:
                progress = False
                for i in range(ordv.shape[0]):
                    a = ordv[i]
                    if not al[a]:
                        continue
                    memcpy(trial, &al[0], n)
                    trial[a] = 0
                    if _peel(o, j, k, do, de, trial, n, &de[do[a]], do[a + 1] - do[a],
                             ring, inq) > 0:
                        memcpy(&al[0], trial, n)
                        levels += 1
                        progress = True
                        break
    finally:
        free(ring)
        free(inq)
        free(trial)
    return levels


# ---------------------------------------------------------------------------
# modular fingerprints for the witness search

ctypedef cnp.uint64_t u64


cdef inline void _mulmod(const u64* x, const u64* y, u64* out, u64 p, int m) noexcept nogil:
    cdef int i, j, k
    cdef u64 acc
    for i in range(m):
        for j in range(m):
            acc = 0
            for k in range(m):
                acc = (acc + (x[i * m + k] * y[k * m + j]) % p) % p
            out[i * m + j] = acc


cdef inline void _norm(u64* v, u64 p, bint projective, int w) noexcept nogil:
    cdef int t
    if not projective:
        return
    for t in range(w):
        if v[t]:
            if v[t] > p // 2:
                for t in range(w):
                    v[t] = (p - v[t]) % p
            return


cdef inline int _cmp(const u64* x, const u64* y, int w) noexcept nogil:
    cdef int t
    for t in range(w):
        if x[t] < y[t]:
            return -1
        if x[t] > y[t]:
            return 1
    return 0


def witness_candidates(img, inv, p, projective):
    """Compiled twin of ``_peel_py.witness_candidates`` (needs p < 2**32)."""
    cdef cnp.ndarray[u64, ndim=2] A = np.ascontiguousarray(img, dtype=np.uint64)
    cdef cnp.ndarray[u64, ndim=2] B = np.ascontiguousarray(inv, dtype=np.uint64)
    cdef Py_ssize_t n = A.shape[0]
    cdef int w = A.shape[1]
    cdef int m = int(round(w ** 0.5))
    cdef u64 pp = p
    cdef bint proj = projective
    cdef cnp.ndarray[u64, ndim=2] N
    cdef cnp.ndarray[u64, ndim=2] S
    cdef cnp.ndarray[cnp.int64_t, ndim=1] perm
    cdef Py_ssize_t i, j, lo, hi, mid, k
    if n == 0:
        return [], [], []
    if m * m != w or m > 8:
        raise ValueError("rows must be flattened square matrices of size <= 8")
    N = A.copy()
    for i in range(n):
        _norm(&N[i, 0], pp, proj, w)
    order = np.lexsort(np.ascontiguousarray(N[:, ::-1].T))
    S = np.ascontiguousarray(N[order])
    perm = order.astype(np.int64)
    cdef u64 t1[64]
    cdef u64 t2[64]
    cdef Py_ssize_t cap = 1024, cnt = 0
    cdef cnp.int64_t* buf = <cnp.int64_t*>malloc(3 * cap * sizeof(cnp.int64_t))
    cdef cnp.int64_t* nb
    try:
        with nogil:
            for i in range(n):
                for j in range(n):
                    if j == i:
                        continue
                    _mulmod(&A[i, 0], &B[j, 0], t1, pp, m)
                    _mulmod(t1, &A[i, 0], t2, pp, m)
                    _norm(t2, pp, proj, w)
                    lo = 0
                    hi = n
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if _cmp(&S[mid, 0], t2, w) < 0:
                            lo = mid + 1
                        else:
                            hi = mid
                    while lo < n and _cmp(&S[lo, 0], t2, w) == 0:
                        if cnt == cap:
                            nb = <cnp.int64_t*>malloc(6 * cap * sizeof(cnp.int64_t))
                            memcpy(nb, buf, 3 * cap * sizeof(cnp.int64_t))
                            free(buf)
                            buf = nb
                            cap *= 2
                        buf[3 * cnt] = i
                        buf[3 * cnt + 1] = j
                        buf[3 * cnt + 2] = perm[lo]
                        cnt += 1
                        lo += 1
        res = np.empty((cnt, 3), dtype=np.int64)
        for k in range(cnt):
            res[k, 0] = buf[3 * k]
            res[k, 1] = buf[3 * k + 1]
            res[k, 2] = buf[3 * k + 2]
    finally:
        free(buf)
    return res[:, 0].tolist(), res[:, 1].tolist(), res[:, 2].tolist()
