# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for codeword enumeration.

A level-``w`` search visits every combination of ``w`` systematic rows
``i_0 < ... < i_{w-1}`` with scalar ``1`` on the first row and any nonzero
scalar on the others.  Rows are stored pre-multiplied by every nonzero scalar,
so a step is one vector addition.  Only the redundancy part of each row is
stored (the information part of such a combination has weight exactly ``w``),
optionally followed by syndrome symbols used to reject words of an excluded
subcode.

The first index is distributed over OpenMP threads when available; results
are merged so that the returned witness does not depend on the thread count.
"""

from cython.parallel cimport prange
from libc.stdint cimport uint64_t, uint8_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

import numpy as np

cdef extern from *:
    """
    static inline int jf_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int jf_load(int *p) { return __atomic_load_n(p, __ATOMIC_RELAXED); }
    static inline void jf_min(int *p, int v) {
        int cur = __atomic_load_n(p, __ATOMIC_RELAXED);
        while (v < cur && !__atomic_compare_exchange_n(p, &cur, v, 0, __ATOMIC_RELAXED, __ATOMIC_RELAXED)) {}
    }
    """
    int jf_popcount(unsigned long long x) nogil
    int jf_load(int *p) nogil
    void jf_min(int *p, int v) nogil


cdef struct Task:
    int k
    int qm1
    int stride          # words (bits) or bytes (bytes) per scaled row
    int W               # words per plane (bits mode)
    int e               # planes (bits mode)
    int nred            # redundancy symbols (bytes mode)
    int L               # total symbols (bytes mode)
    int q
    int w
    int check_syn
    int target
    const uint64_t *rows64
    const uint64_t *wmask
    const uint64_t *smask
    const uint8_t *rows8
    const uint8_t *addt
    int *stop_at
    const uint64_t *zero64
    const uint8_t *zero8


cdef struct Result:
    int best
    int found
    uint64_t count
    int idx[64]
    int coef[64]


cdef inline int _eval_bits(const Task *t, const uint64_t *base, const uint64_t *r, int *syn) noexcept nogil:
    cdef int word, b, wt = 0
    cdef uint64_t acc, s = 0
    for word in range(t.W):
        acc = 0
        for b in range(t.e):
            acc |= base[b * t.W + word] ^ r[b * t.W + word]
        wt += jf_popcount(acc & t.wmask[word])
        s |= acc & t.smask[word]
    syn[0] = s != 0
    return wt


cdef void _leaf_word(const Task *t, int depth, int start, uint64_t base, int *idx, int *coef,
                     Result *res, int i0) noexcept nogil:
    # binary field with all symbols in one machine word
    cdef int j, d, wt
    cdef uint64_t x
    cdef uint64_t wm = t.wmask[0]
    cdef uint64_t sm = t.smask[0]
    cdef const uint64_t *rows = t.rows64
    cdef int best = res.best
    cdef int w = t.w
    res.count += t.k - start
    for j in range(start, t.k):
        x = base ^ rows[j]
        wt = jf_popcount(x & wm) + w
        if wt < best:
            if t.check_syn and (x & sm) == 0:
                continue
            best = wt
            res.best = wt
            res.found = 1
            for d in range(depth):
                res.idx[d] = idx[d]
                res.coef[d] = coef[d]
            res.idx[depth] = j
            res.coef[depth] = 0
            if wt <= t.target:
                jf_min(t.stop_at, i0)
                return


cdef void _dfs_bits(const Task *t, int depth, int start, uint64_t *buf, int *idx, int *coef,
                    Result *res, int i0) noexcept nogil:
    # buf holds w partial sums; level ``depth`` is to be chosen, buf[depth-1] is the sum so far
    cdef int j, c, wt, syn, d, x
    cdef const uint64_t *prev = buf + (depth - 1) * t.stride
    cdef const uint64_t *r
    cdef uint64_t *cur
    if depth == t.w - 1:
        if t.stride == 1:
            _leaf_word(t, depth, start, prev[0], idx, coef, res, i0)
            return
        for j in range(start, t.k):
            for c in range(t.qm1):
                r = t.rows64 + (<int64_t>(j * t.qm1 + c)) * t.stride
                wt = _eval_bits(t, prev, r, &syn) + t.w
                res.count += 1
                if wt < res.best and (syn or not t.check_syn):
                    res.best = wt
                    res.found = 1
                    for d in range(depth):
                        res.idx[d] = idx[d]
                        res.coef[d] = coef[d]
                    res.idx[depth] = j
                    res.coef[depth] = c
                    if wt <= t.target:
                        jf_min(t.stop_at, i0)
                        return
            if jf_load(t.stop_at) < i0:
                return
        return
    cur = buf + depth * t.stride
    for j in range(start, t.k - (t.w - 1 - depth)):
        for c in range(t.qm1):
            r = t.rows64 + (<int64_t>(j * t.qm1 + c)) * t.stride
            for x in range(t.stride):
                cur[x] = prev[x] ^ r[x]
            idx[depth] = j
            coef[depth] = c
            _dfs_bits(t, depth + 1, j + 1, buf, idx, coef, res, i0)
            if res.found and res.best <= t.target:
                return
            if jf_load(t.stop_at) < i0:
                return


cdef inline int _eval_bytes(const Task *t, const uint8_t *base, const uint8_t *r, int *syn) noexcept nogil:
    cdef int x, wt = 0
    cdef int s = 0
    cdef uint8_t v
    for x in range(t.nred):
        wt += t.addt[base[x] * t.q + r[x]] != 0
    for x in range(t.nred, t.L):
        s |= t.addt[base[x] * t.q + r[x]]
    syn[0] = s != 0
    return wt


cdef void _dfs_bytes(const Task *t, int depth, int start, uint8_t *buf, int *idx, int *coef,
                     Result *res, int i0) noexcept nogil:
    cdef int j, c, wt, syn, d, x
    cdef const uint8_t *prev = buf + (depth - 1) * t.stride
    cdef const uint8_t *r
    cdef uint8_t *cur
    if depth == t.w - 1:
        for j in range(start, t.k):
            for c in range(t.qm1):
                r = t.rows8 + (<int64_t>(j * t.qm1 + c)) * t.stride
                wt = _eval_bytes(t, prev, r, &syn) + t.w
                res.count += 1
                if wt < res.best and (syn or not t.check_syn):
                    res.best = wt
                    res.found = 1
                    for d in range(depth):
                        res.idx[d] = idx[d]
                        res.coef[d] = coef[d]
                    res.idx[depth] = j
                    res.coef[depth] = c
                    if wt <= t.target:
                        jf_min(t.stop_at, i0)
                        return
            if jf_load(t.stop_at) < i0:
                return
        return
    cur = buf + depth * t.stride
    for j in range(start, t.k - (t.w - 1 - depth)):
        for c in range(t.qm1):
            r = t.rows8 + (<int64_t>(j * t.qm1 + c)) * t.stride
            for x in range(t.L):
                cur[x] = t.addt[prev[x] * t.q + r[x]]
            idx[depth] = j
            coef[depth] = c
            _dfs_bytes(t, depth + 1, j + 1, buf, idx, coef, res, i0)
            if res.found and res.best <= t.target:
                return
            if jf_load(t.stop_at) < i0:
                return


cdef void _run_first(const Task *t, int i0, Result *res, int mode) noexcept nogil:
    cdef int syn, wt
    cdef int idx[64]
    cdef int coef[64]
    cdef void *buf
    if jf_load(t.stop_at) < i0:
        return
    idx[0] = i0
    coef[0] = 0
    if mode == 0:
        buf = malloc(sizeof(uint64_t) * t.stride * t.w)
        memcpy(buf, t.rows64 + (<int64_t>(i0 * t.qm1)) * t.stride, sizeof(uint64_t) * t.stride)
    else:
        buf = malloc(t.stride * t.w)
        memcpy(buf, t.rows8 + (<int64_t>(i0 * t.qm1)) * t.stride, t.stride)
    if t.w == 1:
        if mode == 0:
            wt = _eval_bits(t, t.rows64 + (<int64_t>(i0 * t.qm1)) * t.stride, t.zero64, &syn)
        else:
            wt = _eval_bytes(t, t.rows8 + (<int64_t>(i0 * t.qm1)) * t.stride, t.zero8, &syn)
        wt += 1
        res.count += 1
        if wt < res.best and (syn or not t.check_syn):
            res.best = wt
            res.found = 1
            res.idx[0] = i0
            res.coef[0] = 0
            if wt <= t.target:
                jf_min(t.stop_at, i0)
    elif mode == 0:
        _dfs_bits(t, 1, i0 + 1, <uint64_t *>buf, idx, coef, res, i0)
    else:
        _dfs_bytes(t, 1, i0 + 1, <uint8_t *>buf, idx, coef, res, i0)
    free(buf)


def _search(mode, rows, int k, int qm1, int w, int lo, int hi, int target, int best,
            wmask=None, smask=None, int e=1, int W=1, addt=None, int q=2, int nred=0,
            bint check_syn=False, int threads=1):
    cdef Task t
    cdef int i, n_first = hi - lo
    cdef int stop_at = 2147483647
    cdef Result *res
    cdef const uint64_t[::1] r64
    cdef const uint64_t[::1] wm
    cdef const uint64_t[::1] sm
    cdef const uint8_t[::1] r8
    cdef const uint8_t[::1] at
    cdef uint64_t[::1] z64
    cdef uint8_t[::1] z8
    cdef int m = 0 if mode == "bits" else 1
    if w < 1 or w > 64:
        raise ValueError("level out of range")
    if n_first <= 0:
        return best, None, None, 0
    t.k = k
    t.qm1 = qm1
    t.w = w
    t.target = target
    t.check_syn = check_syn
    t.stop_at = &stop_at
    t.q = q
    if m == 0:
        r64 = rows
        wm = wmask
        sm = smask
        t.rows64 = &r64[0]
        t.wmask = &wm[0]
        t.smask = &sm[0]
        t.e = e
        t.W = W
        t.stride = e * W
        z64 = np.zeros(t.stride, dtype=np.uint64)
        t.zero64 = &z64[0]
    else:
        r8 = rows
        at = addt
        t.rows8 = &r8[0]
        t.addt = &at[0]
        t.nred = nred
        t.L = rows.shape[0] // max(1, k * qm1)
        t.stride = t.L
        z8 = np.zeros(max(1, t.L), dtype=np.uint8)
        t.zero8 = &z8[0]
    res = <Result *>malloc(sizeof(Result) * n_first)
    for i in range(n_first):
        res[i].best = best
        res[i].found = 0
        res[i].count = 0
    for i in prange(n_first, nogil=True, schedule="dynamic", num_threads=max(1, threads)):
        _run_first(&t, lo + i, &res[i], m)
    cdef uint64_t count = 0
    cdef int chosen = -1
    cdef int cbest = best
    for i in range(n_first):
        count += res[i].count
    # first index whose search hit the target wins (sequential-scan semantics)
    for i in range(n_first):
        if res[i].found and res[i].best <= target:
            chosen = i
            break
    if chosen < 0:
        for i in range(n_first):
            if res[i].found and res[i].best < cbest:
                cbest = res[i].best
                chosen = i
    if chosen < 0:
        free(res)
        return best, None, None, count
    idx = [res[chosen].idx[j] for j in range(w)]
    coef = [res[chosen].coef[j] for j in range(w)]
    cbest = res[chosen].best
    free(res)
    return cbest, idx, coef, count


def search_bits(rows, int k, int qm1, int e, int W, wmask, smask, bint check_syn,
                int w, int lo, int hi, int target, int best, int threads=1):
    return _search("bits", rows.reshape(-1), k, qm1, w, lo, hi, target, best,
                   wmask=wmask, smask=smask, e=e, W=W, check_syn=check_syn, threads=threads)


def search_bytes(rows, int k, int qm1, int nred, addt, int q, bint check_syn,
                 int w, int lo, int hi, int target, int best, int threads=1):
    return _search("bytes", rows.reshape(-1), k, qm1, w, lo, hi, target, best,
                   addt=addt.reshape(-1), q=q, nred=nred, check_syn=check_syn, threads=threads)
