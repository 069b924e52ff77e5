# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Mirrors ``_core_py`` function for function."""
import time

import numpy as np

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "cython"


def fill_divergent(int64_t start, int64_t stop, int64_t i):
    cdef Py_ssize_t n = max(stop - start, 0), k
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t t, m, q1 = 2 * i - 1
    with nogil:
        for k in range(n):
            t = start + k
            if t & 1:
                m = (t + 1) >> 1
                o[k] = m + (m - 1) // q1
            else:
                o[k] = i * t
    return out


cdef inline int64_t _swap(int64_t s, int64_t half) nogil:
    if ((s - 1) & ((half << 1) - 1)) < half:
        return s + half
    return s - half


def fill_blockswap(int64_t start, int64_t stop, int i):
    cdef Py_ssize_t n = max(stop - start, 0), k
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t half = (<int64_t>1) << (i - 1)
    with nogil:
        for k in range(n):
            o[k] = _swap(start + k, half)
    return out


def fill_residue(int64_t start, int64_t stop, int64_t q, int i):
    cdef Py_ssize_t n = max(stop - start, 0), k
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t half = (<int64_t>1) << (i - 1)
    cdef int64_t t, r, s
    with nogil:
        for k in range(n):
            t = start + k
            r = t % q
            if r == 0:
                r = q
            s = (t - r) // q + 1
            o[k] = r + (_swap(s, half) - 1) * q
    return out


def first_passage(diffs, thresholds):
    cdef int64_t[::1] d = np.ascontiguousarray(diffs, dtype=np.int64)
    cdef int64_t[::1] th = np.ascontiguousarray(thresholds, dtype=np.int64)
    out = np.full(th.shape[0], -1, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef Py_ssize_t idx = d.shape[0] - 1, j = th.shape[0] - 1
    cdef int64_t run_min
    if not _sorted(th):
        return _fallback_unsorted(diffs, thresholds)
    if idx < 0:
        return out
    # Walk backwards keeping the tail minimum; the largest threshold is
    # resolved first since its last sub-threshold entry lies furthest right.
    run_min = d[idx]
    with nogil:
        while j >= 0:
            while idx >= 0 and run_min >= th[j]:
                idx -= 1
                if idx >= 0 and d[idx] < run_min:
                    run_min = d[idx]
            o[j] = idx
            j -= 1
    return out


cdef bint _sorted(int64_t[::1] th):
    cdef Py_ssize_t k
    for k in range(1, th.shape[0]):
        if th[k] < th[k - 1]:
            return False
    return True


def _fallback_unsorted(diffs, thresholds):
    thresholds = np.asarray(thresholds, dtype=np.int64)
    order = np.argsort(thresholds, kind="stable")
    res = first_passage(diffs, thresholds[order])
    out = np.empty_like(res)
    out[order] = res
    return out


cdef class CliqueKernel:
    """Bitset branch-and-bound with greedy colouring bounds."""

    cdef readonly int n
    cdef int w
    cdef uint64_t* adj
    cdef int* cur
    cdef int* best
    cdef int best_size
    cdef int target
    cdef object deadline
    cdef long nodes
    cdef bint stop
    cdef bint timed_out

    def __cinit__(self, adj):
        a = np.asarray(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        self.n = a.shape[0]
        self.w = (self.n + 63) // 64 or 1
        self.adj = <uint64_t*>malloc(self.n * self.w * sizeof(uint64_t) + 8)
        self.cur = <int*>malloc((self.n + 1) * sizeof(int))
        self.best = <int*>malloc((self.n + 1) * sizeof(int))
        if self.adj == NULL or self.cur == NULL or self.best == NULL:
            raise MemoryError()
        memset(self.adj, 0, self.n * self.w * sizeof(uint64_t))
        cdef Py_ssize_t u, v
        cdef unsigned char[:, ::1] m = np.ascontiguousarray(a, dtype=np.uint8)
        for u in range(self.n):
            for v in range(self.n):
                if m[u, v] and u != v:
                    self.adj[u * self.w + (v >> 6)] |= (<uint64_t>1) << (v & 63)

    def __dealloc__(self):
        free(self.adj)
        free(self.cur)
        free(self.best)

    def search(self, candidates, int lower=0, int target=0, deadline=None):
        cdef uint64_t* P = <uint64_t*>malloc(self.w * sizeof(uint64_t))
        if P == NULL:
            raise MemoryError()
        memset(P, 0, self.w * sizeof(uint64_t))
        cdef bint any_bit = False
        cdef int v
        for c in candidates:
            v = c
            if v < 0 or v >= self.n:
                free(P)
                raise IndexError(f"vertex {v} out of range")
            P[v >> 6] |= (<uint64_t>1) << (v & 63)
            any_bit = True
        self.best_size = lower
        self.target = target
        self.deadline = deadline
        self.nodes = 0
        self.stop = False
        self.timed_out = False
        try:
            if any_bit:
                self._expand(P, 0)
        finally:
            free(P)
        if self.best_size > lower:
            return [self.best[k] for k in range(self.best_size)], bool(self.timed_out)
        return None, bool(self.timed_out)

    cdef int _expand(self, uint64_t* P, int depth) except -1:
        cdef int w = self.w, x, wi, cnt = 0, m = 0, k = 0, idx, v, b
        cdef uint64_t any_np
        for x in range(w):
            cnt += __builtin_popcountll(P[x])
        cdef int* order = <int*>malloc(cnt * sizeof(int))
        cdef int* colour = <int*>malloc(cnt * sizeof(int))
        cdef uint64_t* U = <uint64_t*>malloc(3 * w * sizeof(uint64_t))
        if order == NULL or colour == NULL or U == NULL:
            free(order); free(colour); free(U)
            raise MemoryError()
        cdef uint64_t* Q = U + w
        cdef uint64_t* NP = U + 2 * w
        cdef uint64_t* nv
        memcpy(U, P, w * sizeof(uint64_t))
        while m < cnt:
            k += 1
            memcpy(Q, U, w * sizeof(uint64_t))
            for wi in range(w):
                while Q[wi]:
                    b = __builtin_ctzll(Q[wi])
                    v = (wi << 6) + b
                    Q[wi] &= Q[wi] - 1
                    U[wi] &= ~((<uint64_t>1) << b)
                    nv = self.adj + v * w
                    for x in range(wi, w):
                        Q[x] &= ~nv[x]
                    order[m] = v
                    colour[m] = k
                    m += 1
        try:
            for idx in range(cnt - 1, -1, -1):
                if self.stop or depth + colour[idx] <= self.best_size:
                    break
                v = order[idx]
                self.cur[depth] = v
                nv = self.adj + v * w
                any_np = 0
                for x in range(w):
                    NP[x] = P[x] & nv[x]
                    any_np |= NP[x]
                if any_np:
                    self.nodes += 1
                    if self.deadline is not None and (self.nodes & 1023) == 0:
                        if time.perf_counter() > self.deadline:
                            self.stop = True
                            self.timed_out = True
                            break
                    self._expand(NP, depth + 1)
                elif depth + 1 > self.best_size:
                    memcpy(self.best, self.cur, (depth + 1) * sizeof(int))
                    self.best_size = depth + 1
                    if self.target and self.best_size >= self.target:
                        self.stop = True
                P[v >> 6] &= ~((<uint64_t>1) << (v & 63))
        finally:
            free(order)
            free(colour)
            free(U)
        return 0
