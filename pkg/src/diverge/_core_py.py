"""Pure Python/numpy kernels. Same API as the compiled ``_core`` module."""
from __future__ import annotations

import time

import numpy as np

BACKEND = "python"


def fill_divergent(start: int, stop: int, i: int) -> np.ndarray:
    t = np.arange(start, stop, dtype=np.int64)
    out = np.empty_like(t)
    even = t % 2 == 0
    out[even] = i * t[even]
    m = (t[~even] + 1) // 2
    out[~even] = m + (m - 1) // (2 * i - 1)
    return out


def _swap_halves(s: np.ndarray, i: int) -> np.ndarray:
    half = 1 << (i - 1)
    low = ((s - 1) & ((half << 1) - 1)) < half
    return np.where(low, s + half, s - half)


def fill_blockswap(start: int, stop: int, i: int) -> np.ndarray:
    return _swap_halves(np.arange(start, stop, dtype=np.int64), i)


def fill_residue(start: int, stop: int, q: int, i: int) -> np.ndarray:
    t = np.arange(start, stop, dtype=np.int64)
    r = t % q
    r = np.where(r == 0, q, r)
    s = (t - r) // q + 1
    return r + (_swap_halves(s, i) - 1) * q


def first_passage(diffs: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Index of the last entry below each threshold, or -1 if there is none."""
    diffs = np.asarray(diffs, dtype=np.int64)
    thresholds = np.asarray(thresholds, dtype=np.int64)
    if diffs.size == 0:
        return np.full(thresholds.size, -1, dtype=np.int64)
    tail_min = np.minimum.accumulate(diffs[::-1])[::-1]
    # tail_min is non-decreasing; the first index whose tail reaches M
    # sits one past the last entry below M.
    return np.searchsorted(tail_min, thresholds, side="left").astype(np.int64) - 1


class CliqueKernel:
    """Bitset branch-and-bound with greedy colouring bounds.

    Vertices are the row indices of ``adj``. Colouring visits candidates in
    ascending index order, so callers control the initial ordering by
    relabelling the matrix.
    """

    def __init__(self, adj):
        adj = np.asarray(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        self.n = adj.shape[0]
        self._nbr = []
        for row in adj:
            bits = 0
            for v in np.flatnonzero(row).tolist():
                bits |= 1 << v
            self._nbr.append(bits)

    def search(self, candidates, lower=0, target=0, deadline=None):
        """Find a clique inside ``candidates`` larger than ``lower``.

        Stops early once a clique of size ``target`` is found (0 = never).
        Returns ``(members or None, timed_out)``.
        """
        P = 0
        for v in candidates:
            P |= 1 << int(v)
        self._best = None
        self._best_size = lower
        self._target = target
        self._deadline = deadline
        self._nodes = 0
        self._stop = False
        self._timed_out = False
        if P:
            self._expand([], P)
        return self._best, self._timed_out

    def _expand(self, R, P):
        nbr = self._nbr
        order, colour = [], []
        U, k = P, 0
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~nbr[v] & ~low
                U &= ~low
                order.append(v)
                colour.append(k)
        depth = len(R)
        for idx in range(len(order) - 1, -1, -1):
            if self._stop or depth + colour[idx] <= self._best_size:
                return
            v = order[idx]
            NP = P & nbr[v]
            R.append(v)
            if NP:
                self._nodes += 1
                if self._deadline is not None and self._nodes & 1023 == 0:
                    if time.perf_counter() > self._deadline:
                        self._stop = self._timed_out = True
                        R.pop()
                        return
                self._expand(R, NP)
            elif depth + 1 > self._best_size:
                self._best = list(R)
                self._best_size = depth + 1
                if self._target and self._best_size >= self._target:
                    self._stop = True
            R.pop()
            P &= ~(1 << v)
