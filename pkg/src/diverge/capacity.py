"""Exact omega(G_n): the largest family of pairwise G-different permutations
of [n], found as a maximum clique of the G-difference graph on S_n."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations
from math import comb, log2
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .graphs import Distance, FiniteEdges, GraphSpec, adjacency_matrix, adjacent

DEFAULT_LIMIT = 6
LONG_RUNNING_N = 6

Perm = tuple[int, ...]


class CapacityLimitError(ValueError):
    """n is above the configured size limit for materialising S_n."""


class CliqueTimeout(RuntimeError):
    """The clique search ran past its deadline; no answer is claimed."""


def one_line(p: Sequence[int]) -> str:
    """One-line notation, e.g. (2, 4, 1, 3) -> '2413'."""
    if len(p) > 9:
        return " ".join(map(str, p))
    return "".join(map(str, p))


def parse_one_line(s: str) -> Perm:
    s = s.strip()
    p = tuple(int(x) for x in (s.split() if " " in s else s))
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of [{len(p)}]: {s!r}")
    return p


def g_different(p: Sequence[int], r: Sequence[int], graph: GraphSpec) -> bool:
    """True iff some position holds two ``graph``-adjacent values."""
    if len(p) != len(r):
        raise ValueError(f"length mismatch: {len(p)} != {len(r)}")
    return any(adjacent(graph, a, b) for a, b in zip(p, r))


@dataclass
class DifferenceGraph:
    n: int
    base: GraphSpec
    vertices: list[Perm] = field(repr=False)
    adjacency: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2


def build_difference_graph(n: int, graph: GraphSpec, limit: int = DEFAULT_LIMIT) -> DifferenceGraph:
    """Vertices are the n! permutations in lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise CapacityLimitError(f"n = {n} exceeds the limit {limit} ({n}! vertices)")
    if isinstance(graph, FiniteEdges) and graph.n < n:
        raise ValueError(f"finite graph has {graph.n} vertices, need at least {n}")
    verts = list(permutations(range(1, n + 1)))
    perms = np.array(verts, dtype=np.int64).reshape(len(verts), n)
    base = adjacency_matrix(graph, n)
    adj = np.zeros((len(verts), len(verts)), dtype=bool)
    for t in range(n):
        col = perms[:, t]
        adj |= base[col[:, None], col[None, :]]
    return DifferenceGraph(n, graph, verts, adj)


@dataclass
class CapacityResult:
    n: int
    omega: int
    witness: list[Perm]
    elapsed_ms: float = 0.0

    @property
    def rate(self) -> float:
        """(1/n) log2 omega."""
        return log2(self.omega) / self.n if self.omega > 0 else float("-inf")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "omega": self.omega,
            "rate": self.rate,
            "witness": [one_line(p) for p in self.witness],
        }


def _kernel_class(backend: Optional[str]):
    if backend is None:
        return _kernels.CliqueKernel
    try:
        return _kernels.BACKENDS[backend].CliqueKernel
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {backend!r}") from None


def _search(kernel, cands, lower, target, deadline):
    found, timed_out = kernel.search(cands, lower, target, deadline)
    if timed_out:
        raise CliqueTimeout("clique search exceeded its time limit")
    return found


def smallest_last_order(adj: np.ndarray, tiebreak: Optional[np.ndarray] = None) -> np.ndarray:
    """Degeneracy ordering: repeatedly strip a minimum-degree vertex; the
    vertex stripped last comes first. Ties go to the smallest ``tiebreak``
    (vertex index when omitted)."""
    size = adj.shape[0]
    deg = adj.sum(axis=1).astype(np.int64)
    alive = np.ones(size, dtype=bool)
    key = np.arange(size, dtype=float) if tiebreak is None else np.asarray(tiebreak, dtype=float)
    removed = []
    for _ in range(size):
        cand = np.flatnonzero(alive & (deg == deg[alive].min()))
        v = int(cand[np.argmin(key[cand])])
        removed.append(v)
        alive[v] = False
        deg -= adj[v]
    return np.array(removed[::-1], dtype=np.int64)


def clique_search(
    adj: np.ndarray,
    *,
    deterministic: bool = True,
    seed: int = 0,
    timeout_ms: Optional[float] = None,
    backend: Optional[str] = None,
) -> list[int]:
    """A maximum clique of ``adj`` as sorted vertex indices.

    In deterministic mode the result is the lexicographically least maximum
    clique. Otherwise vertices are shuffled with ``seed`` and the first
    maximum clique found is returned.
    """
    adj = np.asarray(adj, dtype=bool)
    size = adj.shape[0]
    if size == 0:
        return []
    deadline = None if timeout_ms is None else time.perf_counter() + timeout_ms / 1000.0
    tiebreak = None if deterministic else np.random.default_rng(seed).random(size)
    order = smallest_last_order(adj, tiebreak)
    label = np.empty(size, dtype=np.int64)
    label[order] = np.arange(size)
    kernel = _kernel_class(backend)(adj[np.ix_(order, order)])

    best = _search(kernel, range(size), 0, 0, deadline)
    omega = len(best)
    if not deterministic:
        return sorted(int(order[v]) for v in best)

    # Grow the witness one vertex at a time, always taking the smallest
    # vertex that still extends to a clique of size omega.
    chosen: list[int] = []
    cand = list(range(size))
    while len(chosen) < omega:
        need = omega - len(chosen) - 1
        for v in cand:
            nxt = [u for u in cand if u > v and adj[v, u]]
            if need == 0:
                break
            if len(nxt) < need:
                continue
            if _search(kernel, label[nxt].tolist(), need - 1, need, deadline) is not None:
                break
        else:  # pragma: no cover - omega was just attained
            raise RuntimeError("lexicographic refinement lost the maximum clique")
        chosen.append(v)
        cand = nxt
    return chosen


def max_clique(
    graph: DifferenceGraph,
    *,
    deterministic: bool = True,
    seed: int = 0,
    timeout_ms: Optional[float] = None,
    backend: Optional[str] = None,
    use_symmetry: bool = True,
) -> CapacityResult:
    """Exact clique number of the difference graph with a verified witness.

    Permuting positions preserves G-difference, so the graph is
    vertex-transitive and some maximum clique contains the identity
    (vertex 0). With ``use_symmetry`` the search runs only on the
    identity's neighbourhood; the lexicographically least maximum clique
    contains vertex 0 as well, so deterministic witnesses are unchanged.
    """
    t0 = time.perf_counter()
    kw = dict(deterministic=deterministic, seed=seed, timeout_ms=timeout_ms, backend=backend)
    if use_symmetry and graph.order > 1:
        nb = np.flatnonzero(graph.adjacency[0])
        sub = clique_search(graph.adjacency[np.ix_(nb, nb)], **kw)
        idx = [0] + [int(nb[i]) for i in sub]
    else:
        idx = clique_search(graph.adjacency, **kw)
    witness = [graph.vertices[i] for i in idx]
    for a in range(len(witness)):
        for b in range(a + 1, len(witness)):
            if not g_different(witness[a], witness[b], graph.base):
                raise AssertionError(f"witness pair {witness[a]}, {witness[b]} is not G-different")
    return CapacityResult(graph.n, len(witness), witness, (time.perf_counter() - t0) * 1000.0)


def middle_binomial(n: int) -> int:
    return comb(n, n // 2)


@dataclass
class TableRow:
    result: CapacityResult
    conjecture: Optional[int] = None
    elapsed_ms: float = 0.0

    @property
    def n(self) -> int:
        return self.result.n

    @property
    def omega(self) -> int:
        return self.result.omega

    @property
    def rate(self) -> float:
        return self.result.rate

    @property
    def match(self) -> Optional[bool]:
        return None if self.conjecture is None else self.omega == self.conjecture


def omega_table(
    graph: GraphSpec,
    n_max: int,
    *,
    n_min: int = 2,
    limit: int = DEFAULT_LIMIT,
    deterministic: bool = True,
    seed: int = 0,
    timeout_ms: Optional[float] = None,
    backend: Optional[str] = None,
) -> list[TableRow]:
    """One exact omega per n in [n_min, n_max].

    The middle-binomial conjecture column is filled only for Distance(1).
    ``timeout_ms`` applies per row.
    """
    if n_max > limit:
        raise CapacityLimitError(f"n_max = {n_max} exceeds the limit {limit}")
    rows = []
    for n in range(n_min, n_max + 1):
        t0 = time.perf_counter()
        dg = build_difference_graph(n, graph, limit=limit)
        res = max_clique(dg, deterministic=deterministic, seed=seed, timeout_ms=timeout_ms, backend=backend)
        conj = middle_binomial(n) if graph == Distance(1) else None
        rows.append(TableRow(res, conj, (time.perf_counter() - t0) * 1000.0))
    return rows
