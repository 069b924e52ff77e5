"""Adjacency predicates for graphs on the naturals.

Vertices start at 1. ``FiniteEdges`` graphs live on ``[n]`` and read from a
plain text format::

    n
    a b
    a b
    ...
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

import numpy as np


@dataclass(frozen=True)
class Distance:
    """L(k): a and b adjacent iff |a - b| = k."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"distance must be >= 1, got {self.k}")

    def spec(self) -> str:
        return f"distance:{self.k}"


@dataclass(frozen=True)
class Complete:
    def spec(self) -> str:
        return "complete"


@dataclass(frozen=True)
class Residue:
    """Distinct vertices congruent mod q are adjacent."""

    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"modulus must be >= 2, got {self.q}")

    def spec(self) -> str:
        return f"residue:{self.q}"


@dataclass(frozen=True)
class FiniteEdges:
    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            a, b = (int(x) for x in e)
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge ({a}, {b}) outside [1, {self.n}]")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))

    def spec(self) -> str:
        return f"finite:{self.n}:{len(self.edges)}"

    def matrix(self) -> np.ndarray:
        """(n+1) x (n+1) boolean matrix; row/column 0 unused."""
        m = np.zeros((self.n + 1, self.n + 1), dtype=bool)
        for a, b in self.edges:
            m[a, b] = m[b, a] = True
        return m


GraphSpec = Union[Distance, Complete, Residue, FiniteEdges]


def adjacent(g: GraphSpec, a: int, b: int) -> bool:
    if a < 1 or b < 1:
        raise ValueError(f"vertices start at 1, got ({a}, {b})")
    if isinstance(g, Distance):
        return abs(a - b) == g.k
    if isinstance(g, Complete):
        return a != b
    if isinstance(g, Residue):
        return a != b and (a - b) % g.q == 0
    if isinstance(g, FiniteEdges):
        if a > g.n or b > g.n:
            raise ValueError(f"vertex outside [1, {g.n}]: ({a}, {b})")
        return (min(a, b), max(a, b)) in g.edges
    raise TypeError(f"not a graph spec: {g!r}")


def adjacent_array(g: GraphSpec, a, b) -> np.ndarray:
    """Elementwise ``adjacent`` over two equal-length integer arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape:
        raise ValueError("shape mismatch")
    if a.size and min(int(a.min()), int(b.min())) < 1:
        raise ValueError("vertices start at 1")
    if isinstance(g, Distance):
        return np.abs(a - b) == g.k
    if isinstance(g, Complete):
        return a != b
    if isinstance(g, Residue):
        return (a != b) & ((a - b) % g.q == 0)
    if isinstance(g, FiniteEdges):
        if a.size and max(int(a.max()), int(b.max())) > g.n:
            raise ValueError(f"vertex outside [1, {g.n}]")
        return g.matrix()[a, b]
    raise TypeError(f"not a graph spec: {g!r}")


def adjacency_matrix(g: GraphSpec, n: int) -> np.ndarray:
    """Boolean matrix of ``g`` restricted to [n], indexed 1..n (row 0 unused)."""
    v = np.arange(n + 1, dtype=np.int64)
    v[0] = 1
    a, b = np.meshgrid(v, v, indexing="ij")
    m = adjacent_array(g, a, b)
    m[0, :] = m[:, 0] = False
    return m


def distance_partition_check(kmax: int, n: int) -> bool:
    """Every pair in [n] with gap <= kmax lies in exactly one L(k), k <= kmax,
    and pairs with a larger gap lie in none."""
    if kmax < 1 or n < 2:
        raise ValueError("need kmax >= 1 and n >= 2")
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            hits = sum(adjacent(Distance(k), a, b) for k in range(1, kmax + 1))
            if hits != (1 if b - a <= kmax else 0):
                return False
    return True


def parse_graph(text: str) -> GraphSpec:
    """``distance:k`` | ``complete`` | ``residue:q`` | ``file:PATH``."""
    head, _, rest = text.strip().partition(":")
    head = head.lower()
    try:
        if head == "distance":
            return Distance(int(rest))
        if head == "complete" and not rest:
            return Complete()
        if head == "residue":
            return Residue(int(rest))
    except ValueError as exc:
        raise ValueError(f"bad graph spec {text!r}: {exc}") from None
    if head == "file" and rest:
        return read_edges(rest)
    raise ValueError(f"bad graph spec {text!r}")


def parse_edges(lines: Iterable[str]) -> FiniteEdges:
    rows = [ln.split("#", 1)[0].strip() for ln in lines]
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError("empty edge list: first line must hold n")
    n = int(rows[0])
    edges = []
    for lineno, r in enumerate(rows[1:], start=2):
        parts = r.split()
        if len(parts) != 2:
            raise ValueError(f"edge line {lineno}: expected 'a b', got {r!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return FiniteEdges(n, frozenset(edges))


def read_edges(path) -> FiniteEdges:
    return parse_edges(Path(path).read_text().splitlines())


def format_edges(g: FiniteEdges) -> str:
    lines = [str(g.n)] + [f"{a} {b}" for a, b in sorted(g.edges)]
    return "\n".join(lines) + "\n"
