"""Finite-prefix certificates for pairwise properties of constructions.

All scans run in chunks of ``CHUNK`` positions so memory stays bounded by
the output, not the horizon.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _kernels
from .graphs import GraphSpec, adjacent_array
from .streams import Construction, Divergent, values_range

CHUNK = 1 << 18
WEAK_FRACTION = 0.9


@dataclass(frozen=True)
class Check:
    """Outcome of an exhaustive prefix check; ``at`` is the first failure."""

    passed: bool
    at: Optional[int] = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class DifferenceSequence:
    pair: tuple
    horizon: int
    diffs: np.ndarray


@dataclass
class DivergenceCertificate:
    """First-passage times T_M: the smallest T with diff(t) >= M on T..horizon.

    ``None`` marks a FAILED threshold (the last position is still below M).
    """

    pair: tuple
    horizon: int
    thresholds: list[int]
    first_passage: dict[int, Optional[int]]

    def status(self, m: int) -> str:
        t = self.first_passage[m]
        if t is None:
            return "FAILED"
        if t > WEAK_FRACTION * self.horizon:
            return "WEAK"
        return "OK"

    @property
    def valid(self) -> bool:
        return all(t is not None for t in self.first_passage.values())

    @property
    def weak(self) -> list[int]:
        return [m for m in self.thresholds if self.status(m) == "WEAK"]

    @property
    def strong(self) -> bool:
        return self.valid and not self.weak

    def to_dict(self) -> dict:
        return {
            "pair": [c.spec() for c in self.pair],
            "horizon": self.horizon,
            "valid": self.valid,
            "thresholds": [
                {"M": m, "T": self.first_passage[m], "status": self.status(m)}
                for m in self.thresholds
            ],
        }


@dataclass
class CollisionReport:
    pair: tuple
    graph: GraphSpec
    horizon: int
    positions: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.positions.size)

    def rows(self) -> Iterator[tuple[int, int, int]]:
        """(position, value1, value2) for each collision."""
        c1, c2 = self.pair
        for t in self.positions.tolist():
            yield t, c1.value_at(t), c2.value_at(t)


def _chunks(n: int, chunk: int = CHUNK):
    start = 1
    while start <= n:
        stop = min(start + chunk, n + 1)
        yield start, stop
        start = stop


def iter_differences(c1: Construction, c2: Construction, n: int, chunk: int = CHUNK):
    """Yield ``(start, |c1 - c2| on start..stop-1)`` blocks up to position n."""
    for start, stop in _chunks(n, chunk):
        yield start, np.abs(values_range(c1, start, stop) - values_range(c2, start, stop))


def difference_sequence(c1: Construction, c2: Construction, n: int) -> DifferenceSequence:
    if n < 1:
        raise ValueError("n must be >= 1")
    out = np.empty(n, dtype=np.int64)
    for start, d in iter_differences(c1, c2, n):
        out[start - 1 : start - 1 + d.size] = d
    return DifferenceSequence((c1, c2), n, out)


def divergence_certificate(
    c1: Construction, c2: Construction, horizon: int, thresholds: Sequence[int]
) -> DivergenceCertificate:
    """Scan backwards from ``horizon`` for the last position below each M."""
    ths = [int(m) for m in thresholds]
    if not ths:
        raise ValueError("at least one threshold is required")
    if any(b < a for a, b in zip(ths, ths[1:])):
        raise ValueError(f"thresholds must be ascending: {ths}")
    if horizon < max(ths):
        raise ValueError(f"horizon {horizon} < largest threshold {max(ths)}")
    passage: dict[int, Optional[int]] = {}
    pending = sorted(set(ths))
    # Walk chunks from the end. A threshold still pending has every later
    # diff >= M, so its last sub-M entry in this chunk is the global one.
    spans = list(_chunks(horizon))
    for start, stop in reversed(spans):
        if not pending:
            break
        d = np.abs(values_range(c1, start, stop) - values_range(c2, start, stop))
        last = _kernels.first_passage(d, np.asarray(pending, dtype=np.int64))
        still = []
        for m, idx in zip(pending, last.tolist()):
            if idx >= 0:
                t = start + idx + 1
                passage[m] = None if t > horizon else t
            else:
                still.append(m)
        pending = still
    for m in pending:
        passage[m] = 1
    return DivergenceCertificate((c1, c2), horizon, ths, {m: passage[m] for m in ths})


def collision_scan(c1: Construction, c2: Construction, graph: GraphSpec, n: int) -> CollisionReport:
    """Every position t <= n where c1(t) and c2(t) are adjacent in ``graph``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    found = []
    for start, stop in _chunks(n):
        hit = adjacent_array(graph, values_range(c1, start, stop), values_range(c2, start, stop))
        found.append(np.flatnonzero(hit) + start)
    return CollisionReport((c1, c2), graph, n, np.concatenate(found).astype(np.int64))


def completely_different_check(c1: Construction, c2: Construction, graph: GraphSpec, n: int) -> Check:
    """Pass iff c1(t) ~ c2(t) in ``graph`` for every t <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for start, stop in _chunks(n):
        hit = adjacent_array(graph, values_range(c1, start, stop), values_range(c2, start, stop))
        if not hit.all():
            return Check(False, int(np.argmin(hit)) + start)
    return Check(True)


def lemma_edge_law(i: int, k: int, jmax: int) -> Check:
    """Even-position differences of Divergent(k) and Divergent(i) are 2(k-i)j."""
    if not 1 <= i < k:
        raise ValueError(f"need 1 <= i < k, got i={i}, k={k}")
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    a, b = Divergent(i), Divergent(k)
    for start, stop in _chunks(2 * jmax):
        d = np.abs(values_range(b, start, stop) - values_range(a, start, stop))
        t = np.arange(start, stop, dtype=np.int64)
        even = t % 2 == 0
        bad = np.flatnonzero(d[even] != (k - i) * t[even])
        if bad.size:
            return Check(False, int(t[even][bad[0]]) // 2)
    return Check(True)
