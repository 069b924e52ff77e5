"""Invariant suite behind ``diverge verify``.

Each check returns ``(passed, detail)``; ``detail`` names the first
counterexample on failure. ``quick=True`` shrinks every horizon for smoke
runs.
"""
from __future__ import annotations

import time
from itertools import combinations

import numpy as np

from .graphs import Complete, Distance, Residue
from .primes import pure_site_arrays, sieve
from .streams import (
    BlockSwap,
    Colliding,
    Divergent,
    Identity,
    ResidueBlockSwap,
    positions_of,
    validate_prefix,
    values_range,
)
from .verify import collision_scan, completely_different_check, divergence_certificate, lemma_edge_law

CONSTRUCTIONS = (
    [Identity()]
    + [Divergent(i) for i in range(1, 7)]
    + [Colliding((2,)), Colliding((3,)), Colliding((2, 3, 5))]
    + [BlockSwap(i) for i in range(1, 13)]
    + [ResidueBlockSwap(q, i) for q in (2, 3, 5) for i in range(1, 9)]
)


def _shift(c) -> int:
    if isinstance(c, BlockSwap):
        return 1 << (c.i - 1)
    if isinstance(c, ResidueBlockSwap):
        return c.q << (c.i - 1)
    return 1


def round_trip(scale):
    n = scale(10**5)
    t = np.arange(1, n + 1, dtype=np.int64)
    for c in CONSTRUCTIONS:
        back = positions_of(c, values_range(c, 1, n + 1))
        bad = np.flatnonzero(back != t)
        if bad.size:
            return False, f"{c.spec()}: inverse(value({bad[0] + 1})) = {back[bad[0]]}"
    return True, f"{len(CONSTRUCTIONS)} constructions, t <= {n}"


def permutation_property(scale):
    checked = 0
    for n in sorted({scale(10**3), scale(10**6)}):
        for c in CONSTRUCTIONS:
            # a bounded shift larger than n/2 cannot cover 1..n/2 yet
            if _shift(c) > n // 2:
                continue
            rep = validate_prefix(c, n)
            checked += 1
            if not rep.ok:
                return False, f"{c.spec()} at n={n}: {rep.counterexample}"
    return True, f"{checked} prefixes"


def even_position_law(scale):
    jmax = scale(10**5)
    j = np.arange(1, jmax + 1, dtype=np.int64)
    even = {i: values_range(Divergent(i), 1, 2 * jmax + 1)[1::2] for i in range(1, 11)}
    for i, k in combinations(range(1, 11), 2):
        bad = np.flatnonzero(even[k] - even[i] != 2 * (k - i) * j)
        if bad.size:
            return False, f"i={i}, k={k}, j={bad[0] + 1}"
    return True, f"45 pairs, j <= {jmax}"


def swap_disjointness(scale):
    limit = scale(10**7)
    values, _, _ = pure_site_arrays(limit)
    members = np.concatenate([values, values + 1])
    uniq, counts = np.unique(members, return_counts=True)
    if (counts > 1).any():
        v = int(uniq[np.argmax(counts > 1)])
        return False, f"{v} belongs to two swap pairs"
    return True, f"{values.size} pure sites <= {limit}"


def blockswap_involution(scale):
    n = scale(10**5)
    for i in range(1, 13):
        c = BlockSwap(i)
        twice = _apply(c, values_range(c, 1, n + 1))
        bad = np.flatnonzero(twice != np.arange(1, n + 1))
        if bad.size:
            return False, f"BlockSwap({i}) at t={bad[0] + 1}"
    return True, f"i <= 12, t <= {n}"


def _apply(c, positions):
    """c evaluated at each entry of ``positions``."""
    top = int(positions.max())
    table = values_range(c, 1, top + 1)
    return table[positions - 1]


def residue_class_preservation(scale):
    n = scale(10**5)
    t = np.arange(1, n + 1, dtype=np.int64)
    for c in CONSTRUCTIONS:
        if isinstance(c, ResidueBlockSwap):
            bad = np.flatnonzero(values_range(c, 1, n + 1) % c.q != t % c.q)
            if bad.size:
                return False, f"{c.spec()} at t={bad[0] + 1}"
    return True, f"t <= {n}"


def edge_law(scale):
    jmax = scale(10**5)
    for i, k in combinations(range(1, 11), 2):
        res = lemma_edge_law(i, k, jmax)
        if not res:
            return False, f"i={i}, k={k}, j={res.at}"
    return True, f"45 pairs, j <= {jmax}"


def divergence(scale):
    horizon = scale(10**6)
    ths = [m for m in (1, 2, 5, 10, 50, 100) if m <= horizon]
    for i, k in combinations(range(1, 7), 2):
        cert = divergence_certificate(Divergent(i), Divergent(k), horizon, ths)
        if not cert.valid:
            bad = [m for m in ths if cert.first_passage[m] is None]
            return False, f"Divergent({i}) vs Divergent({k}) FAILED at M={bad[0]}"
    return True, f"15 pairs, horizon {horizon}"


def collisions(scale):
    n = scale(10**6)
    supports = [(j,) for j in range(2, 7)] + list(combinations(range(2, 7), 2))
    odd_primes = sieve(int(n ** 0.5) + 1)[1:].tolist()
    for s1, s2 in combinations(supports, 2):
        rep = collision_scan(Colliding(s1), Colliding(s2), Distance(1), n)
        want = set()
        for j in set(s1) ^ set(s2):
            for p in odd_primes:
                if p ** j + 1 <= n:
                    want |= {p ** j, p ** j + 1}
        got = set(rep.positions.tolist())
        if not got or got != want:
            diff = sorted(got ^ want)
            return False, f"{s1} vs {s2}: mismatch at {diff[:3]}"
    return True, f"105 support pairs, n = {n}"


def complete_difference(scale):
    n = scale(2**16)
    for i, j in combinations(range(1, 13), 2):
        res = completely_different_check(BlockSwap(i), BlockSwap(j), Complete(), n)
        if not res:
            return False, f"BlockSwap({i}) vs BlockSwap({j}) at t={res.at}"
    return True, f"66 pairs, n = {n}"


def residue_difference(scale):
    n = scale(2**14)
    for q in (2, 3, 5):
        for i, j in combinations(range(1, 9), 2):
            res = completely_different_check(ResidueBlockSwap(q, i), ResidueBlockSwap(q, j), Residue(q), n)
            if not res:
                return False, f"q={q}: ({i}, {j}) at t={res.at}"
    return True, f"84 pairs, n = {n}"


CHECKS = [
    ("round_trip", round_trip),
    ("permutation_property", permutation_property),
    ("divergent_even_law", even_position_law),
    ("colliding_swap_disjointness", swap_disjointness),
    ("blockswap_involution", blockswap_involution),
    ("residue_class_preservation", residue_class_preservation),
    ("lemma_edge_law", edge_law),
    ("divergence_certificates", divergence),
    ("collision_scans", collisions),
    ("complete_difference", complete_difference),
    ("residue_complete_difference", residue_difference),
]


def run_suite(quick: bool = False, timings: bool = True) -> dict:
    if quick:
        def scale(n):
            return max(64, n // 100)
    else:
        def scale(n):
            return n
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        passed, detail = fn(scale)
        entry = {"name": name, "passed": bool(passed), "detail": detail}
        if timings:
            entry["elapsed_ms"] = round((time.perf_counter() - t0) * 1000.0, 1)
        results.append(entry)
    return {"passed": all(r["passed"] for r in results), "quick": quick, "checks": results}
