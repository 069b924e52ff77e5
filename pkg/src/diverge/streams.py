"""Infinite permutations of the naturals given by closed forms.

Every construction is a bijection of {1, 2, 3, ...} with O(polylog t)
forward and inverse evaluation. Positions and values are 1-based.

Constructions
-------------
Identity
    t -> t.
Divergent(i)
    Position 2j holds 2ij; odd positions hold the remaining numbers (the
    non-multiples of 2i) in increasing order. Divergent(1) is the identity.
Colliding(support)
    Transposes p**j and p**j + 1 for every odd prime p and j in support.
BlockSwap(i)
    Cuts the naturals into blocks of length 2**i and exchanges the two
    halves of every block.
ResidueBlockSwap(q, i)
    BlockSwap(i) applied separately to each residue class mod q.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from . import _kernels
from .primes import PureSite, pure_root, pure_site_arrays, pure_sites_up_to

__all__ = [
    "Identity",
    "Divergent",
    "Colliding",
    "BlockSwap",
    "ResidueBlockSwap",
    "Construction",
    "HorizonError",
    "ValidityReport",
    "PureSite",
    "DEFAULT_HORIZON_CAP",
    "horizon_cap",
    "nth_non_multiple",
    "value_at",
    "inverse_at",
    "prefix",
    "values_range",
    "positions_of",
    "pure_sites_up_to",
    "validate_prefix",
    "check_values",
]

DEFAULT_HORIZON_CAP = 10**8
_INT64_SAFE = 2**62


class HorizonError(RuntimeError):
    """A position or prefix length exceeds the configured horizon cap."""


def horizon_cap() -> int:
    """Current cap; ``DIVERGE_HORIZON_CAP`` overrides the default."""
    raw = os.environ.get("DIVERGE_HORIZON_CAP")
    if not raw:
        return DEFAULT_HORIZON_CAP
    return int(float(raw))


def _check_horizon(n: int, what: str = "position") -> None:
    cap = horizon_cap()
    if n > cap:
        raise HorizonError(f"{what} {n} exceeds horizon cap {cap}")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def nth_non_multiple(m: int, q: int) -> int:
    """The m-th smallest positive integer not divisible by q."""
    _need(q >= 2, f"q must be >= 2, got {q}")
    _need(m >= 1, f"m must be >= 1, got {m}")
    return m + (m - 1) // (q - 1)


def _swap_halves(s: int, i: int) -> int:
    half = 1 << (i - 1)
    return s + half if (s - 1) % (2 * half) < half else s - half


@dataclass(frozen=True)
class Identity:
    def value_at(self, t: int) -> int:
        return t

    def inverse_at(self, v: int) -> int:
        return v

    def _fill(self, start: int, stop: int) -> np.ndarray:
        return np.arange(start, stop, dtype=np.int64)

    def _max_value(self, stop: int) -> int:
        return stop

    def spec(self) -> str:
        return "identity"


@dataclass(frozen=True)
class Divergent:
    i: int

    def __post_init__(self):
        _need(self.i >= 1, f"Divergent index must be >= 1, got {self.i}")

    def value_at(self, t: int) -> int:
        if t % 2 == 0:
            return self.i * t
        return nth_non_multiple((t + 1) // 2, 2 * self.i)

    def inverse_at(self, v: int) -> int:
        q = 2 * self.i
        if v % q == 0:
            return 2 * (v // q)
        return 2 * (v - v // q) - 1

    def _fill(self, start: int, stop: int) -> np.ndarray:
        return _kernels.fill_divergent(start, stop, self.i)

    def _max_value(self, stop: int) -> int:
        return self.i * stop

    def spec(self) -> str:
        return f"divergent:{self.i}"


@dataclass(frozen=True)
class Colliding:
    support: tuple[int, ...] = field()

    def __post_init__(self):
        sup = tuple(int(j) for j in self.support)
        _need(len(sup) > 0, "Colliding support must be nonempty")
        _need(all(a < b for a, b in zip(sup, sup[1:])), f"support must be strictly ascending: {sup}")
        _need(sup[0] >= 2, f"exponents must be >= 2 (pure numbers), got {sup[0]}")
        object.__setattr__(self, "support", sup)

    def value_at(self, t: int) -> int:
        if t % 2 == 1 and pure_root(t, self.support):
            return t + 1
        if t % 2 == 0 and pure_root(t - 1, self.support):
            return t - 1
        return t

    # a product of disjoint transpositions is its own inverse
    inverse_at = value_at

    def _fill(self, start: int, stop: int) -> np.ndarray:
        out = np.arange(start, stop, dtype=np.int64)
        sites, _, _ = pure_site_arrays(stop, self.support)
        sites = sites[sites + 1 >= start]
        for s in sites.tolist():
            if start <= s < stop:
                out[s - start] = s + 1
            if start <= s + 1 < stop:
                out[s + 1 - start] = s
        return out

    def _max_value(self, stop: int) -> int:
        return stop + 1

    def spec(self) -> str:
        return "colliding:" + ",".join(map(str, self.support))


@dataclass(frozen=True)
class BlockSwap:
    i: int

    def __post_init__(self):
        _need(self.i >= 1, f"BlockSwap index must be >= 1, got {self.i}")

    def value_at(self, t: int) -> int:
        return _swap_halves(t, self.i)

    inverse_at = value_at

    def _fill(self, start: int, stop: int) -> np.ndarray:
        return _kernels.fill_blockswap(start, stop, self.i)

    def _max_value(self, stop: int) -> int:
        return stop + (1 << (self.i - 1))

    def spec(self) -> str:
        return f"blockswap:{self.i}"


@dataclass(frozen=True)
class ResidueBlockSwap:
    q: int
    i: int

    def __post_init__(self):
        _need(self.q >= 2, f"ResidueBlockSwap modulus must be >= 2, got {self.q}")
        _need(self.i >= 1, f"ResidueBlockSwap index must be >= 1, got {self.i}")

    def value_at(self, t: int) -> int:
        r = t % self.q or self.q
        s = (t - r) // self.q + 1
        return r + (_swap_halves(s, self.i) - 1) * self.q

    inverse_at = value_at

    def _fill(self, start: int, stop: int) -> np.ndarray:
        return _kernels.fill_residue(start, stop, self.q, self.i)

    def _max_value(self, stop: int) -> int:
        return stop + self.q * (1 << (self.i - 1))

    def spec(self) -> str:
        return f"residueswap:{self.q}:{self.i}"


Construction = Union[Identity, Divergent, Colliding, BlockSwap, ResidueBlockSwap]


def value_at(c: Construction, t: int) -> int:
    """Value of construction ``c`` at 1-based position ``t``."""
    _need(t >= 1, f"position must be >= 1, got {t}")
    _check_horizon(t)
    return c.value_at(t)


def inverse_at(c: Construction, v: int) -> int:
    """The unique position holding value ``v``."""
    _need(v >= 1, f"value must be >= 1, got {v}")
    _check_horizon(v, "value")
    return c.inverse_at(v)


def values_range(c: Construction, start: int, stop: int) -> np.ndarray:
    """Values at positions ``start .. stop - 1`` as an int64 array."""
    _need(start >= 1, f"start must be >= 1, got {start}")
    _check_horizon(stop - 1)
    if stop <= start:
        return np.zeros(0, dtype=np.int64)
    if c._max_value(stop) >= _INT64_SAFE:
        raise OverflowError(f"{c.spec()} values up to position {stop - 1} overflow int64")
    return c._fill(start, stop)


def prefix(c: Construction, n: int) -> np.ndarray:
    """First ``n`` values of ``c``."""
    _need(n >= 1, f"prefix length must be >= 1, got {n}")
    _check_horizon(n, "prefix length")
    return values_range(c, 1, n + 1)


def positions_of(c: Construction, values: Iterable[int]) -> np.ndarray:
    """Vectorised ``inverse_at`` over an array of values."""
    v = np.asarray(values, dtype=np.int64)
    if v.size == 0:
        return v.copy()
    _need(int(v.min()) >= 1, "values must be >= 1")
    _check_horizon(int(v.max()), "value")
    if isinstance(c, Identity):
        return v.copy()
    if isinstance(c, Divergent):
        q = 2 * c.i
        return np.where(v % q == 0, 2 * (v // q), 2 * (v - v // q) - 1)
    if isinstance(c, Colliding):
        # involution: the inverse image of v is v's image
        out = v.copy()
        sites, _, _ = pure_site_arrays(int(v.max()), c.support)
        at_site = np.isin(v, sites)
        at_succ = np.isin(v - 1, sites)
        out[at_site] += 1
        out[at_succ] -= 1
        return out
    if isinstance(c, BlockSwap):
        return _vec_swap(v, c.i)
    if isinstance(c, ResidueBlockSwap):
        r = v % c.q
        r = np.where(r == 0, c.q, r)
        s = (v - r) // c.q + 1
        return r + (_vec_swap(s, c.i) - 1) * c.q
    raise TypeError(f"not a construction: {c!r}")


def _vec_swap(s: np.ndarray, i: int) -> np.ndarray:
    half = 1 << (i - 1)
    return np.where((s - 1) % (2 * half) < half, s + half, s - half)


@dataclass
class ValidityReport:
    n: int
    injective: bool
    coverage: bool
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.injective and self.coverage

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "injective": self.injective,
            "coverage": self.coverage,
            "counterexample": self.counterexample,
        }


def check_values(values) -> ValidityReport:
    """Injectivity and coverage of 1..n//2 for an arbitrary prefix."""
    vals = np.asarray(values, dtype=np.int64)
    n = vals.size
    injective, coverage, witness = True, True, None
    if n and int(vals.min()) < 1:
        bad = int(np.flatnonzero(vals < 1)[0])
        return ValidityReport(n, False, False, f"non-positive value {int(vals[bad])} at position {bad + 1}")
    srt = np.sort(vals, kind="stable")
    dup = np.flatnonzero(srt[1:] == srt[:-1])
    if dup.size:
        injective = False
        v = int(srt[dup[0]])
        where = np.flatnonzero(vals == v)[:2] + 1
        witness = f"value {v} repeated at positions {int(where[0])} and {int(where[1])}"
    need = n // 2
    present = np.zeros(need + 1, dtype=bool)
    present[vals[vals <= need]] = True
    missing = np.flatnonzero(~present[1:])
    if missing.size:
        coverage = False
        if witness is None:
            witness = f"value {int(missing[0]) + 1} missing from the first {n} positions"
    return ValidityReport(n, injective, coverage, witness)


def validate_prefix(c: Construction, n: int) -> ValidityReport:
    """Check that the first ``n`` values look like a permutation prefix."""
    _need(n >= 2, f"n must be >= 2, got {n}")
    return check_values(prefix(c, n))
