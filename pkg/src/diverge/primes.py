"""Prime sieves, primality and odd prime powers ("pure" numbers)."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Optional

import numpy as np

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def sieve(limit: int) -> np.ndarray:
    """Return all primes <= limit as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def iroot(x: int, k: int) -> int:
    """Largest r with r**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    if k == 2:
        return isqrt(x)
    r = int(round(x ** (1.0 / k)))
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


@dataclass(frozen=True, order=True)
class PureSite:
    """An odd prime power p**j with j >= 2 and its successor p**j + 1."""

    value: int
    p: int
    j: int

    def __post_init__(self):
        if self.j < 2 or self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"not a pure site: p={self.p}, j={self.j}")
        if self.value != self.p ** self.j:
            raise ValueError(f"value {self.value} != {self.p}**{self.j}")

    @property
    def successor(self) -> int:
        return self.value + 1


def pure_root(x: int, exponents: Iterable[int]) -> Optional[tuple[int, int]]:
    """Return (p, j) if x == p**j for an odd prime p and some j in exponents."""
    if x < 9 or x % 2 == 0:
        return None
    for j in exponents:
        r = iroot(x, j)
        if r ** j == x and r % 2 == 1 and is_prime(r):
            return r, j
    return None


def pure_site_arrays(limit: int, exponents: Optional[Iterable[int]] = None):
    """Sorted (values, bases, exponents) arrays of pure numbers <= limit."""
    if limit < 9:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    max_exp = limit.bit_length()
    wanted = range(2, max_exp + 1) if exponents is None else sorted(set(exponents))
    odd_primes = sieve(isqrt(limit))[1:]
    vals, bases, exps = [], [], []
    for j in wanted:
        if j < 2:
            continue
        top = iroot(limit, j)
        ps = odd_primes[odd_primes <= top]
        if ps.size == 0:
            continue
        vals.append(ps ** j)
        bases.append(ps)
        exps.append(np.full(ps.size, j, dtype=np.int64))
    if not vals:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    v = np.concatenate(vals)
    order = np.argsort(v, kind="stable")
    return v[order], np.concatenate(bases)[order], np.concatenate(exps)[order]


def pure_sites_up_to(limit: int, exponents: Optional[Iterable[int]] = None) -> list[PureSite]:
    """All pure sites with value <= limit, ascending by value.

    >>> [s.value for s in pure_sites_up_to(130)]
    [9, 25, 27, 49, 81, 121, 125]
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    v, p, j = pure_site_arrays(limit, exponents)
    return [PureSite(int(a), int(b), int(c)) for a, b, c in zip(v, p, j)]
