"""Infinite permutations of the naturals: divergent, colliding and
completely different families, with prefix verifiers and exact small-n
permutation capacity."""

__version__ = "0.1.0"
