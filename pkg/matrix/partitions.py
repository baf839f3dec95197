"""Deterministic enumerations of partitions, set systems and compositions."""

from itertools import product
from typing import Iterator, List, Tuple

from .row_matrix import SetSystem


def set_partitions(n: int) -> Iterator[List[List[int]]]:
    """Unordered set partitions of range(n) in restricted-growth-string order."""
    if n == 0:
        yield []
        return
    rgs = [0] * n
    while True:
        blocks: List[List[int]] = [[] for _ in range(max(rgs) + 1)]
        for i, b in enumerate(rgs):
            blocks[b].append(i)
        yield blocks
        # next restricted growth string: bump the rightmost bumpable slot
        i = n - 1
        while i > 0 and rgs[i] > max(rgs[:i]):
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        for j in range(i + 1, n):
            rgs[j] = 0


def ordered_set_systems(n: int, k: int) -> Iterator[SetSystem]:
    """All k-tuples of pairwise-disjoint subsets of range(n).

    Each row is labelled 0 (unused) or t in 1..k; labels vary
    lexicographically with row 0 most significant.
    """
    for labels in product(range(k + 1), repeat=n):
        yield SetSystem.of(
            ([i for i, lab in enumerate(labels) if lab == t] for t in range(1, k + 1)), n
        )


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Compositions of `total` into `parts` positive parts, colex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < parts:
        return
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for first in range(1, remaining - slots + 2):
            rec(prefix + (first,), remaining - first, slots - 1)

    rec((), total, parts)
    yield from sorted(out, key=lambda c: tuple(reversed(c)))
