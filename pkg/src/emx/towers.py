"""Nested deterministic orderings consumed by the compression schemes.

A tower of depth k supplies, for every level j in 0..k and every context
(the chain of maxima already extracted at the levels above j), an
injective integer key over the domain. Extracting a maximum at level j
extends the context by one id; level 0 supplies the finite initial
segments that reconstruction unions over.

The real construction re-orders an initial segment arbitrarily at each
extraction. Here the per-context orders are derived from a seed by stable
hashing: reproducible, testable, and carrying exactly the structure the
algorithm consumes (injective keys, finitely many predecessors at level 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .core import EnumeratedDomain, FiniteDomain
from .seeds import order_hash

ContextChain = tuple[int, ...]


@dataclass(frozen=True)
class OrderTower:
    """Depth, a key function and a level-0 prefix enumerator.

    Invariants: keys are injective per (level, context); a context chain
    of length depth - level accompanies every level; enumerate_below(c, b)
    is exactly the finite set of points with level-0 key <= b under c.
    """

    depth: int
    key_fn: Callable[[int, ContextChain, int], int]
    below_fn: Callable[[ContextChain, int], frozenset[int]]

    def key(self, level: int, context: ContextChain, point_id: int) -> int:
        if not 0 <= level <= self.depth:
            raise ValueError(f"level {level} outside 0..{self.depth}")
        context = tuple(context)
        if len(context) != self.depth - level:
            raise ValueError(
                f"context of length {len(context)} does not fit level {level} "
                f"of a depth-{self.depth} tower"
            )
        return self.key_fn(level, context, point_id)

    def enumerate_below(self, context: ContextChain, bound: int) -> frozenset[int]:
        context = tuple(context)
        if len(context) != self.depth:
            raise ValueError(
                f"enumerate_below needs a full context of length {self.depth}, "
                f"got {len(context)}"
            )
        if bound < 0:
            return frozenset()
        return self.below_fn(context, bound)


def finite_proxy_tower(domain: FiniteDomain, depth: int, seed: int) -> OrderTower:
    """Desk-scale tower over a finite domain.

    Each (level, context) pair gets its own ordering: ids sorted by a
    stable hash of (seed, level, context, id), ties impossible because the
    id is part of the sort key. Orderings are cached per context.
    """
    if depth < 0:
        raise ValueError("tower depth must be >= 0")
    ids = tuple(domain.ids())

    @lru_cache(maxsize=None)
    def ordering(level: int, context: ContextChain) -> tuple[tuple[int, ...], dict[int, int]]:
        order = tuple(sorted(ids, key=lambda pid: (order_hash(seed, level, context, pid), pid)))
        return order, {pid: pos for pos, pid in enumerate(order)}

    def key(level: int, context: ContextChain, point_id: int) -> int:
        positions = ordering(level, context)[1]
        if point_id not in positions:
            raise KeyError(f"point {point_id} is not in the domain")
        return positions[point_id]

    def below(context: ContextChain, bound: int) -> frozenset[int]:
        order = ordering(0, context)[0]
        return frozenset(order[: bound + 1])

    return OrderTower(depth, key, below)


def enumerated_tower(domain: EnumeratedDomain) -> OrderTower:
    """Depth-0 tower whose single ordering is the domain enumeration
    itself: the key of a point is its index, and the points below a bound
    are the first bound+1 of the enumeration."""

    def key(level: int, context: ContextChain, point_id: int) -> int:
        if point_id < 0:
            raise KeyError(f"point {point_id} is not in the domain")
        return point_id

    def below(context: ContextChain, bound: int) -> frozenset[int]:
        return frozenset(range(bound + 1))

    return OrderTower(0, key, below)
