"""Shared domain types: game parameters, packings, instances, configurations.

A packing is a tuple of bin loads kept sorted in non-increasing order, which
quotients away the symmetry between identical bins. An instance is the
multiset of item sizes sent so far, also kept as a sorted tuple.
"""

from __future__ import annotations

from dataclasses import dataclass

# Both are plain tuples of non-negative ints, sorted non-increasing.
Packing = tuple[int, ...]
Items = tuple[int, ...]

# Loads, item sizes and totals must stay well inside 32-bit range.
MAX_SCALE = 10_000  # supported envelope: g * m <= 10^4


@dataclass(frozen=True)
class GameParams:
    """One game: m bins of capacity g, adversary target t. Claimed bound is t/g."""

    m: int
    g: int
    t: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"need at least 2 bins, got m={self.m}")
        if self.g < 1:
            raise ValueError(f"granularity must be >= 1, got g={self.g}")
        if self.t <= self.g:
            raise ValueError(f"target must exceed granularity, got t={self.t} g={self.g}")
        if self.m * self.g > MAX_SCALE:
            raise ValueError(f"m*g={self.m * self.g} exceeds supported envelope {MAX_SCALE}")

    @property
    def max_total(self) -> int:
        """Largest possible sum of items: everything fits in m bins of size g."""
        return self.m * self.g

    def bound_str(self) -> str:
        return f"{self.t}/{self.g}"


def empty_packing(m: int) -> Packing:
    return (0,) * m


def place(loads: Packing, bin_index: int, y: int) -> Packing:
    """Add an item of size y to one bin and restore sorted order.

    This is the b + y*e_i operation; game-legality (capacity, target) is the
    caller's concern.
    """
    if not 0 <= bin_index < len(loads):
        raise IndexError(f"bin index {bin_index} out of range for {len(loads)} bins")
    if y < 1:
        raise ValueError(f"item size must be >= 1, got {y}")
    bumped = loads[bin_index] + y
    # One element grew, so it can only move left.
    out = list(loads)
    del out[bin_index]
    j = bin_index
    while j > 0 and out[j - 1] < bumped:
        j -= 1
    out.insert(j, bumped)
    return tuple(out)


def sort_items(items) -> Items:
    """Canonical (non-increasing) form of an item multiset."""
    return tuple(sorted(items, reverse=True))


def is_sorted_non_increasing(vec) -> bool:
    return all(vec[i] >= vec[i + 1] for i in range(len(vec) - 1))


@dataclass(frozen=True)
class Configuration:
    """A game state: the items sent so far plus the current bin loads."""

    items: Items
    loads: Packing

    def __post_init__(self) -> None:
        if sum(self.items) != sum(self.loads):
            raise ValueError(
                f"loads sum {sum(self.loads)} != items sum {sum(self.items)}"
            )
        if not is_sorted_non_increasing(self.items):
            raise ValueError("items not in canonical (non-increasing) order")
        if not is_sorted_non_increasing(self.loads) or (self.loads and self.loads[-1] < 0):
            raise ValueError("loads not a valid packing")

    @property
    def total(self) -> int:
        return sum(self.loads)


def canonical_key(items: Items, loads: Packing) -> tuple[Items, Packing]:
    """Memo-table key: equal iff item multisets and sorted load vectors are equal.

    The bin count is implicit in len(loads), so games with different m never
    collide.
    """
    return (items, loads)
