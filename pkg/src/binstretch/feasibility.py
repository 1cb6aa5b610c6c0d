"""Feasibility front: all packings of the items sent so far into m bins.

The front B_I drives move generation for the adversary: the largest item
that can legally follow instance I is g minus the smallest minimum load over
the members of B_I. Fronts are extended one item at a time (one dynamic
programming iteration per adversary move); the search keeps a stack of them
so backtracking just pops.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import CountTable
from .core import GameParams, Packing, empty_packing


@dataclass(frozen=True)
class FeasibleFront:
    """The set B_I for one instance: every member has loads <= g, sum = total."""

    params: GameParams
    total: int
    members: tuple[Packing, ...]
    y_max: int  # largest legal next item: max over members of g - min load


def empty_front(params: GameParams) -> FeasibleFront:
    zero = empty_packing(params.m)
    return FeasibleFront(params, 0, (zero,), params.g)


def largest_extension(front: FeasibleFront) -> int:
    """Largest item that can be sent after this front's instance (0 if none)."""
    return front.y_max


def extend_front(front: FeasibleFront, y: int, tables: CountTable) -> FeasibleFront:
    """Front for I + one item of size y. Does not consume the input front.

    Each member is bumped in every bin that still has room; duplicates are
    dropped via a boolean table indexed by sum_rank (front members all share
    the same total, so the rank is a perfect hash).
    """
    params = front.params
    m, g = params.m, params.g
    if not 1 <= y <= front.y_max:
        raise ValueError(f"item {y} is not a legal extension (y_max={front.y_max})")
    new_total = front.total + y
    scratch = bytearray(tables.count_sum_packings(new_total, g, m))
    members: list[Packing] = []
    min_last = g
    sum_rank = tables.sum_rank
    for loads in front.members:
        prev = -1
        for i in range(m):
            li = loads[i]
            if li == prev:  # identical bins give identical children
                continue
            prev = li
            if li + y > g:
                continue
            child = _bump_sorted(loads, i, y)
            r = sum_rank(child, new_total)
            if not scratch[r]:
                scratch[r] = 1
                members.append(child)
                if child[-1] < min_last:
                    min_last = child[-1]
    if not members:
        raise ValueError(f"extension by {y} emptied the front (illegal item)")
    return FeasibleFront(params, new_total, tuple(members), g - min_last)


def front_for_items(params: GameParams, items, tables: CountTable) -> FeasibleFront:
    """Build B_I from scratch by inserting each item in turn."""
    front = empty_front(params)
    for y in items:
        front = extend_front(front, y, tables)
    return front


def _bump_sorted(loads: Packing, i: int, y: int) -> Packing:
    bumped = loads[i] + y
    out = list(loads)
    del out[i]
    j = i
    while j > 0 and out[j - 1] < bumped:
        j -= 1
    out.insert(j, bumped)
    return tuple(out)
