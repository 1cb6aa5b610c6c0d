"""Independent brute-force oracles used to cross-check the solver.

Everything here works by exhaustive assignment of items to bins and plain
minimax with no memoization, no pruning table and no feasibility DP, so it
shares no code path with what it checks.
"""

from __future__ import annotations


def can_pack(items, m: int, g: int) -> bool:
    """Exhaustive: can the items be split into m bins of capacity g?"""
    items = sorted(items, reverse=True)
    loads = [0] * m

    def rec(idx: int) -> bool:
        if idx == len(items):
            return True
        x = items[idx]
        seen = set()
        for i in range(m):
            if loads[i] in seen:
                continue
            seen.add(loads[i])
            if loads[i] + x <= g:
                loads[i] += x
                if rec(idx + 1):
                    loads[i] -= x
                    return True
                loads[i] -= x
        return False

    return rec(0)


def brute_largest_extension(items, m: int, g: int) -> int:
    """Largest y such that items + [y] still fits; 0 if nothing fits."""
    for y in range(g, 0, -1):
        if can_pack(list(items) + [y], m, g):
            return y
    return 0


def enumerate_feasible_packings(items, m: int, g: int) -> set:
    """All sorted load vectors over every assignment of items to bins."""
    found = set()
    loads = [0] * m

    def rec(idx: int) -> None:
        if idx == len(items):
            found.add(tuple(sorted(loads, reverse=True)))
            return
        x = items[idx]
        for i in range(m):
            if loads[i] + x <= g:
                loads[i] += x
                rec(idx + 1)
                loads[i] -= x

    rec(0)
    return found


def brute_minimax(m: int, g: int, t: int, items=(), loads=None) -> bool:
    """Plain two-player minimax: True iff the adversary can force a bin to t.

    Move generation uses the exhaustive packing check directly; no memo, no
    v-table, no feasibility front.
    """
    if loads is None:
        loads = (0,) * m
    if loads[0] >= t:
        return True
    y_max = brute_largest_extension(items, m, g)
    for y in range(1, y_max + 1):
        new_items = list(items) + [y]
        if _algorithm_loses_everywhere(m, g, t, new_items, loads, y):
            return True
    return False


def _algorithm_loses_everywhere(m, g, t, items, loads, y) -> bool:
    seen = set()
    for i in range(m):
        if loads[i] in seen:
            continue
        seen.add(loads[i])
        if loads[i] + y >= t:
            continue
        new_loads = tuple(sorted(loads[:i] + (loads[i] + y,) + loads[i + 1:], reverse=True))
        if not brute_minimax(m, g, t, items, new_loads):
            return False
    return True
