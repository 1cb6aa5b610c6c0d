"""Minimum-biggest-extension table v(b) and the prune query.

v(b) is the smallest item size the adversary must still be able to send from
packing b to keep any chance of forcing a bin to t. It is computed by
backward induction over all packings with loads below t, by non-increasing
total load, seeded by two terminal rules:

* total load = m*g: no more items can be sent, the algorithm wins (g+1);
* second-smallest load large enough that even dumping everything left into
  the smallest bin stays below t: algorithm wins (g+1).

During the search, a configuration whose largest legal item is below v(b)
is a guaranteed algorithm win and is pruned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .combinatorics import CountTable
from .core import GameParams, Packing


@dataclass(frozen=True)
class VTable:
    """Dense array of v values over P_{t,m}, indexed by pack_rank."""

    params: GameParams
    values: np.ndarray  # shape (C(t+m-1, t-1),), entries in [1, g+1]

    def value(self, tables: CountTable, b: Packing) -> int:
        return int(self.values[tables.pack_rank(b)])

    def stats(self) -> dict[str, int]:
        g = self.params.g
        vals = self.values
        return {
            "size": int(vals.size),
            "alg_winning": int((vals == g + 1).sum()),
            "interior": int(((vals >= 1) & (vals <= g)).sum()),
        }

    def histogram(self) -> dict[int, int]:
        uniq, cnt = np.unique(self.values, return_counts=True)
        return {int(u): int(c) for u, c in zip(uniq, cnt)}


def is_base_alg_winning(b: Packing, params: GameParams) -> bool:
    """Base criterion: (m-1) * b_{m-1} > m*g - t (loads sorted, b_1 < t).

    Written in multiplied form to stay in exact integer arithmetic.
    """
    m, g, t = params.m, params.g, params.t
    return (m - 1) * b[m - 2] > m * g - t


def prune_wins_for_algorithm(vt: VTable, tables: CountTable, b: Packing, y_max: int) -> bool:
    """True iff the adversary can no longer send an item of size v(b)."""
    return y_max < int(vt.values[tables.pack_rank(b)])


def compute_v_table(params: GameParams, tables: CountTable, engine: str = "auto") -> VTable:
    """Backward induction over all packings with loads < t, by total descending.

    Packings whose total exceeds m*g exist in the rank space but are
    unreachable; they get g+1 (fail-safe: always prunes).
    """
    if engine not in ("auto", "fast", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine in ("auto", "fast"):
        try:
            from . import _kernel

            return VTable(params, _kernel.fill_v_table(params, tables))
        except ImportError:
            if engine == "fast":
                raise
    return VTable(params, _compute_v_values_py(params, tables))


def enumerate_ranked_packings(params: GameParams):
    """All packings with m loads < t, i.e. the domain of pack_rank."""
    for rev in itertools.combinations_with_replacement(range(params.t), params.m):
        yield rev[::-1]


def _compute_v_values_py(params: GameParams, tables: CountTable) -> np.ndarray:
    m, g, t = params.m, params.g, params.t
    mg = m * g
    dtype = np.int8 if g + 1 <= np.iinfo(np.int8).max else np.int16
    values = np.zeros(tables.n_ranked_packings, dtype=dtype)
    by_sum: dict[int, list[Packing]] = {}
    for b in enumerate_ranked_packings(params):
        by_sum.setdefault(sum(b), []).append(b)
    pack_rank = tables.pack_rank
    for total in sorted(by_sum, reverse=True):
        for b in sorted(by_sum[total]):
            values[pack_rank(b)] = _v_of(b, total, params, pack_rank, values)
    return values


def _v_of(b, total, params, pack_rank, values) -> int:
    m, g, t = params.m, params.g, params.t
    mg = m * g
    if total > mg:  # unreachable rank-space filler
        return g + 1
    if total == mg:
        return g + 1
    if is_base_alg_winning(b, params):
        return g + 1
    s_max = min(g, mg - total)
    best = g + 1
    for s in range(1, s_max + 1):
        if s >= best:
            break  # every term is >= s, so no smaller minimum remains
        worst = 0
        prev = -1
        for i in range(m):
            bi = b[i]
            if bi == prev:
                continue
            prev = bi
            bumped = bi + s
            if bumped >= t:
                cand = s  # child is an adversary win: v = 0
            else:
                child = list(b)
                del child[i]
                j = i
                while j > 0 and child[j - 1] < bumped:
                    j -= 1
                child.insert(j, bumped)
                cand = max(s, int(values[pack_rank(tuple(child))]))
            if cand > worst:
                worst = cand
        if worst < best:
            best = worst
    return best
