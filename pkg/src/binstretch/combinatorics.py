"""Exact counting and ranking of packings.

Two families of tables back all dense indexing in the solver:

* N[k][n] counts non-increasing n-vectors with every coordinate < k
  (closed form: C(k+n-1, k-1)). Ranking against it (pack_rank) indexes the
  pruning table over all packings with loads below the target.
* NS[S][k][n] counts non-increasing n-vectors with coordinates <= k summing
  to exactly S (no closed form; computed by recursion over the first
  coordinate). Ranking against it (sum_rank) deduplicates the feasibility
  front, whose members all share the same total.

Both rank functions are bijections onto an initial segment of the integers,
so a dense array indexed by the rank is a perfect hash.
"""

from __future__ import annotations

import math

import numpy as np

from .core import GameParams, Packing

_INT64_MAX = 2**63 - 1


class SizingError(OverflowError):
    """A counting table entry exceeds the 64-bit envelope."""


class CountTable:
    """Precomputed counting tables for one (m, g, t) game.

    Built eagerly (roughly m^2 g^2 entries) so that every rank computation
    during the search is O(m) table lookups.
    """

    def __init__(self, params: GameParams):
        self.params = params
        m, g, t = params.m, params.g, params.t
        self.n_kn = _build_n_kn(t, m)
        self.n_skn = _build_n_skn(m * g, g, m)

    # -- packings with coordinates < k ------------------------------------

    def count_packings(self, k: int, n: int) -> int:
        """|P_{k,n}|: non-increasing n-vectors with all coordinates < k."""
        if k < 0 or n < 1:
            raise ValueError(f"need k >= 0 and n >= 1, got k={k} n={n}")
        return int(self.n_kn[k, n])

    @property
    def n_ranked_packings(self) -> int:
        """Size of the rank space P_{t,m}: C(t+m-1, t-1)."""
        return int(self.n_kn[self.params.t, self.params.m])

    def pack_rank(self, b: Packing) -> int:
        """Rank of a packing with all loads < t, in [0, C(t+m-1,t-1) - 1].

        rank(b) = sum_i N[b_i][m-i], strictly increasing with lexicographic
        order on packings.
        """
        m, t = self.params.m, self.params.t
        if len(b) != m:
            raise ValueError(f"expected {m} loads, got {len(b)}")
        if b[0] >= t:
            raise ValueError(f"load {b[0]} >= target {t}: packing is not rankable")
        n_kn = self.n_kn
        return int(sum(n_kn[b[i], m - i] for i in range(m)))

    # -- packings with coordinates <= k and fixed sum ----------------------

    def count_sum_packings(self, S: int, k: int, n: int) -> int:
        """|P_{S,k,n}|: non-increasing n-vectors, coordinates <= k, sum S."""
        if S < 0 or k < 0 or n < 1:
            raise ValueError(f"need S,k >= 0 and n >= 1, got S={S} k={k} n={n}")
        return int(self.n_skn[S, k, n])

    def sum_rank(self, b: Packing, S: int) -> int:
        """Rank of a packing with coordinates <= g and sum S.

        Equals the number of packings in P_{S,g,m} lexicographically smaller
        than b; a bijection onto [0, NS[S][g][m] - 1].
        """
        m = self.params.m
        n_skn = self.n_skn
        f = 0
        rem = S
        for i in range(m):
            bi = b[i]
            if bi == 0:
                break
            f += int(n_skn[rem, bi - 1, m - i])
            rem -= bi
        return f

    def max_front_size(self) -> int:
        """Largest NS[S][g][m] over all totals S: bound on any front size."""
        m, g = self.params.m, self.params.g
        return int(self.n_skn[:, g, m].max())


def _build_n_kn(t: int, m: int) -> np.ndarray:
    """N[k][n] = C(k+n-1, k-1) for k >= 1; N[0][n] = 0 (empty rank space)."""
    table = np.zeros((t + 1, m + 1), dtype=np.int64)
    for k in range(1, t + 1):
        for n in range(1, m + 1):
            val = math.comb(k + n - 1, k - 1)
            if val > _INT64_MAX:
                raise SizingError(f"N[{k}][{n}] = {val} overflows 64-bit table")
            table[k, n] = val
    return table


def _build_n_skn(max_sum: int, g: int, m: int) -> np.ndarray:
    """NS[S][k][n] by the first-coordinate recursion.

    Base cases: NS[S][k][1] = 1 iff k >= S, and NS[0][k][n] = 1 for every n
    (the all-zero packing; the bare recursion would wrongly yield 0 there,
    and sum_rank needs the 1).
    """
    table = np.zeros((max_sum + 1, g + 1, m + 1), dtype=np.int64)
    table[0, :, 1:] = 1
    for S in range(1, max_sum + 1):
        for k in range(1, g + 1):
            table[S, k, 1] = 1 if k >= S else 0
    for n in range(2, m + 1):
        for S in range(1, max_sum + 1):
            for k in range(1, g + 1):
                total = 0
                for i in range(1, min(k, S) + 1):
                    total += int(table[S - i, i, n - 1])
                if total > _INT64_MAX:
                    raise SizingError(f"NS[{S}][{k}][{n}] overflows 64-bit table")
                table[S, k, n] = total
    return table
