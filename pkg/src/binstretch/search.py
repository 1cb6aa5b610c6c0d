"""Minimax game search deciding whether the bound t/g is provable.

Two engines share the same semantics:

* the reference engine is plain Python, keeps exact memo keys, and lets
  tests switch memoization / pruning off independently;
* the fast engine (numba, see _kernel) is used for real parameter sizes.

Both walk the adversary/algorithm game: the adversary tries item sizes from
the largest legal one downward (a feasibility-front stack supplies that
bound per depth), the algorithm answers with every non-losing placement,
and a configuration prunes immediately when the largest sendable item is
below the v-table threshold for its packing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .certificate import ProofNode, ProofTree
from .combinatorics import CountTable
from .core import GameParams, canonical_key, empty_packing, place
from .feasibility import FeasibleFront, empty_front, extend_front
from .pruning import VTable, compute_v_table, prune_wins_for_algorithm

_REF_MEMO_ENTRY_BYTES = 250  # rough CPython cost of one (key, verdict) entry
_FAST_MEMO_ENTRY_BYTES = 64  # rough typed-dict cost of one 128-bit key entry


class ResourceLimitExceeded(Exception):
    """Memo table grew past the configured byte cap."""


@dataclass
class SearchOptions:
    engine: str = "auto"  # auto | fast | reference
    use_memo: bool = True
    use_pruning: bool = True
    record_proof: bool = False
    memo_cap_bytes: int | None = None


@dataclass
class SearchStats:
    nodes: int = 0
    pruned: int = 0
    memo_hits: int = 0


@dataclass
class Verdict:
    params: GameParams
    proven: bool | None  # None = inconclusive
    reason: str = ""
    proof: ProofTree | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    time_ms: float = 0.0


def solve(params: GameParams, options: SearchOptions | None = None) -> Verdict:
    """Build tables, run the adversary from the empty configuration."""
    opts = options or SearchOptions()
    start = time.perf_counter()
    tables = CountTable(params)
    engine = _pick_engine(params, opts.engine)
    if engine == "fast":
        verdict = _solve_fast(params, tables, opts)
    else:
        verdict = _solve_reference(params, tables, opts)
    verdict.time_ms = (time.perf_counter() - start) * 1000.0
    return verdict


def _pick_engine(params: GameParams, engine: str) -> str:
    if engine not in ("auto", "fast", "reference"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "reference":
        return "reference"
    try:
        from . import _kernel

        fast_ok = _kernel.supports(params)
    except ImportError:
        fast_ok = False
    if engine == "fast":
        if not fast_ok:
            raise RuntimeError("fast engine unavailable for these parameters")
        return "fast"
    return "fast" if fast_ok else "reference"


# -- fast engine -------------------------------------------------------------


def _solve_fast(params: GameParams, tables: CountTable, opts: SearchOptions) -> Verdict:
    from . import _kernel

    if opts.use_pruning:
        vtable = VTable(params, _kernel.fill_v_table(params, tables))
        v = vtable.values
    else:
        v = np.zeros(1, dtype=np.int8)
    max_memo = 0
    if opts.memo_cap_bytes is not None:
        max_memo = max(1, opts.memo_cap_bytes // _FAST_MEMO_ENTRY_BYTES)
    state = _kernel.FastState(
        params, tables, v,
        use_memo=opts.use_memo, use_prune=opts.use_pruning, max_memo=max_memo,
    )
    res = state.run()
    stats = SearchStats(
        nodes=int(state.stats[0]), pruned=int(state.stats[1]), memo_hits=int(state.stats[2])
    )
    if res == _kernel.RES_ABORT:
        return Verdict(params, None, reason="resources", stats=stats)
    proven = res == _kernel.RES_TRUE
    proof = None
    if proven and opts.record_proof:
        proof = ProofTree(params, _reconstruct_fast(state))
    return Verdict(params, proven, proof=proof, stats=stats)


def _reconstruct_fast(state) -> ProofNode:
    """Rebuild the winning subtree by re-querying the memoized kernel.

    Only configurations on the winning strategy are expanded, so this walk
    is cheap relative to the search itself.
    """
    from ._kernel import RES_TRUE

    params = state.params
    m, t = params.m, params.t

    def build(depth: int, slot: int, loads) -> ProofNode:
        penc = state.encode(loads)
        win_y = None
        for y in range(int(state.fymax[depth, slot]), 0, -1):
            if state.algorithm_verdict(depth, slot, penc, y) == RES_TRUE:
                win_y = y
                break
        if win_y is None:
            raise AssertionError(f"no winning item at recorded node {loads}")
        state.extend_at(depth, slot, win_y)
        children = []
        prev = -1
        for i in range(m):
            if loads[i] == prev:
                continue
            prev = loads[i]
            child = place(loads, i, win_y)
            if loads[i] + win_y >= t:
                children.append(ProofNode(child))
            else:
                children.append(build(depth + 1, win_y, child))
        return ProofNode(loads, win_y, tuple(children))

    return build(0, 0, empty_packing(m))


# -- reference engine ---------------------------------------------------------


class ReferenceEngine:
    """Direct transcription of the two-player recursion, exact memo keys."""

    def __init__(self, params: GameParams, tables: CountTable,
                 vtable: VTable | None = None, use_memo: bool = True,
                 record_proof: bool = False, memo_cap_entries: int = 0):
        self.params = params
        self.tables = tables
        self.vtable = vtable
        self.use_memo = use_memo
        self.record = record_proof
        self.memo_cap = memo_cap_entries
        self.memo: dict = {}
        self.stats = SearchStats()

    def run(self) -> tuple[bool, ProofNode | None]:
        front = empty_front(self.params)
        return self.adversary((), empty_packing(self.params.m), front)

    def adversary(self, items, loads, front: FeasibleFront) -> tuple[bool, ProofNode | None]:
        self.stats.nodes += 1
        key = canonical_key(items, loads)
        if self.use_memo:
            hit = self.memo.get(key)
            if hit is not None:
                self.stats.memo_hits += 1
                return hit
        y_max = front.y_max
        if y_max == 0:
            return False, None
        if self.vtable is not None and prune_wins_for_algorithm(
            self.vtable, self.tables, loads, y_max
        ):
            self.stats.pruned += 1
            return False, None
        for y in range(y_max, 0, -1):
            if self.vtable is not None:
                outcome = self._prefilter(loads, y, y_max)
                if outcome == "win":
                    node = None
                    if self.record:
                        ok, children = self.algorithm(_insert_item(items, y), loads,
                                                      front, y)
                        node = ProofNode(loads, y, children)
                    self._memoize(key, (True, node))
                    return True, node
                if outcome == "skip":
                    self.stats.pruned += 1
                    continue
            new_front = extend_front(front, y, self.tables)
            new_items = _insert_item(items, y)
            ok, children = self.algorithm(new_items, loads, new_front, y)
            if ok:
                node = ProofNode(loads, y, children) if self.record else None
                self._memoize(key, (True, node))
                return True, node
        self._memoize(key, (False, None))
        return False, None

    def _prefilter(self, loads, y: int, y_max: int) -> str:
        """Classify item y from the v values of its placement outcomes.

        "win": every placement reaches t, the adversary wins immediately.
        "skip": some placement below t has v > y_max; the child's own largest
        extension is at most y_max, so it would prune — the item is hopeless.
        "try": no shortcut, run the extension and recurse.
        """
        m, t = self.params.m, self.params.t
        values = self.vtable.values
        pack_rank = self.tables.pack_rank
        all_over = True
        prev = -1
        for i in range(m):
            if loads[i] == prev:
                continue
            prev = loads[i]
            if loads[i] + y >= t:
                continue
            all_over = False
            if int(values[pack_rank(place(loads, i, y))]) > y_max:
                return "skip"
        return "win" if all_over else "try"

    def algorithm(self, items, loads, front: FeasibleFront, y: int):
        """True iff every non-losing placement keeps the adversary winning."""
        m, t = self.params.m, self.params.t
        children = []
        prev = -1
        for i in range(m):
            if loads[i] == prev:  # symmetric bins: identical child
                continue
            prev = loads[i]
            child_loads = place(loads, i, y)
            if loads[i] + y >= t:
                if self.record:
                    children.append(ProofNode(child_loads))
                continue
            ok, node = self.adversary(items, child_loads, front)
            if not ok:
                return False, ()
            if self.record:
                children.append(node)
        return True, tuple(children)

    def _memoize(self, key, value) -> None:
        if not self.use_memo:
            return
        self.memo[key] = value
        if self.memo_cap and len(self.memo) > self.memo_cap:
            raise ResourceLimitExceeded(f"memo exceeded {self.memo_cap} entries")


def _insert_item(items, y: int):
    out = list(items)
    j = 0
    while j < len(out) and out[j] > y:
        j += 1
    out.insert(j, y)
    return tuple(out)


def _solve_reference(params: GameParams, tables: CountTable, opts: SearchOptions) -> Verdict:
    vtable = compute_v_table(params, tables) if opts.use_pruning else None
    cap = 0
    if opts.memo_cap_bytes is not None:
        cap = max(1, opts.memo_cap_bytes // _REF_MEMO_ENTRY_BYTES)
    engine = ReferenceEngine(
        params, tables, vtable=vtable, use_memo=opts.use_memo,
        record_proof=opts.record_proof, memo_cap_entries=cap,
    )
    try:
        proven, root = engine.run()
    except ResourceLimitExceeded:
        return Verdict(params, None, reason="resources", stats=engine.stats)
    proof = ProofTree(params, root) if proven and opts.record_proof else None
    return Verdict(params, proven, proof=proof, stats=engine.stats)
