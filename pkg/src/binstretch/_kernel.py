"""Compiled (numba) engine: v-table fill and the memoized game search.

Load vectors with coordinates <= g get a dense id (grouped by total load,
then sum-ranked within the group), and a precomputed transition table maps
(id, item) to the distinct placement ids. Feasibility fronts are then just
arrays of ids living in a per-(depth, produced-by-item) slot cache, so one
DP step costs a handful of table lookups per front member.

The memo key is a 128-bit hash of (feasibility front, packing). The front
is hashed by XOR-ing one fixed random word per member id, so it is
canonical for the set. Keying on the front rather than the item multiset is
sound — the front determines every future legal item, hence the residual
game — and merges strictly more transpositions. Unlike the exact key used
by the reference engine, hash collisions are possible in principle
(probability ~ n^2 / 2^128, negligible at any reachable table size).
"""

from __future__ import annotations

import itertools

import numpy as np
from numba import int64, njit, types, uint64
from numba.typed import Dict

from .combinatorics import CountTable
from .core import GameParams

U = np.uint64
U8 = np.uint8
KEY_T = types.UniTuple(types.uint64, 2)

RES_FALSE = 0
RES_TRUE = 1
RES_ABORT = 2

# stats slots
ST_NODES = 0
ST_PRUNED = 1
ST_MEMO_HITS = 2

_HASH_SEED = 0x9E3779B97F4A7C15


def supports(params: GameParams) -> bool:
    """Packed encoding needs all loads below t to fit one int64."""
    shift = max(1, (params.t - 1).bit_length())
    return params.m * shift <= 63


@njit(uint64(uint64), cache=True, inline="always")
def _mix(x):
    x ^= x >> U(33)
    x *= U(0xFF51AFD7ED558CCD)
    x ^= x >> U(33)
    x *= U(0xC4CEB9FE1A85EC53)
    x ^= x >> U(33)
    return x


@njit(cache=True, inline="always")
def _pack_rank(loads, nk, m):
    r = 0
    for i in range(m):
        r += nk[loads[i], m - i]
    return r


@njit(cache=True, inline="always")
def _sum_rank(loads, S, ns, m):
    f = 0
    rem = S
    for i in range(m):
        bi = loads[i]
        if bi == 0:
            break
        f += ns[rem, bi - 1, m - i]
        rem -= bi
    return f


@njit(cache=True)
def _build_transitions(packs, offsets, ns, trans, lastload, m, g):
    """Static placement DAG over all load vectors with coordinates <= g.

    trans[gid, y - 1, j] lists the ids of the distinct vectors reachable by
    adding y to some bin (-1 padded); lastload[gid] is the smallest load.
    """
    cl = np.empty(m, np.int64)
    for row in range(packs.shape[0]):
        b = packs[row]
        S = 0
        for i in range(m):
            S += b[i]
        gid = offsets[S] + _sum_rank(b, S, ns, m)
        lastload[gid] = b[m - 1]
        for y in range(1, g + 1):
            out = 0
            prev = -1
            for i in range(m):
                bi = b[i]
                if bi == prev:
                    continue
                prev = bi
                nv = bi + y
                if nv > g:
                    continue
                j = i
                while j > 0 and b[j - 1] < nv:
                    j -= 1
                for k2 in range(m):
                    if k2 < j:
                        cl[k2] = b[k2]
                    elif k2 == j:
                        cl[k2] = nv
                    elif k2 <= i:
                        cl[k2] = b[k2 - 1]
                    else:
                        cl[k2] = b[k2]
                trans[gid, y - 1, out] = offsets[S + y] + _sum_rank(cl, S + y, ns, m)
                out += 1
            for j2 in range(out, m):
                trans[gid, y - 1, j2] = -1


@njit(cache=True)
def _extend(depth, slot, y, m, g, trans, lastload, hz1, hz2,
            fronts, flen, fymax, fh1, fh2, rtmp, scratch):
    """One DP iteration: front at (depth, slot) plus item y -> (depth+1, y).

    Fronts are cached per (depth, produced-by-item) slot: every placement
    branch below the same item path shares the same fronts, so siblings find
    the result already computed (the caller checks the slot tag first).
    """
    cnt = 0
    minlast = g
    h1 = U(0)
    h2 = U(0)
    for idx in range(flen[depth, slot]):
        gid = fronts[depth, slot, idx]
        for j in range(m):
            gid2 = trans[gid, y - 1, j]
            if gid2 < 0:
                break
            if scratch[gid2] == 0:
                scratch[gid2] = 1
                rtmp[cnt] = gid2
                fronts[depth + 1, y, cnt] = gid2
                cnt += 1
                h1 ^= hz1[gid2]
                h2 ^= hz2[gid2]
                ll = lastload[gid2]
                if ll < minlast:
                    minlast = ll
    for k in range(cnt):
        scratch[rtmp[k]] = 0
    flen[depth + 1, y] = cnt
    fymax[depth + 1, y] = g - minlast
    fh1[depth + 1, y] = h1
    fh2[depth + 1, y] = h2
    return cnt


@njit(cache=True)
def _adv(depth, slot, penc, memo, v, nk, trans, lastload, hz1, hz2,
         fronts, flen, fymax, fh1, fh2, ftag1, ftag2, fvalid, ploads,
         cl, rtmp, scratch, stats,
         m, g, t, shift, mask, use_memo, use_prune, max_memo):
    """Adversary to play. Returns RES_TRUE iff the bound is provable here."""
    stats[ST_NODES] += 1
    key = (fh1[depth, slot] ^ _mix(U(penc) + U(_HASH_SEED)),
           fh2[depth, slot] ^ _mix(U(penc) ^ U(0xD6E8FEB86659FD93)))
    if use_memo and key in memo:
        stats[ST_MEMO_HITS] += 1
        return int64(memo[key])
    ymax = fymax[depth, slot]
    if ymax == 0:
        return RES_FALSE
    pl = ploads[depth]
    for i in range(m):
        pl[i] = (penc >> (shift * i)) & mask
    if use_prune and ymax < v[_pack_rank(pl, nk, m)]:
        stats[ST_PRUNED] += 1
        return RES_FALSE
    for y in range(ymax, 0, -1):
        if use_prune:
            # Cheap pre-filter before the DP extension: a child whose packing
            # has v > ymax will prune anyway (its own y_max is <= ours), so
            # the algorithm can answer y by placing it there and the item is
            # hopeless for the adversary. If every placement reaches t, the
            # item wins outright.
            all_over = True
            skip = False
            prev = -1
            for i in range(m):
                bi = pl[i]
                if bi == prev:
                    continue
                prev = bi
                nv = bi + y
                if nv >= t:
                    continue
                all_over = False
                j = i
                while j > 0 and pl[j - 1] < nv:
                    j -= 1
                for k2 in range(m):
                    if k2 < j:
                        cl[k2] = pl[k2]
                    elif k2 == j:
                        cl[k2] = nv
                    elif k2 <= i:
                        cl[k2] = pl[k2 - 1]
                    else:
                        cl[k2] = pl[k2]
                if v[_pack_rank(cl, nk, m)] > ymax:
                    skip = True
                    break
            if all_over:
                if use_memo:
                    memo[key] = U8(1)
                return RES_TRUE
            if skip:
                stats[ST_PRUNED] += 1
                continue
        if not (fvalid[depth + 1, y] == 1 and ftag1[depth + 1, y] == fh1[depth, slot]
                and ftag2[depth + 1, y] == fh2[depth, slot]):
            _extend(depth, slot, y, m, g, trans, lastload, hz1, hz2,
                    fronts, flen, fymax, fh1, fh2, rtmp, scratch)
            ftag1[depth + 1, y] = fh1[depth, slot]
            ftag2[depth + 1, y] = fh2[depth, slot]
            fvalid[depth + 1, y] = 1
        ch1 = fh1[depth + 1, y]
        ch2 = fh2[depth + 1, y]
        if use_memo:
            # Probe the memo for every distinct placement before recursing:
            # a remembered algorithm escape refutes y outright, and if every
            # placement is remembered as adversary-won (or reaches t) the
            # item wins without walking any subtree.
            refuted = False
            settled = True
            prev = -1
            for i in range(m):
                bi = pl[i]
                if bi == prev:
                    continue
                prev = bi
                nv = bi + y
                if nv >= t:
                    continue
                j = i
                while j > 0 and pl[j - 1] < nv:
                    j -= 1
                cenc = 0
                for k2 in range(m):
                    if k2 < j:
                        val = pl[k2]
                    elif k2 == j:
                        val = nv
                    elif k2 <= i:
                        val = pl[k2 - 1]
                    else:
                        val = pl[k2]
                    cenc |= val << (shift * k2)
                ck = (ch1 ^ _mix(U(cenc) + U(_HASH_SEED)),
                      ch2 ^ _mix(U(cenc) ^ U(0xD6E8FEB86659FD93)))
                if ck in memo:
                    if memo[ck] == U8(0):
                        refuted = True
                        break
                else:
                    settled = False
            if refuted:
                continue
            if settled:
                memo[key] = U8(1)
                return RES_TRUE
        allwin = True
        prev = -1
        for i in range(m):
            bi = pl[i]
            if bi == prev:
                continue
            prev = bi
            nv = bi + y
            if nv >= t:
                continue
            j = i
            while j > 0 and pl[j - 1] < nv:
                j -= 1
            cenc = 0
            for k2 in range(m):
                if k2 < j:
                    val = pl[k2]
                elif k2 == j:
                    val = nv
                elif k2 <= i:
                    val = pl[k2 - 1]
                else:
                    val = pl[k2]
                cenc |= val << (shift * k2)
            r = _adv(depth + 1, y, cenc, memo, v, nk, trans, lastload, hz1, hz2,
                     fronts, flen, fymax, fh1, fh2, ftag1, ftag2, fvalid,
                     ploads, cl, rtmp, scratch, stats,
                     m, g, t, shift, mask, use_memo, use_prune, max_memo)
            if r == RES_ABORT:
                return RES_ABORT
            if r == RES_FALSE:
                allwin = False
                break
        if allwin:
            if use_memo:
                memo[key] = U8(1)
            return RES_TRUE
    if use_memo:
        memo[key] = U8(0)
        if max_memo > 0 and len(memo) > max_memo:
            return RES_ABORT
    return RES_FALSE


@njit(cache=True)
def _alg(depth, slot, penc, y, memo, v, nk, trans, lastload, hz1, hz2,
         fronts, flen, fymax, fh1, fh2, ftag1, ftag2, fvalid, ploads,
         cl, rtmp, scratch, stats,
         m, g, t, shift, mask, use_memo, use_prune, max_memo):
    """Algorithm to play on item y (used by proof reconstruction)."""
    if not (fvalid[depth + 1, y] == 1 and ftag1[depth + 1, y] == fh1[depth, slot]
            and ftag2[depth + 1, y] == fh2[depth, slot]):
        _extend(depth, slot, y, m, g, trans, lastload, hz1, hz2,
                fronts, flen, fymax, fh1, fh2, rtmp, scratch)
        ftag1[depth + 1, y] = fh1[depth, slot]
        ftag2[depth + 1, y] = fh2[depth, slot]
        fvalid[depth + 1, y] = 1
    pl = ploads[depth]
    for i in range(m):
        pl[i] = (penc >> (shift * i)) & mask
    result = RES_TRUE
    prev = -1
    for i in range(m):
        bi = pl[i]
        if bi == prev:
            continue
        prev = bi
        nv = bi + y
        if nv >= t:
            continue
        j = i
        while j > 0 and pl[j - 1] < nv:
            j -= 1
        cenc = 0
        for k2 in range(m):
            if k2 < j:
                val = pl[k2]
            elif k2 == j:
                val = nv
            elif k2 <= i:
                val = pl[k2 - 1]
            else:
                val = pl[k2]
            cenc |= val << (shift * k2)
        r = _adv(depth + 1, y, cenc, memo, v, nk, trans, lastload, hz1, hz2,
                 fronts, flen, fymax, fh1, fh2, ftag1, ftag2, fvalid,
                 ploads, cl, rtmp, scratch, stats,
                 m, g, t, shift, mask, use_memo, use_prune, max_memo)
        if r != RES_TRUE:
            result = r
            break
    return result


@njit(cache=True)
def _fill_v(packs, sums, order, nk, values, m, g, t):
    mg = m * g
    cl = np.empty(m, np.int64)
    for oi in range(order.shape[0]):
        idx = order[oi]
        b = packs[idx]
        total = sums[idx]
        rank = _pack_rank(b, nk, m)
        if total >= mg or (m - 1) * b[m - 2] > mg - t:
            values[rank] = g + 1
            continue
        s_max = min(g, mg - total)
        best = g + 1
        for s in range(1, s_max + 1):
            if s >= best:
                break
            worst = 0
            prev = -1
            for i in range(m):
                bi = b[i]
                if bi == prev:
                    continue
                prev = bi
                nv = bi + s
                if nv >= t:
                    cand = s
                else:
                    j = i
                    while j > 0 and b[j - 1] < nv:
                        j -= 1
                    for k2 in range(m):
                        if k2 < j:
                            cl[k2] = b[k2]
                        elif k2 == j:
                            cl[k2] = nv
                        elif k2 <= i:
                            cl[k2] = b[k2 - 1]
                        else:
                            cl[k2] = b[k2]
                    cand = max(s, values[_pack_rank(cl, nk, m)])
                if cand > worst:
                    worst = cand
            if worst < best:
                best = worst
        values[rank] = best
    return values


def fill_v_table(params: GameParams, tables: CountTable) -> np.ndarray:
    """Compiled v-table construction over the full rank space."""
    m, g, t = params.m, params.g, params.t
    packs = np.array(
        list(itertools.combinations_with_replacement(range(t), m)), dtype=np.int64
    )[:, ::-1].copy()
    sums = packs.sum(axis=1)
    order = np.argsort(-sums, kind="stable").astype(np.int64)
    dtype = np.int8 if g + 1 <= np.iinfo(np.int8).max else np.int16
    values = np.zeros(tables.n_ranked_packings, dtype=dtype)
    _fill_v(packs, sums, order, tables.n_kn, values, m, g, t)
    return values


class FastState:
    """All arrays owned by one compiled search, reusable for reconstruction."""

    def __init__(self, params: GameParams, tables: CountTable, v: np.ndarray,
                 use_memo: bool = True, use_prune: bool = True, max_memo: int = 0):
        if not supports(params):
            raise ValueError("game parameters exceed the packed-int64 envelope")
        m, g, t = params.m, params.g, params.t
        mg = m * g
        self.params = params
        self.tables = tables
        self.m, self.g, self.t = m, g, t
        self.shift = max(1, (t - 1).bit_length())
        self.mask = (1 << self.shift) - 1
        maxfront = max(1, tables.max_front_size())
        self.v = v
        self.nk = tables.n_kn

        # dense ids over every load vector with coordinates <= g
        offsets = np.zeros(mg + 2, dtype=np.int64)
        for S in range(1, mg + 2):
            offsets[S] = offsets[S - 1] + tables.count_sum_packings(S - 1, g, m)
        n_ids = int(offsets[mg + 1])
        packs = np.array(
            list(itertools.combinations_with_replacement(range(g + 1), m)),
            dtype=np.int64,
        )[:, ::-1].copy()
        self.trans = np.full((n_ids, g, m), -1, dtype=np.int32)
        self.lastload = np.zeros(n_ids, dtype=np.int8)
        _build_transitions(packs, offsets, tables.n_skn, self.trans,
                           self.lastload, m, g)
        rng = np.random.default_rng(0x5EED)
        self.hz1 = rng.integers(0, 2**64, size=n_ids, dtype=np.uint64)
        self.hz2 = rng.integers(0, 2**64, size=n_ids, dtype=np.uint64)

        self.fronts = np.zeros((mg + 2, g + 1, maxfront), dtype=np.int64)
        self.flen = np.zeros((mg + 2, g + 1), dtype=np.int64)
        self.fymax = np.zeros((mg + 2, g + 1), dtype=np.int64)
        self.fh1 = np.zeros((mg + 2, g + 1), dtype=np.uint64)
        self.fh2 = np.zeros((mg + 2, g + 1), dtype=np.uint64)
        self.ftag1 = np.zeros((mg + 2, g + 1), dtype=np.uint64)
        self.ftag2 = np.zeros((mg + 2, g + 1), dtype=np.uint64)
        self.fvalid = np.zeros((mg + 2, g + 1), dtype=np.uint8)
        self.ploads = np.zeros((mg + 2, m), dtype=np.int64)
        self.cl = np.zeros(m, dtype=np.int64)
        self.rtmp = np.zeros(maxfront, dtype=np.int64)
        self.scratch = np.zeros(n_ids, dtype=np.uint8)
        self.stats = np.zeros(3, dtype=np.int64)
        self.memo = Dict.empty(KEY_T, types.uint8)
        self.use_memo = 1 if use_memo else 0
        self.use_prune = 1 if use_prune else 0
        self.max_memo = max_memo
        # root front: the all-zero packing (id 0), kept in slot 0 of depth 0
        self.flen[0, 0] = 1
        self.fronts[0, 0, 0] = 0
        self.fymax[0, 0] = g
        self.fh1[0, 0] = self.hz1[0]
        self.fh2[0, 0] = self.hz2[0]

    def _args(self):
        return (self.memo, self.v, self.nk, self.trans, self.lastload,
                self.hz1, self.hz2, self.fronts, self.flen, self.fymax,
                self.fh1, self.fh2, self.ftag1, self.ftag2, self.fvalid,
                self.ploads, self.cl, self.rtmp, self.scratch, self.stats,
                self.m, self.g, self.t, self.shift, self.mask,
                self.use_memo, self.use_prune, self.max_memo)

    def run(self) -> int:
        return int(_adv(0, 0, 0, *self._args()))

    def adversary_verdict(self, depth: int, slot: int, penc: int) -> int:
        return int(_adv(depth, slot, penc, *self._args()))

    def algorithm_verdict(self, depth: int, slot: int, penc: int, y: int) -> int:
        return int(_alg(depth, slot, penc, y, *self._args()))

    # -- helpers used by proof reconstruction -----------------------------

    def encode(self, loads) -> int:
        enc = 0
        for i, li in enumerate(loads):
            enc |= li << (self.shift * i)
        return enc

    def extend_at(self, depth: int, slot: int, y: int) -> None:
        _extend(depth, slot, y, self.m, self.g, self.trans, self.lastload,
                self.hz1, self.hz2, self.fronts, self.flen, self.fymax,
                self.fh1, self.fh2, self.rtmp, self.scratch)
        self.ftag1[depth + 1, y] = self.fh1[depth, slot]
        self.ftag2[depth + 1, y] = self.fh2[depth, slot]
        self.fvalid[depth + 1, y] = 1


def warmup() -> None:
    """Force JIT compilation on a trivial game (cached across processes)."""
    params = GameParams(2, 2, 3)
    tables = CountTable(params)
    v = fill_v_table(params, tables)
    st = FastState(params, tables, v)
    st.run()
