"""Compiled branch-and-bound maximum-clique kernel.

Search over word-packed candidate bitsets in the style of bitset
branch-and-bound clique solvers: at each node the candidate set is split
into t = floor - depth independent classes (any clique meets each class at
most once, so class members alone can never beat the incumbent) and the
leftover vertices become the branch list.  Before a leftover vertex is
accepted for branching, a single-swap recoloring tries to squeeze it into
an existing class, which empties many branch lists outright.

The recursion is unrolled onto explicit per-depth stacks so the whole
thing JIT-compiles; per-depth branch lists live in one flat arena whose
occupancy along a root-to-leaf path stays small, with an overflow flag so
the driver can retry with a larger arena instead of ever reading garbage.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U1 = np.uint64(1)
U0 = np.uint64(0)
M1 = np.uint64(0x5555555555555555)
M2 = np.uint64(0x3333333333333333)
M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
H01 = np.uint64(0x0101010101010101)
FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & M1)
    x = (x & M2) + ((x >> np.uint64(2)) & M2)
    x = (x + (x >> np.uint64(4))) & M4
    return (x * H01) >> np.uint64(56)


@njit(cache=True, inline="always")
def _lowest_bit_index(x):
    return _popcount((x & (~x + U1)) - U1)


@njit(cache=True)
def _build_level(radj, cand, t, cls, order_flat, start, cap, rest, avail):
    """Greedy-color ``cand``; list vertices coloured above ``t``.

    Any clique meets each colour class at most once, so the first ``t``
    classes can never push past the incumbent on their own and only the
    overflow vertices need branching, ordered by colour so the search
    consumes the most-constrained ones first.  Before a vertex joins the
    branch list a single-swap recolouring tries to squeeze it into one of
    the first ``t`` classes: if its only conflict u in class i can move to
    a later conflict-free class, u moves and the vertex takes its place.
    Returns the branch-list length, or -1 when the arena is full.
    """
    w_count = cand.shape[0]
    for w in range(w_count):
        rest[w] = cand[w]
    peel = t if t > 0 else 0
    ln = 0
    ci = -1
    while True:
        nonzero = False
        for w in range(w_count):
            avail[w] = rest[w]
            if rest[w]:
                nonzero = True
        if not nonzero:
            return ln
        ci += 1
        in_first = ci < peel
        if in_first:
            for w in range(w_count):
                cls[ci, w] = U0
        for w in range(w_count):
            word = avail[w]
            while word:
                v = np.int64(w * 64 + _lowest_bit_index(word))
                bit = U1 << np.uint64(v & 63)
                rest[w] &= ~bit
                row_v = radj[v]
                if in_first:
                    cls[ci, w] |= bit
                else:
                    placed = False
                    for cc in range(peel):
                        conflicts = 0
                        first_u = np.int64(-1)
                        for ww in range(w_count):
                            x = cls[cc, ww] & row_v[ww]
                            if x:
                                if conflicts == 0:
                                    first_u = np.int64(
                                        ww * 64 + _lowest_bit_index(x))
                                conflicts += np.int64(_popcount(x))
                                if conflicts > 1:
                                    break
                        if conflicts == 0:
                            cls[cc, v >> 6] |= bit
                            placed = True
                            break
                        if conflicts == 1:
                            row_u = radj[first_u]
                            for cj in range(cc + 1, peel):
                                hit = False
                                for ww in range(w_count):
                                    if cls[cj, ww] & row_u[ww]:
                                        hit = True
                                        break
                                if not hit:
                                    ubit = U1 << np.uint64(first_u & 63)
                                    cls[cc, first_u >> 6] &= ~ubit
                                    cls[cj, first_u >> 6] |= ubit
                                    cls[cc, v >> 6] |= bit
                                    placed = True
                                    break
                            if placed:
                                break
                    if not placed:
                        if start + ln >= cap:
                            return -1
                        order_flat[start + ln] = v
                        ln += 1
                for ww in range(w, w_count):
                    avail[ww] &= ~row_v[ww]
                avail[w] &= ~bit
                word = avail[w]


@njit(cache=True)
def _search(radj, budget, prune_below, flat_cap):
    n, w_count = radj.shape
    order_flat = np.empty(flat_cap, np.int64)
    base = np.zeros(n + 2, np.int64)
    length = np.zeros(n + 2, np.int64)
    idx = np.zeros(n + 2, np.int64)
    cand = np.zeros((n + 2, w_count), np.uint64)
    cls = np.zeros((n + 2, w_count), np.uint64)
    path = np.zeros(n + 2, np.int64)
    best = np.zeros(n, np.int64)
    rest = np.empty(w_count, np.uint64)
    avail = np.empty(w_count, np.uint64)
    nodes = 0
    exhausted = False

    for w in range(w_count):
        cand[0, w] = FULL
    tail = n & 63
    if tail:
        cand[0, w_count - 1] = (U1 << np.uint64(tail)) - U1

    # Greedy warm start so the class threshold is realistic from node one.
    for w in range(w_count):
        rest[w] = cand[0, w]
    best_len = 0
    while True:
        v = np.int64(-1)
        for w in range(w_count):
            if rest[w]:
                v = np.int64(w * 64 + _lowest_bit_index(rest[w]))
                break
        if v < 0:
            break
        best[best_len] = v
        best_len += 1
        row = radj[v]
        for w in range(w_count):
            rest[w] &= row[w]

    d = 0
    floor = best_len if best_len > prune_below else prune_below
    ln = _build_level(radj, cand[0], floor, cls, order_flat, 0, flat_cap,
                      rest, avail)
    if ln < 0:
        return best_len, best, nodes, exhausted, True
    base[0] = 0
    length[0] = ln
    idx[0] = ln - 1

    while d >= 0:
        i = idx[d]
        if i < 0:
            d -= 1
            continue
        if budget > 0 and nodes >= budget:
            exhausted = True
            break
        nodes += 1
        v = order_flat[base[d] + i]
        idx[d] = i - 1
        cand[d, v >> 6] &= ~(U1 << np.uint64(v & 63))
        row = radj[v]
        nonempty = False
        for w in range(w_count):
            x = cand[d, w] & row[w]
            cand[d + 1, w] = x
            if x:
                nonempty = True
        path[d] = v
        if not nonempty:
            if d + 1 > best_len:
                best_len = d + 1
                for j in range(d + 1):
                    best[j] = path[j]
            continue
        floor = best_len if best_len > prune_below else prune_below
        size = np.int64(0)
        for w in range(w_count):
            size += np.int64(_popcount(cand[d + 1, w]))
        if d + 1 + size <= floor:
            continue
        nb = base[d] + length[d]
        ln = _build_level(radj, cand[d + 1], floor - (d + 1), cls, order_flat,
                          nb, flat_cap, rest, avail)
        if ln < 0:
            return best_len, best, nodes, exhausted, True
        if ln == 0:
            continue
        d += 1
        base[d] = nb
        length[d] = ln
        idx[d] = ln - 1

    return best_len, best, nodes, exhausted, False


@njit(cache=True)
def _induce(radj, vlist, radj2):
    """Adjacency of the subgraph induced on ``vlist`` (ascending indices)."""
    n2 = vlist.shape[0]
    for i in range(n2):
        row = radj[vlist[i]]
        for j in range(i + 1, n2):
            u = vlist[j]
            if row[u >> 6] & (U1 << np.uint64(u & 63)):
                radj2[i, j >> 6] |= U1 << np.uint64(j & 63)
                radj2[j, i >> 6] |= U1 << np.uint64(i & 63)


@njit(cache=True)
def _search_root(radj, budget, prune_below, flat_cap):
    """Root layer over compact reindexed subsearches.

    Large graphs spend nearly all their time below depth one, so each root
    branch re-packs its candidate set into a fresh small universe; the word
    count per bitset operation shrinks with the subproblem instead of
    staying at the root width.
    """
    n, w_count = radj.shape
    order_flat = np.empty(flat_cap, np.int64)
    cls = np.zeros((n + 2, w_count), np.uint64)
    cand = np.empty(w_count, np.uint64)
    rest = np.empty(w_count, np.uint64)
    avail = np.empty(w_count, np.uint64)
    best = np.zeros(n, np.int64)
    nodes = 0
    exhausted = False

    for w in range(w_count):
        cand[w] = FULL
    tail = n & 63
    if tail:
        cand[w_count - 1] = (U1 << np.uint64(tail)) - U1

    for w in range(w_count):
        rest[w] = cand[w]
    best_len = 0
    while True:
        v = np.int64(-1)
        for w in range(w_count):
            if rest[w]:
                v = np.int64(w * 64 + _lowest_bit_index(rest[w]))
                break
        if v < 0:
            break
        best[best_len] = v
        best_len += 1
        row = radj[v]
        for w in range(w_count):
            rest[w] &= row[w]

    floor = best_len if best_len > prune_below else prune_below
    ln = _build_level(radj, cand, floor, cls, order_flat, 0, flat_cap,
                      rest, avail)
    if ln < 0:
        return best_len, best, nodes, exhausted, True

    for i in range(ln - 1, -1, -1):
        if budget > 0 and nodes >= budget:
            exhausted = True
            break
        nodes += 1
        v = order_flat[i]
        cand[v >> 6] &= ~(U1 << np.uint64(v & 63))
        row = radj[v]
        n2 = 0
        for w in range(w_count):
            n2 += np.int64(_popcount(cand[w] & row[w]))
        floor = best_len if best_len > prune_below else prune_below
        if n2 == 0 or 1 + n2 <= floor:
            if 1 > best_len:
                best_len = 1
                best[0] = v
            continue
        vlist = np.empty(n2, np.int64)
        pos = 0
        for w in range(w_count):
            word = cand[w] & row[w]
            while word:
                vlist[pos] = np.int64(w * 64 + _lowest_bit_index(word))
                word &= word - U1
                pos += 1
        w2 = (n2 + 63) >> 6
        radj2 = np.zeros((n2, w2), np.uint64)
        _induce(radj, vlist, radj2)
        sub_budget = np.int64(0)
        if budget > 0:
            sub_budget = budget - nodes
            if sub_budget <= 0:
                exhausted = True
                break
        sub_len, sub_best, sub_nodes, sub_exhausted, sub_overflow = _search(
            radj2, sub_budget, floor - 1, flat_cap)
        nodes += sub_nodes
        if sub_overflow:
            return best_len, best, nodes, exhausted, True
        if sub_exhausted:
            exhausted = True
        if 1 + sub_len > best_len:
            best_len = 1 + sub_len
            best[0] = v
            for j in range(sub_len):
                best[1 + j] = vlist[sub_best[j]]
        if exhausted:
            break

    return best_len, best, nodes, exhausted, False


#: Graphs below this size skip the root reindexing layer.
REINDEX_THRESHOLD = 1024


def solve(radj: np.ndarray, budget: int | None, prune_below: int):
    """Run the kernel, growing the arena on the (rare) overflow signal."""
    n = radj.shape[0]
    cap = max(4096, 8 * n)
    budget_arg = 0 if budget is None else int(budget)
    kernel = _search_root if n > REINDEX_THRESHOLD else _search
    while True:
        best_len, best, nodes, exhausted, overflow = kernel(
            radj, budget_arg, prune_below, cap)
        if not overflow:
            return [int(v) for v in best[:best_len]], int(nodes), bool(exhausted)
        cap *= 4
