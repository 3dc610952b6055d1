"""Canonical forms and isomorph rejection for sets of binary squares.

Two sets are isomorphic when one maps to the other by a common row
permutation, a common column permutation, transposing every square,
complementing individual squares (the only non-trivial symbol permutation
of a binary square), and reordering the squares.  The canonical form is
the lexicographically smallest superimposed grid (cells read as k-bit
integers, the square in slot 0 giving the most significant bit) over the
whole group, found by exact backtracking rather than a general graph
canonizer; at the catalogue scales used here (n <= 6, small k) this is
fast and has no external dependencies.

``preserve_types`` restricts complementation to balanced squares
(lambda1 = n/2), the one case where complementing does not change the
type.  Catalogue counts for fixed type vectors use this mode; passing
False allows complementing any square, which merges a type with its
complement type.
"""

from __future__ import annotations

import itertools
import struct
from dataclasses import dataclass

from .core import FrequencySquare, MofsSet, NotBinary, complement


@dataclass(frozen=True)
class GroupOps:
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    transposed: bool
    complement_mask: tuple[bool, ...]
    square_order: tuple[int, ...]


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    k: int
    key: tuple[int, ...]
    ops: GroupOps

    @property
    def blob(self) -> bytes:
        """Fixed-width big-endian packing; byte order matches key order."""
        return struct.pack(f">{len(self.key)}Q", *self.key)


def transform_set(mofs: MofsSet, ops: GroupOps) -> MofsSet:
    """Apply an isomorphism operation record to a set."""
    squares = [mofs.squares[i] for i in ops.square_order]
    squares = [complement(sq) if flip else sq
               for sq, flip in zip(squares, ops.complement_mask)]
    if ops.transposed:
        squares = [sq.transposed() for sq in squares]
    squares = [sq.permuted(ops.row_perm, ops.col_perm) for sq in squares]
    return MofsSet(mofs.order, tuple(squares), strict=mofs.strict)


def canonical_form(mofs: MofsSet, ordered: bool = False,
                   preserve_types: bool = True) -> CanonicalForm:
    """Minimize the superimposed grid over the isomorphism group.

    ``ordered`` freezes the square order (for sets that carry one);
    otherwise all reorderings compete.
    """
    if not mofs.all_binary:
        raise NotBinary()
    n, k = mofs.order, mofs.k
    if k == 0:
        return CanonicalForm(n, 0, (0,) * (n * n),
                             GroupOps(tuple(range(n)), tuple(range(n)),
                                      False, (), ()))
    squares = mofs.squares
    if preserve_types:
        flippable = [t for t in range(k) if 2 * squares[t].sig.lambda1 == n]
    else:
        flippable = list(range(k))
    if ordered:
        orders = [tuple(range(k))]
    else:
        seen = set()
        orders = []
        for perm in itertools.permutations(range(k)):
            fingerprint = tuple(squares[i].cells for i in perm)
            if fingerprint not in seen:
                seen.add(fingerprint)
                orders.append(perm)

    best: tuple[int, ...] | None = None
    best_ops: GroupOps | None = None
    for transposed in (False, True):
        grids = [sq.transposed().cells if transposed else sq.cells
                 for sq in squares]
        for order in orders:
            for flips in _flip_masks(k, [t for t in flippable]):
                rows = tuple(
                    tuple(
                        sum(((grids[order[slot]][r][c] ^ flips[order[slot]])
                             << (k - 1 - slot)) for slot in range(k))
                        for c in range(n)
                    )
                    for r in range(n)
                )
                res = _min_matrix(rows, best)
                if res is not None:
                    best, row_perm, col_perm = res
                    best_ops = GroupOps(
                        row_perm, col_perm, transposed,
                        tuple(bool(flips[i]) for i in order), order)
    return CanonicalForm(n, k, best, best_ops)


def _flip_masks(k: int, flippable):
    """All 0/1 complement masks supported on the flippable squares."""
    for bits in itertools.product((0, 1), repeat=len(flippable)):
        mask = [0] * k
        for t, bit in zip(flippable, bits):
            mask[t] = bit
        yield tuple(mask)


def _min_matrix(rows, incoming_best):
    """Smallest flattening of ``rows`` under independent row/column perms.

    Exact branch and bound: at each level only rows achieving the locally
    minimal emission (values sorted inside the current column groups) can
    start an optimal completion, and identical rows are interchangeable so
    one representative suffices.  Returns (key, row_perm, col_perm) when
    the result beats ``incoming_best``, else None.
    """
    n = len(rows)
    best = list(incoming_best) if incoming_best is not None else None
    best_ops = None

    def refine(row, groups):
        out = []
        newgroups = []
        for g in groups:
            if len(g) == 1:
                out.append(row[g[0]])
                newgroups.append(g)
                continue
            sg = sorted(g, key=row.__getitem__)
            out.extend(row[c] for c in sg)
            start = 0
            for idx in range(1, len(sg)):
                if row[sg[idx]] != row[sg[start]]:
                    newgroups.append(sg[start:idx])
                    start = idx
            newgroups.append(sg[start:])
        return out, newgroups

    def rec(order, groups, remaining, out):
        nonlocal best, best_ops
        if not remaining:
            if best is None or out < best:
                best = out[:]
                best_ops = (tuple(order), tuple(c for g in groups for c in g))
            return
        emits = []
        lo = None
        for r in remaining:
            emitted, newgroups = refine(rows[r], groups)
            emits.append((r, emitted, newgroups))
            if lo is None or emitted < lo:
                lo = emitted
        # The incumbent may prune only while this prefix still matches it.
        if best is not None and out == best[:len(out)]:
            if lo > best[len(out):len(out) + n]:
                return
        seen = set()
        for r, emitted, newgroups in emits:
            if emitted != lo or rows[r] in seen:
                continue
            seen.add(rows[r])
            rec(order + [r], newgroups, remaining - {r}, out + emitted)

    rec([], [list(range(n))], frozenset(range(n)), [])
    if best_ops is None:
        return None
    return tuple(best), best_ops[0], best_ops[1]


@dataclass(frozen=True)
class DedupResult:
    representatives: tuple[MofsSet, ...]
    class_sizes: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return len(self.representatives)


def dedupe_catalogue(stream, ordered: bool = False,
                     preserve_types: bool = True) -> DedupResult:
    """One representative per isomorphism class, first seen in stream order."""
    reps: list[MofsSet] = []
    sizes: list[int] = []
    index: dict[tuple[int, ...], int] = {}
    for mofs in stream:
        key = canonical_form(mofs, ordered=ordered,
                             preserve_types=preserve_types).key
        slot = index.get(key)
        if slot is None:
            index[key] = len(reps)
            reps.append(mofs)
            sizes.append(1)
        else:
            sizes[slot] += 1
    return DedupResult(tuple(reps), tuple(sizes))
