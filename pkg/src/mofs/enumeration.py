"""Exhaustive generation of binary frequency squares of a given type.

Squares are built row by row over n-bit row masks with popcount lambda1.
Two prunes keep the tree small: column sums must stay completable (each
running column sum at most lambda1 and the deficit coverable by the rows
still to come), and in mate mode the running (1,1) count against every
constraint square must stay on course for its exact target.

Emission order is row-wise lexicographic with row masks compared as
integers (bit c = column c, least significant bit first), which makes
catalogue files reproducible and diffable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import FrequencySquare, MofsError, square_from_row_masks


class InvalidSpec(MofsError):
    pass


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate: order, type, optional dedup and orthogonality constraints.

    ``dedup_complement`` only has an effect for lambda1 = n/2 (the one case
    where a square and its complement share a type); it then emits exactly
    one member of each complement pair, the one whose row-mask sequence is
    lexicographically smaller.
    """

    n: int
    lambda1: int
    dedup_complement: bool = False
    constraints: tuple[FrequencySquare, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.n < 1:
            raise InvalidSpec("order must be positive")
        if not 1 <= self.lambda1 <= self.n - 1:
            raise InvalidSpec("lambda1 must lie in 1..n-1")
        for sq in self.constraints:
            if sq.n != self.n:
                raise InvalidSpec("constraint square has wrong order")
            if not sq.is_binary:
                raise InvalidSpec("constraint squares must be binary")


def row_mask_candidates(n: int, lambda1: int) -> tuple[int, ...]:
    """All n-bit masks of popcount lambda1, ascending."""
    masks = [
        sum(1 << c for c in combo)
        for combo in itertools.combinations(range(n), lambda1)
    ]
    return tuple(sorted(masks))


def enumerate_squares(spec: EnumSpec, sink) -> int:
    """Stream every square matching ``spec`` into ``sink``; return the count.

    ``sink`` receives a FrequencySquare per emission and may raise
    StopIteration to abort the walk early (the aborting square is counted).
    """
    count = 0

    def wrapped(masks):
        nonlocal count
        count += 1
        sink(square_from_row_masks(spec.n, spec.lambda1, masks))

    try:
        _search(spec, wrapped)
    except StopIteration:
        pass
    return count


def count_squares(spec: EnumSpec) -> int:
    """Count matching squares without materializing them."""
    count = 0

    def bump(_masks):
        nonlocal count
        count += 1

    _search(spec, bump)
    return count


def _search(spec: EnumSpec, emit) -> None:
    n, lam = spec.n, spec.lambda1
    candidates = row_mask_candidates(n, lam)
    full = (1 << n) - 1
    dedup = spec.dedup_complement and 2 * lam == n
    # A square's first row always decides the lexicographic comparison with
    # its complement, so restricting the first row halves the stream.
    first_candidates = (
        tuple(m for m in candidates if m < (full ^ m)) if dedup else candidates
    )
    cons = [(sq.row_masks, lam * sq.sig.freqs[1], min(lam, sq.sig.freqs[1]))
            for sq in spec.constraints]
    col_sums = [0] * n
    chosen = [0] * n
    pair_counts = [0] * len(cons)

    def place(r: int) -> None:
        rows_left = n - r - 1
        forbidden = 0
        must = 0
        for c in range(n):
            s = col_sums[c]
            if s == lam:
                forbidden |= 1 << c
            elif lam - s == rows_left + 1:
                must |= 1 << c
        pool = first_candidates if r == 0 else candidates
        for mask in pool:
            if mask & forbidden or (mask & must) != must:
                continue
            ok = True
            for t, (crows, target, cap) in enumerate(cons):
                cnt = pair_counts[t] + (mask & crows[r]).bit_count()
                if cnt > target or cnt + rows_left * cap < target:
                    ok = False
                    break
                pair_counts[t] = cnt
            if not ok:
                # Roll back the constraint counters updated so far.
                for u in range(t):
                    pair_counts[u] -= (mask & cons[u][0][r]).bit_count()
                continue
            chosen[r] = mask
            m = mask
            while m:
                low = m & -m
                col_sums[low.bit_length() - 1] += 1
                m ^= low
            if r == n - 1:
                emit(tuple(chosen))
            else:
                place(r + 1)
            m = mask
            while m:
                low = m & -m
                col_sums[low.bit_length() - 1] -= 1
                m ^= low
            for t, (crows, _target, _cap) in enumerate(cons):
                pair_counts[t] -= (mask & crows[r]).bit_count()

    place(0)


def random_square(n: int, lambda1: int, rng: random.Random) -> FrequencySquare:
    """One uniformly-shuffled backtracking sample (not uniform over squares)."""
    spec = EnumSpec(n, lambda1)
    return _random_search(spec, rng)


def random_mate(base_squares, lambda1: int, rng: random.Random) -> FrequencySquare | None:
    """A random square of the given type orthogonal to every base square."""
    base = tuple(base_squares)
    if not base:
        raise InvalidSpec("base must be non-empty; use random_square instead")
    spec = EnumSpec(base[0].n, lambda1, constraints=base)
    return _random_search(spec, rng)


def _random_search(spec: EnumSpec, rng: random.Random) -> FrequencySquare | None:
    """First completion of a backtracking walk with shuffled candidates."""
    n, lam = spec.n, spec.lambda1
    base = list(row_mask_candidates(n, lam))
    cons = [(sq.row_masks, lam * sq.sig.freqs[1], min(lam, sq.sig.freqs[1]))
            for sq in spec.constraints]
    col_sums = [0] * n
    chosen = [0] * n

    def place(r: int, counts) -> bool:
        rows_left = n - r - 1
        forbidden = 0
        must = 0
        for c in range(n):
            s = col_sums[c]
            if s == lam:
                forbidden |= 1 << c
            elif lam - s == rows_left + 1:
                must |= 1 << c
        pool = base[:]
        rng.shuffle(pool)
        for mask in pool:
            if mask & forbidden or (mask & must) != must:
                continue
            nxt = []
            ok = True
            for (crows, target, cap), cnt in zip(cons, counts):
                cnt += (mask & crows[r]).bit_count()
                if cnt > target or cnt + rows_left * cap < target:
                    ok = False
                    break
                nxt.append(cnt)
            if not ok:
                continue
            chosen[r] = mask
            m = mask
            while m:
                low = m & -m
                col_sums[low.bit_length() - 1] += 1
                m ^= low
            if r == n - 1 or place(r + 1, nxt):
                return True
            m = mask
            while m:
                low = m & -m
                col_sums[low.bit_length() - 1] -= 1
                m ^= low
        return False

    if place(0, [0] * len(cons)):
        return square_from_row_masks(n, lam, tuple(chosen))
    return None
