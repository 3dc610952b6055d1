"""Pairwise and setwise orthogonality checks, the cardinality bound,
and the permutation-array view of (n; n-1, 1) sets.

Two squares with frequencies f and g are orthogonal when superimposing
them produces each ordered symbol pair (i, j) exactly f_i * g_j times.
For binary squares only the (1,1) count needs checking: the row sums fix
the remaining three counts, so a popcount of ANDed grid masks decides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FrequencySquare, MofsSet, NotBinary, OrderMismatch, TypeSignature


class WrongType(Exception):
    """Raised when an operation needs squares of a specific type."""


@dataclass(frozen=True)
class PairCountTable:
    counts: tuple[tuple[int, ...], ...]
    expected: tuple[tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        return self.counts == self.expected


@dataclass(frozen=True)
class PairFailure:
    i: int
    j: int
    symbols: tuple[int, int]
    count: int
    expected: int


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    pairs_checked: int
    failures: tuple[PairFailure, ...]

    @property
    def first_failure(self) -> PairFailure | None:
        return self.failures[0] if self.failures else None


@dataclass(frozen=True)
class BoundReport:
    total: int
    limit: int
    admissible: bool
    complete: bool


def pair_counts(f1: FrequencySquare, f2: FrequencySquare) -> PairCountTable:
    """Full m1 x m2 table of superimposed symbol-pair counts."""
    if f1.n != f2.n:
        raise OrderMismatch(f1.n, f2.n)
    n = f1.n
    m1, m2 = f1.sig.m, f2.sig.m
    counts = [[0] * m2 for _ in range(m1)]
    for r in range(n):
        row1, row2 = f1.cells[r], f2.cells[r]
        for c in range(n):
            counts[row1[c]][row2[c]] += 1
    expected = tuple(
        tuple(f1.sig.freqs[i] * f2.sig.freqs[j] for j in range(m2))
        for i in range(m1)
    )
    return PairCountTable(tuple(tuple(row) for row in counts), expected)


def is_orthogonal_pair(f1: FrequencySquare, f2: FrequencySquare) -> bool:
    if f1.n != f2.n:
        raise OrderMismatch(f1.n, f2.n)
    if f1.is_binary and f2.is_binary:
        # (1,1) count alone decides; row/column sums pin the other three.
        target = f1.sig.freqs[1] * f2.sig.freqs[1]
        return (f1.grid_mask & f2.grid_mask).bit_count() == target
    return pair_counts(f1, f2).ok


def _first_bad_pair(table: PairCountTable) -> tuple[tuple[int, int], int, int]:
    for i, (row, exp) in enumerate(zip(table.counts, table.expected)):
        for j, (c, e) in enumerate(zip(row, exp)):
            if c != e:
                return (i, j), c, e
    raise AssertionError("no mismatch in table")


def verify_mofs(mofs: MofsSet, verbose: bool = False) -> VerificationReport:
    """Check all pairs in lexicographic order.

    Fails fast by default; ``verbose`` collects every failing pair.  On
    success the set is flagged verified.
    """
    failures = []
    pairs = 0
    k = mofs.k
    for i in range(k):
        for j in range(i + 1, k):
            pairs += 1
            if is_orthogonal_pair(mofs.squares[i], mofs.squares[j]):
                continue
            table = pair_counts(mofs.squares[i], mofs.squares[j])
            symbols, count, expected = _first_bad_pair(table)
            failures.append(PairFailure(i, j, symbols, count, expected))
            if not verbose:
                report = VerificationReport(False, pairs, tuple(failures))
                return report
    ok = not failures
    if ok:
        mofs.verified = True
    return VerificationReport(ok, pairs, tuple(failures))


def ensure_verified(mofs: MofsSet) -> None:
    """Verify on demand; raise if the set is not mutually orthogonal."""
    if mofs.verified:
        return
    report = verify_mofs(mofs)
    if not report.ok:
        f = report.first_failure
        raise ValueError(
            f"set is not mutually orthogonal: pair ({f.i}, {f.j}) "
            f"has {f.count} occurrences of {f.symbols}, expected {f.expected}"
        )


def cardinality_bound(order: int, symbol_counts) -> BoundReport:
    """Sum of (m_t - 1) against the (n-1)^2 ceiling for sets of MOFS."""
    counts = list(symbol_counts)
    if any(m < 2 for m in counts):
        raise ValueError("each square needs at least two symbols")
    total = sum(m - 1 for m in counts)
    limit = (order - 1) ** 2
    return BoundReport(total, limit, total <= limit, total == limit)


def bound_for_set(mofs: MofsSet) -> BoundReport:
    return cardinality_bound(mofs.order, [sq.sig.m for sq in mofs.squares])


def epa_from_mofs(mofs: MofsSet) -> tuple[tuple[int, ...], ...]:
    """Rows of permutations (1-based) read off a set of (n; n-1, 1) squares.

    Row t, position j is the row index of the single 1 in column j of
    square t.  For a verified set any two output rows agree in exactly one
    position, i.e. they differ in n-1 places.
    """
    n = mofs.order
    expected = TypeSignature.binary(n, 1)
    rows = []
    for sq in mofs.squares:
        if sq.sig != expected:
            raise WrongType(f"square has type {sq.sig}, expected {expected}")
        perm = [0] * n
        for r in range(n):
            for c in range(n):
                if sq.cells[r][c]:
                    perm[c] = r + 1
        rows.append(tuple(perm))
    return tuple(rows)
