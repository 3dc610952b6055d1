"""Core types and encodings for frequency squares.

A frequency square of type (n; f0, ..., f_{m-1}) is an n x n array over
symbols 0..m-1 in which symbol i occurs exactly f_i times in every row and
in every column.  Binary squares (m = 2) additionally carry a bitmask view
(one integer per row, bit c set iff the cell in column c holds symbol 1)
that the enumeration and search kernels operate on.

Rows, columns, symbols and square indices are 0-based throughout the
library; the CLI renders them 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

#: Largest number of squares a single superimposed decimal grid may encode.
#: One bit per square; pinned to a machine word so grids stay plain integers.
MAX_SUPERIMPOSED = 64


class MofsError(Exception):
    """Base class for structured errors raised by this package."""


class SymbolOutOfRange(MofsError):
    def __init__(self, row: int, col: int):
        super().__init__(f"symbol out of range at cell ({row}, {col})")
        self.row = row
        self.col = col


class RowCountViolation(MofsError):
    def __init__(self, row: int, symbol: int):
        super().__init__(f"row {row}: symbol {symbol} occurs too often")
        self.row = row
        self.symbol = symbol


class ColCountViolation(MofsError):
    def __init__(self, col: int, symbol: int):
        super().__init__(f"column {col}: symbol {symbol} occurs too often")
        self.col = col
        self.symbol = symbol


class NotBinary(MofsError):
    def __init__(self, msg: str = "operation requires binary squares"):
        super().__init__(msg)


class TooManySquares(MofsError):
    def __init__(self, k: int):
        super().__init__(f"{k} squares exceed the {MAX_SUPERIMPOSED}-bit grid limit")
        self.k = k


class EntryTooLarge(MofsError):
    def __init__(self, row: int, col: int):
        super().__init__(f"grid entry at ({row}, {col}) does not fit in k bits")
        self.row = row
        self.col = col


class ValidationFailure(MofsError):
    def __init__(self, index: int, cause: MofsError):
        super().__init__(f"square {index} failed validation: {cause}")
        self.index = index
        self.cause = cause


class OrderMismatch(MofsError):
    def __init__(self, n1: int, n2: int):
        super().__init__(f"orders differ: {n1} vs {n2}")
        self.n1 = n1
        self.n2 = n2


@dataclass(frozen=True)
class TypeSignature:
    """Order plus per-symbol frequencies, e.g. (6; 4, 2)."""

    n: int
    freqs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "freqs", tuple(self.freqs))
        if self.n < 1:
            raise ValueError("order must be positive")
        if not self.freqs or any(f < 1 for f in self.freqs):
            raise ValueError("frequencies must be positive")
        if sum(self.freqs) != self.n:
            raise ValueError("frequencies must sum to the order")

    @property
    def m(self) -> int:
        return len(self.freqs)

    @property
    def is_binary(self) -> bool:
        return self.m == 2

    @property
    def lambda1(self) -> int:
        """Frequency of symbol 1 (binary squares only)."""
        if not self.is_binary:
            raise NotBinary()
        return self.freqs[1]

    @property
    def type_index(self) -> int:
        """min(lambda1, n - lambda1): the complement-invariant type of a binary square."""
        if not self.is_binary:
            raise NotBinary()
        return min(self.freqs[0], self.freqs[1])

    def complemented(self) -> "TypeSignature":
        if not self.is_binary:
            raise NotBinary()
        return TypeSignature(self.n, (self.freqs[1], self.freqs[0]))

    @classmethod
    def binary(cls, n: int, lambda1: int) -> "TypeSignature":
        return cls(n, (n - lambda1, lambda1))

    def __str__(self) -> str:
        return f"({self.n};{','.join(str(f) for f in self.freqs)})"


@dataclass(frozen=True)
class FrequencySquare:
    """A validated frequency square.

    Instances should be produced by :func:`validate_square` or by the
    enumeration kernels, which only emit arrays that satisfy the row and
    column counts by construction.
    """

    sig: TypeSignature
    cells: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def is_binary(self) -> bool:
        return self.sig.is_binary

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Per-row bitmasks (bit c set iff cells[r][c] == 1).  Binary only."""
        if not self.is_binary:
            raise NotBinary()
        return tuple(
            sum(1 << c for c, v in enumerate(row) if v) for row in self.cells
        )

    @cached_property
    def grid_mask(self) -> int:
        """All n*n cells as one integer, row r occupying bits [r*n, (r+1)*n)."""
        n = self.n
        return sum(m << (r * n) for r, m in enumerate(self.row_masks))

    def transposed(self) -> "FrequencySquare":
        return FrequencySquare(self.sig, tuple(zip(*self.cells)))

    def permuted(self, row_perm, col_perm) -> "FrequencySquare":
        """Square with new row r = old row row_perm[r], likewise for columns."""
        cells = tuple(
            tuple(self.cells[row_perm[r]][col_perm[c]] for c in range(self.n))
            for r in range(self.n)
        )
        return FrequencySquare(self.sig, cells)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.cells)


def square_from_row_masks(n: int, lambda1: int, masks) -> FrequencySquare:
    """Build a binary square from per-row bitmasks without re-validation."""
    sig = TypeSignature.binary(n, lambda1)
    cells = tuple(
        tuple((mask >> c) & 1 for c in range(n)) for mask in masks
    )
    return FrequencySquare(sig, cells)


def validate_square(sig: TypeSignature, cells) -> FrequencySquare:
    """Check row and column symbol counts against ``sig``.

    Scans rows first, then columns; within a line the first symbol whose
    running count exceeds its frequency is reported.  Raises
    SymbolOutOfRange, RowCountViolation or ColCountViolation.
    """
    n, m = sig.n, sig.m
    grid = tuple(tuple(row) for row in cells)
    if len(grid) != n or any(len(row) != n for row in grid):
        raise ValueError(f"expected a {n}x{n} array")
    for r, row in enumerate(grid):
        counts = [0] * m
        for c, v in enumerate(row):
            if not 0 <= v < m:
                raise SymbolOutOfRange(r, c)
            counts[v] += 1
            if counts[v] > sig.freqs[v]:
                raise RowCountViolation(r, v)
    for c in range(n):
        counts = [0] * m
        for r in range(n):
            v = grid[r][c]
            counts[v] += 1
            if counts[v] > sig.freqs[v]:
                raise ColCountViolation(c, v)
    return FrequencySquare(sig, grid)


def complement(square: FrequencySquare) -> FrequencySquare:
    """Flip every cell of a binary square; the type swaps its frequencies."""
    if not square.is_binary:
        raise NotBinary()
    cells = tuple(tuple(1 - v for v in row) for row in square.cells)
    return FrequencySquare(square.sig.complemented(), cells)


@dataclass(eq=True)
class MofsSet:
    """An ordered collection of frequency squares of one order.

    ``verified`` is set by orthogonality.verify_mofs once every pair has
    been checked; it is excluded from equality.  Construction rejects
    single-symbol squares (they are orthogonal to everything and excluded
    from sets by convention) unless ``strict=False``, which the decimal
    decoder uses for conversion purposes.
    """

    order: int
    squares: tuple[FrequencySquare, ...]
    verified: bool = field(default=False, compare=False)
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        self.squares = tuple(self.squares)
        for sq in self.squares:
            if sq.n != self.order:
                raise OrderMismatch(self.order, sq.n)
            if self.strict and sq.sig.m < 2:
                raise ValueError("single-symbol squares cannot join a set")

    @property
    def k(self) -> int:
        return len(self.squares)

    @property
    def all_binary(self) -> bool:
        return all(sq.is_binary for sq in self.squares)

    def lambda1s(self) -> tuple[int, ...]:
        return tuple(sq.sig.lambda1 for sq in self.squares)

    def type_indices(self) -> tuple[int, ...]:
        """Complement-normalized binary types, one per square."""
        return tuple(sq.sig.type_index for sq in self.squares)

    def subset(self, indices) -> "MofsSet":
        return MofsSet(self.order, tuple(self.squares[i] for i in indices),
                       strict=self.strict)

    def extended(self, extra) -> "MofsSet":
        return MofsSet(self.order, self.squares + tuple(extra), strict=self.strict)


def encode_decimal(mofs: MofsSet) -> tuple[tuple[int, ...], ...]:
    """Superimpose binary squares into one integer grid.

    Square 0 contributes the most significant bit of every cell, so a cell
    of a k-square set reads as the k-digit binary string of its column of
    entries.  Requires k <= MAX_SUPERIMPOSED.
    """
    k = mofs.k
    if k > MAX_SUPERIMPOSED:
        raise TooManySquares(k)
    if not mofs.all_binary:
        raise NotBinary()
    n = mofs.order
    return tuple(
        tuple(
            sum(mofs.squares[t].cells[r][c] << (k - 1 - t) for t in range(k))
            for c in range(n)
        )
        for r in range(n)
    )


def decode_decimal(grid, k: int, sigs) -> MofsSet:
    """Inverse of encode_decimal; every decoded square is validated."""
    sigs = list(sigs)
    if len(sigs) != k:
        raise ValueError(f"expected {k} signatures, got {len(sigs)}")
    rows = tuple(tuple(row) for row in grid)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("grid must be square")
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            if not 0 <= v < (1 << k):
                raise EntryTooLarge(r, c)
    squares = []
    for t in range(k):
        cells = tuple(
            tuple((rows[r][c] >> (k - 1 - t)) & 1 for c in range(n))
            for r in range(n)
        )
        try:
            squares.append(validate_square(sigs[t], cells))
        except MofsError as exc:
            raise ValidationFailure(t, exc) from exc
    strict = all(sig.m >= 2 for sig in sigs)
    return MofsSet(n, tuple(squares), strict=strict)
