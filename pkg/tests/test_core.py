import itertools

import pytest

from mofs.core import (ColCountViolation, EntryTooLarge, FrequencySquare,
                       MofsSet, NotBinary, RowCountViolation, SymbolOutOfRange,
                       TooManySquares, TypeSignature, ValidationFailure,
                       complement, decode_decimal, encode_decimal,
                       square_from_row_masks, validate_square)
from mofs.orthogonality import is_orthogonal_pair

import corpus


def all_binary_grids(n):
    for bits in range(1 << (n * n)):
        yield [[(bits >> (r * n + c)) & 1 for c in range(n)] for r in range(n)]


def is_valid_by_counting(sig, grid):
    n = sig.n
    for r in range(n):
        for s in range(sig.m):
            if sum(1 for v in grid[r] if v == s) != sig.freqs[s]:
                return False
    for c in range(n):
        for s in range(sig.m):
            if sum(1 for r in range(n) if grid[r][c] == s) != sig.freqs[s]:
                return False
    return True


def test_signature_invariants():
    sig = TypeSignature(6, (4, 2))
    assert sig.m == 2 and sig.lambda1 == 2 and sig.type_index == 2
    assert str(sig) == "(6;4,2)"
    assert sig.complemented().freqs == (2, 4)
    with pytest.raises(ValueError):
        TypeSignature(5, (4, 2))
    with pytest.raises(ValueError):
        TypeSignature(4, (4, 0))


def test_validate_identity_like():
    sig = TypeSignature(3, (2, 1))
    sq = validate_square(sig, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert sq.row_masks == (1, 2, 4)


def test_validate_single_symbol_square():
    sig = TypeSignature(3, (3,))
    sq = validate_square(sig, [[0] * 3] * 3)
    assert sq.sig.m == 1
    with pytest.raises(ValueError):
        MofsSet(3, (sq,))  # single-symbol squares stay out of sets


def test_validate_first_violation_is_row_excess():
    sig = TypeSignature(3, (2, 1))
    with pytest.raises(RowCountViolation) as info:
        validate_square(sig, [[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    assert (info.value.row, info.value.symbol) == (0, 1)


def test_validate_column_violation_and_symbol_range():
    sig = TypeSignature(2, (1, 1))
    with pytest.raises(ColCountViolation) as info:
        validate_square(sig, [[1, 0], [1, 0]])
    assert (info.value.col, info.value.symbol) == (0, 1)
    with pytest.raises(SymbolOutOfRange):
        validate_square(sig, [[2, 0], [0, 1]])


@pytest.mark.parametrize("n,lam", [(3, 1), (3, 2)])
def test_validate_matches_brute_force_order3(n, lam):
    sig = TypeSignature.binary(n, lam)
    for grid in all_binary_grids(n):
        expected = is_valid_by_counting(sig, grid)
        try:
            validate_square(sig, grid)
            got = True
        except (RowCountViolation, ColCountViolation):
            got = False
        assert got == expected


def test_validate_matches_brute_force_order4():
    sig = TypeSignature.binary(4, 2)
    count = 0
    for grid in all_binary_grids(4):
        expected = is_valid_by_counting(sig, grid)
        try:
            validate_square(sig, grid)
            got = True
        except (RowCountViolation, ColCountViolation):
            got = False
        assert got == expected
        count += got
    assert count == 90


def test_complement_involution_and_type():
    sq = corpus.PAIR_6_24.squares[0]
    assert sq.sig.freqs == (2, 4)
    flipped = complement(sq)
    assert flipped.sig.freqs == (4, 2)
    assert complement(flipped) == sq
    with pytest.raises(NotBinary):
        complement(validate_square(TypeSignature(3, (1, 1, 1)),
                                   [[0, 1, 2], [2, 0, 1], [1, 2, 0]]))


def test_complement_preserves_orthogonality_exhaustive_4x4():
    squares = []
    from mofs.enumeration import EnumSpec, enumerate_squares
    enumerate_squares(EnumSpec(4, 2), squares.append)
    for f, g in itertools.combinations(squares[:40], 2):
        assert is_orthogonal_pair(f, g) == is_orthogonal_pair(complement(f), g)


def test_encode_top_left_cell_of_ten_square_set():
    grid = encode_decimal(corpus.TEN_6_51)
    assert grid[0][0] == 388  # binary 0110000100, square 1 most significant
    assert grid == corpus.TEN_6_51_DECIMAL


def test_encode_trivial_cases():
    zero = validate_square(TypeSignature.binary(3, 1),
                           [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    single = MofsSet(3, (zero,))
    grid = encode_decimal(single)
    assert grid[0] == (1, 0, 0)  # k=1 encodes cells directly


def test_encode_rejects_oversized_sets():
    sq = corpus.TEN_6_51.squares[0]
    with pytest.raises(TooManySquares):
        encode_decimal(MofsSet(6, (sq,) * 65))


def test_decode_round_trip_and_errors():
    for mofs in (corpus.TEN_6_51, corpus.NINE_6_33, corpus.EIGHT_5):
        grid = encode_decimal(mofs)
        sigs = [sq.sig for sq in mofs.squares]
        again = decode_decimal(grid, mofs.k, sigs)
        assert again.squares == mofs.squares
    with pytest.raises(EntryTooLarge):
        decode_decimal([[2, 0], [0, 0]], 1, [TypeSignature.binary(2, 1)])
    with pytest.raises(ValidationFailure) as info:
        decode_decimal([[1, 1], [0, 0]], 1, [TypeSignature.binary(2, 1)])
    assert info.value.index == 0


def test_decode_all_zero_single_symbol():
    got = decode_decimal([[0] * 3] * 3, 1, [TypeSignature(3, (3,))])
    assert got.squares[0].cells == ((0, 0, 0),) * 3


def test_row_masks_consistent_with_cells():
    for sq in corpus.EIGHT_5.squares:
        rebuilt = square_from_row_masks(sq.n, sq.sig.lambda1, sq.row_masks)
        assert rebuilt.cells == sq.cells
        assert sq.grid_mask == sum(m << (r * sq.n)
                                   for r, m in enumerate(sq.row_masks))
