import itertools

import pytest

from mofs.core import MofsSet, OrderMismatch, TypeSignature, validate_square
from mofs.enumeration import EnumSpec, enumerate_squares
from mofs.orthogonality import (WrongType, bound_for_set, cardinality_bound,
                                epa_from_mofs, is_orthogonal_pair, pair_counts,
                                verify_mofs)

import corpus


def naive_orthogonal(f, g):
    counts = {}
    for r in range(f.n):
        for c in range(f.n):
            key = (f.cells[r][c], g.cells[r][c])
            counts[key] = counts.get(key, 0) + 1
    for i in range(f.sig.m):
        for j in range(g.sig.m):
            if counts.get((i, j), 0) != f.sig.freqs[i] * g.sig.freqs[j]:
                return False
    return True


def test_pair_counts_self_pair_concentrates_on_diagonal():
    sq = corpus.EIGHT_5.squares[2]
    table = pair_counts(sq, sq)
    n = sq.n
    for i in range(2):
        for j in range(2):
            expected = n * sq.sig.freqs[i] if i == j else 0
            assert table.counts[i][j] == expected


def test_pair_counts_printed_pair():
    f1, f2 = corpus.PAIR_6_24.squares
    table = pair_counts(f1, f2)
    assert table.counts == ((4, 8), (8, 16))
    assert table.ok


def test_pair_counts_single_symbol_mate():
    zeros = validate_square(TypeSignature(6, (6,)), [[0] * 6] * 6)
    sq = corpus.PAIR_6_24.squares[0]
    table = pair_counts(sq, zeros)
    assert table.counts == ((12,), (24,))
    assert table.ok  # the one-symbol square is orthogonal to everything


def test_pair_counts_transpose_symmetry():
    for f, g in itertools.combinations(corpus.EIGHT_5.squares[:5], 2):
        a = pair_counts(f, g).counts
        b = pair_counts(g, f).counts
        assert a == tuple(zip(*b))


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        pair_counts(corpus.EIGHT_5.squares[0], corpus.PAIR_6_24.squares[0])


def test_self_pair_never_orthogonal():
    for sq in corpus.PAIR_6_24.squares:
        assert not is_orthogonal_pair(sq, sq)


def test_cross_orthogonality_of_plain_five_set_and_extension():
    for a in corpus.FIVE_6_33_PLAIN.squares:
        for b in corpus.PAIR_6_51_EXT.squares:
            assert is_orthogonal_pair(a, b)


def test_binary_fast_path_matches_naive_recount():
    squares = []
    enumerate_squares(EnumSpec(4, 1), squares.append)
    enumerate_squares(EnumSpec(4, 2), squares.append)
    for f, g in itertools.combinations(squares[:60], 2):
        assert is_orthogonal_pair(f, g) == naive_orthogonal(f, g)


def test_verify_mofs_success_and_failure():
    report = verify_mofs(corpus.EIGHT_5)
    assert report.ok and corpus.EIGHT_5.verified
    sq = corpus.EIGHT_5.squares[0]
    bad = MofsSet(5, (sq, sq))
    report = verify_mofs(bad)
    assert not report.ok
    assert (report.first_failure.i, report.first_failure.j) == (0, 1)


def test_verify_thirteen_square_mixed_set():
    combined = MofsSet(6, corpus.NINE_6_33.squares + corpus.FOUR_6_42_EXT.squares)
    assert verify_mofs(combined).ok


def test_verbose_collects_all_failures():
    sq = corpus.EIGHT_5.squares[0]
    bad = MofsSet(5, (sq, sq, sq))
    report = verify_mofs(bad, verbose=True)
    assert [(f.i, f.j) for f in report.failures] == [(0, 1), (0, 2), (1, 2)]


def test_cardinality_bound_values():
    nine = cardinality_bound(4, [2] * 9)
    assert (nine.total, nine.limit, nine.admissible, nine.complete) == (9, 9, True, True)
    seventeen = cardinality_bound(6, [2] * 17)
    assert seventeen.admissible and not seventeen.complete
    assert seventeen.limit == 25
    assert not cardinality_bound(4, [2] * 10).admissible
    with pytest.raises(ValueError):
        cardinality_bound(4, [1])


def test_bound_admissible_for_every_corpus_set():
    for mofs in (corpus.QUAD_8_44, corpus.PAIR_6_24, corpus.FIVE_6_33_PLAIN,
                 corpus.EIGHT_5, corpus.TEN_6_51, corpus.NINE_6_33):
        assert bound_for_set(mofs).admissible


def test_epa_identity_and_triple():
    ident = validate_square(TypeSignature.binary(3, 1),
                            [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert epa_from_mofs(MofsSet(3, (ident,))) == ((1, 2, 3),)
    rows = epa_from_mofs(corpus.TRIPLE_3_21)
    assert rows == ((1, 2, 3), (3, 1, 2), (2, 3, 1))


def test_epa_wrong_type():
    with pytest.raises(WrongType):
        epa_from_mofs(corpus.PAIR_6_24)


def test_epa_distances_of_ten_square_set():
    rows = epa_from_mofs(corpus.TEN_6_51)
    assert len(rows) == 10
    for a, b in itertools.combinations(rows, 2):
        assert sum(x != y for x, y in zip(a, b)) == 5
