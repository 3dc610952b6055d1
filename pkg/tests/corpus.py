"""Golden corpus: published example sets used across the test suite.

Each set is kept in superimposed binary form (each cell is one k-character
string, square 1 first) exactly as printed in its source, which keeps
transcription mistakes visible: a single wrong bit breaks orthogonality or
a certified relation and the golden tests catch it.
"""

from mofs.core import MofsSet, TypeSignature, validate_square


def set_from_superimposed(text: str, lambda1s) -> MofsSet:
    rows = [line.split() for line in text.strip().splitlines()]
    n = len(rows)
    k = len(lambda1s)
    assert all(len(r) == n for r in rows), "grid must be square"
    assert all(len(cell) == k for row in rows for cell in row), "cell width"
    squares = []
    for t, lam in enumerate(lambda1s):
        cells = [[int(rows[r][c][t]) for c in range(n)] for r in range(n)]
        squares.append(validate_square(TypeSignature.binary(n, lam), cells))
    return MofsSet(n, tuple(squares))


def square_from_text(text: str, lambda1: int):
    mofs = set_from_superimposed(text, (lambda1,))
    return mofs.squares[0]


def grid_from_text(text: str):
    return tuple(tuple(int(v) for v in line.split())
                 for line in text.strip().splitlines())


# 4-MOFS(8;4,4) whose mod-2 sum is the zero matrix: a constant full
# (8,8)-relation with no proper subset satisfying any relation.
QUAD_8_44 = set_from_superimposed("""
1111 0000 0011 1100 1111 0101 0000 1010
0101 1010 0110 1001 0000 1010 1111 0101
0000 1111 1100 0011 0011 0110 1100 1001
1010 0101 1001 0110 1100 1001 0011 0110
1111 0101 0000 1010 1111 0000 0011 1100
0000 1010 1111 0101 0101 1010 0110 1001
0011 0110 1100 1001 0000 1111 1100 0011
1100 1001 0011 0110 1010 0101 1001 0110
""", (4, 4, 4, 4))

# 2-MOFS(6;2,4) satisfying a full (4,4)-relation.
PAIR_6_24 = set_from_superimposed("""
00 11 11 11 01 10
11 00 11 11 01 10
11 11 00 11 10 01
11 11 11 00 10 01
01 01 10 10 11 11
10 10 01 01 11 11
""", (4, 4))

# Three squares of type (3;2,1) whose mod-2 sum is all ones: a constant
# full (3,0)-relation (fails the non-constant parity conclusions).
TRIPLE_3_21 = set_from_superimposed("""
100 010 001
001 100 010
010 001 100
""", (1, 1, 1))

# Type-maximal 5-MOFS(6;3,3) whose mod-2 sum is the identity matrix, so it
# satisfies no full relation; not maximal (see PAIR_6_51_EXT).
FIVE_6_33_PLAIN = set_from_superimposed("""
11111 10001 10010 00000 01111 01100
10001 10101 11110 00110 01001 01010
10010 11110 01000 11101 00011 00101
00000 00110 11101 00111 11000 11011
01111 01001 00011 11000 10110 10100
01100 01010 00101 11011 10100 10011
""", (3, 3, 3, 3, 3))

# 2-MOFS(6;5,1) orthogonal to every square of FIVE_6_33_PLAIN.
PAIR_6_51_EXT = set_from_superimposed("""
00 10 00 00 01 00
01 00 00 10 00 00
00 00 11 00 00 00
00 01 00 00 00 10
10 00 00 00 00 01
00 00 00 01 10 00
""", (1, 1))

# Maximal 2-MOFS(3;2,1): the mod-3 block congruence rules out every
# frequency coprime to 3, and order 3 admits no other types.
PAIR_3_21 = set_from_superimposed("""
11 00 00
00 10 01
00 01 10
""", (1, 1))

# Two type-maximal 2-MOFS(6;4,2) sharing one mod-2 sum; neither satisfies
# a relation, but the mod-3 block congruence blocks types (6;5,1) and
# (6;4,2), and both extend by EXTENDER_6_33.
PAIR_6_42_A = set_from_superimposed("""
11 11 00 00 00 00
11 11 00 00 00 00
00 00 10 10 01 01
00 00 10 10 01 01
00 00 01 01 10 10
00 00 01 01 10 10
""", (2, 2))

PAIR_6_42_B = set_from_superimposed("""
11 11 00 00 00 00
11 11 00 00 00 00
00 00 10 10 01 01
00 00 10 01 10 01
00 00 01 10 01 10
00 00 01 01 10 10
""", (2, 2))

# Square of type (6;3,3) orthogonal to both squares of each pair above.
EXTENDER_6_33 = square_from_text("""
1 0 0 0 1 1
0 1 0 0 1 1
1 1 0 1 0 0
1 1 1 0 0 0
0 0 1 1 1 0
0 0 1 1 0 1
""", 3)

# 5-MOFS(6;3,3) satisfying a full (5,3)-relation: extensions need all-even
# frequencies, hence type-maximal; extended by FIVE_6_42_EXT to a maximal
# 10-MOFS(6).
FIVE_6_33_REL = set_from_superimposed("""
11011 10111 01100 00001 00010 11100
10100 01111 11011 00010 11100 00001
01111 11000 10111 11100 00001 00010
01001 10001 00101 10110 01110 11010
10010 00110 01010 01101 11001 10101
00100 01000 10000 11011 10111 01111
""", (3, 3, 3, 3, 3))

FIVE_6_42_EXT = set_from_superimposed("""
01000 10111 01001 10000 00010 00100
00100 10000 01000 00101 00011 11010
10011 01110 10000 00000 01001 00100
10000 00000 00101 01010 11100 00011
00001 01000 00110 00010 10100 11001
01110 00001 10010 11101 00000 00000
""", (2, 2, 2, 2, 2))

# 9-MOFS(6;3,3) satisfying a full (3,3)-relation; only type (6;4,2) can
# extend it, and FOUR_6_42_EXT completes it to a maximal 13-MOFS(6).
NINE_6_33 = set_from_superimposed("""
111000001 001101010 010110100 100110011 001011101 110001110
010110100 111000001 001101010 110001110 100110011 001011101
001101010 010110100 111000001 001011101 110001110 100110011
111111111 000000111 100011000 010101001 011010010 101100100
100011000 111111111 000000111 101100100 010101001 011010010
000000111 100011000 111111111 011010010 101100100 010101001
""", (3,) * 9)

FOUR_6_42_EXT = set_from_superimposed("""
0000 0000 0100 0011 1001 1110
0001 1100 0010 0001 1100 0010
1101 1010 0011 0100 0000 0000
1010 0111 1001 0100 0000 0000
0110 0001 1000 1000 0010 0101
0000 0000 0100 1010 0111 1001
""", (2, 2, 2, 2))

# Maximal 8-MOFS(5): two squares of type 1 and six of type 2.
EIGHT_5 = set_from_superimposed("""
00000000 00010110 00000001 01111000 10101111
00100001 00001010 00011100 10010011 01100100
00111010 11000000 00100110 00000101 00011001
10001100 00110101 01001011 00100010 00010000
01010111 00101001 10110000 00001100 00000010
""", (1, 1, 2, 2, 2, 2, 2, 2))

# Type-maximal 10-MOFS(6) of permutation-matrix squares, with its decimal
# superimposed form.
TEN_6_51 = set_from_superimposed("""
0110000100 1001000000 0000001001 0000110000 0000000010 0000000000
0000011000 0100100011 0000000000 0000000000 0001000100 1010000000
0000000010 0000001100 0010100000 1100000000 0000000000 0001010001
0000000000 0010010000 0101000000 0000000101 1000101000 0000000010
1000000001 0000000000 0000000000 0011001010 0100010000 0000100100
0001100000 0000000000 1000010110 0000000000 0010000001 0100001000
""", (1,) * 10)

TEN_6_51_DECIMAL = grid_from_text("""
388 576 9 48 2 0
24 291 0 0 68 640
2 12 160 768 0 81
0 144 320 5 552 2
513 0 0 202 272 36
96 0 534 0 129 264
""")

# Type-maximal 14-MOFS(6;{2}) given in decimal superimposed form, plus its
# printed mod-3 sum, whose compatible corner blocks rule out coprime types.
FOURTEEN_6_42_DECIMAL = grid_from_text("""
14883 9309 2052 1456 842 4224
13516 10930 5889 2112 17 302
17 3844 12600 8258 7306 741
3424 4224 8198 9097 4724 3099
406 4419 2281 6684 9248 9728
520 40 1746 5159 10629 14672
""")

FOURTEEN_6_42_Z3 = grid_from_text("""
1 1 2 2 2 2
1 1 2 2 2 2
2 2 0 0 0 0
2 2 0 0 0 0
2 2 0 0 0 0
2 2 0 0 0 0
""")

# Expected mod-2 sums printed alongside their sets.
PAIR_6_24_Z2 = grid_from_text("""
0 0 0 0 1 1
0 0 0 0 1 1
0 0 0 0 1 1
0 0 0 0 1 1
1 1 1 1 0 0
1 1 1 1 0 0
""")

PAIR_3_21_Z3 = grid_from_text("""
2 0 0
0 1 1
0 1 1
""")

PAIR_6_42_Z2 = grid_from_text("""
0 0 0 0 0 0
0 0 0 0 0 0
0 0 1 1 1 1
0 0 1 1 1 1
0 0 1 1 1 1
0 0 1 1 1 1
""")
