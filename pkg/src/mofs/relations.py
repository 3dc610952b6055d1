"""Relations, block structures and modular extension obstructions.

A relation on an ordered set of k frequency squares of order n is a tuple
(X1, ..., X_{k+2}) of subsets — X1 of row indices, X2 of column indices,
X_{t+2} of the symbol set of square t — such that for every cell (r, c)
an even number of the memberships

    r in X1,  c in X2,  F_t[r, c] in X_{t+2}

hold.  For binary squares a full relation is equivalent to the entrywise
sum mod 2 splitting, after row and column permutations, into a 2x2 grid of
constant blocks forming a checkerboard.  Working modulo w > 2 instead of 2
yields congruences that rule out candidate extension types.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FrequencySquare, MofsError, MofsSet, NotBinary
from .orthogonality import ensure_verified

SUBSET_SEARCH_LIMIT = 24


class EmptySubset(MofsError):
    pass


class ArityMismatch(MofsError):
    def __init__(self, got: int, want: int):
        super().__init__(f"relation has {got} parts, set needs {want}")
        self.got = got
        self.want = want


class SubsetBudgetExceeded(MofsError):
    def __init__(self, k: int):
        super().__init__(f"subset search over {k} squares exceeds the "
                         f"{SUBSET_SEARCH_LIMIT}-square budget")
        self.k = k


class IncompatibleBlocks(MofsError):
    pass


class HypothesisNotMet(MofsError):
    pass


@dataclass(frozen=True)
class Relation:
    """A (k+2)-tuple of subsets with the even-membership property.

    ``symbol_counts`` records m_t for each square so that complements stay
    within the right ground sets.
    """

    n: int
    symbol_counts: tuple[int, ...]
    xs: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(frozenset(x) for x in self.xs))
        object.__setattr__(self, "symbol_counts", tuple(self.symbol_counts))
        if len(self.xs) != len(self.symbol_counts) + 2:
            raise ArityMismatch(len(self.xs), len(self.symbol_counts) + 2)

    @property
    def k(self) -> int:
        return len(self.symbol_counts)

    @property
    def a(self) -> int:
        return len(self.xs[0])

    @property
    def b(self) -> int:
        return len(self.xs[1])

    def ground_set(self, c: int) -> frozenset:
        """Y_c: all rows, all columns, or the symbol set of square c-2."""
        if c < 2:
            return frozenset(range(self.n))
        return frozenset(range(self.symbol_counts[c - 2]))

    def trivial_on(self, c: int) -> bool:
        return not self.xs[c] or self.xs[c] == self.ground_set(c)

    @property
    def nontrivial(self) -> bool:
        return any(not self.trivial_on(c) for c in range(len(self.xs)))

    @property
    def full(self) -> bool:
        return all(not self.trivial_on(c) for c in range(2, len(self.xs)))

    @property
    def constant(self) -> bool:
        return self.a in (0, self.n) and self.b in (0, self.n)

    def describe(self) -> str:
        kind = "constant" if self.constant else "non-constant"
        fullness = "full" if self.full else "non-full"
        return f"{kind} {fullness} ({self.a},{self.b})-relation"


@dataclass(frozen=True)
class ZwSum:
    w: int
    matrix: tuple[tuple[int, ...], ...]
    subset: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class BlockStructure:
    """Certified 2x2 constant-block decomposition of a Z_w-sum.

    After applying ``row_perm``/``col_perm`` the matrix reads
    [x1 on a x b | x2 on a x (n-b); x3 on (n-a) x b | x4 on (n-a) x (n-b)].
    The first row block is the equality class containing row 0; likewise
    for columns.  Degenerate blocks (a or b in {0, n}) are allowed and the
    missing x-values repeat their row/column neighbour.
    """

    w: int
    n: int
    a: int
    b: int
    x1: int
    x2: int
    x3: int
    x4: int
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]

    @property
    def compatible(self) -> bool:
        return (self.x1 + self.x4) % self.w == (self.x2 + self.x3) % self.w

    @property
    def xs(self) -> tuple[int, int, int, int]:
        return (self.x1, self.x2, self.x3, self.x4)


def zw_sum(mofs: MofsSet, subset=None, w: int = 2) -> ZwSum:
    """Entrywise sum of the chosen binary squares, reduced mod w."""
    if subset is None:
        subset = range(mofs.k)
    indices = tuple(subset)
    if not indices:
        raise EmptySubset("subset of squares must be non-empty")
    squares = [mofs.squares[i] for i in indices]
    if any(not sq.is_binary for sq in squares):
        raise NotBinary()
    n = mofs.order
    matrix = tuple(
        tuple(sum(sq.cells[r][c] for sq in squares) % w for c in range(n))
        for r in range(n)
    )
    return ZwSum(w, matrix, indices)


def detect_block_structure(z: ZwSum) -> BlockStructure | None:
    """Find row/column permutations exposing a 2x2 constant-block form.

    Rows are grouped by equality, columns likewise; the structure exists
    iff both partitions have at most two classes.
    """
    n = z.n
    row_classes = _equality_classes(z.matrix)
    if row_classes is None:
        return None
    col_classes = _equality_classes(tuple(zip(*z.matrix)))
    if col_classes is None:
        return None
    rows1, rows2 = row_classes
    cols1, cols2 = col_classes
    a, b = len(rows1), len(cols1)
    x1 = z.matrix[rows1[0]][cols1[0]]
    x2 = z.matrix[rows1[0]][cols2[0]] if cols2 else x1
    x3 = z.matrix[rows2[0]][cols1[0]] if rows2 else x1
    if rows2 and cols2:
        x4 = z.matrix[rows2[0]][cols2[0]]
    elif rows2:
        x4 = x3
    elif cols2:
        x4 = x2
    else:
        x4 = x1
    return BlockStructure(
        z.w, n, a, b, x1, x2, x3, x4,
        tuple(rows1 + rows2), tuple(cols1 + cols2),
    )


def _equality_classes(vectors) -> tuple[list, list] | None:
    """Split indices into at most two classes of equal vectors.

    The class containing index 0 comes first; members stay in ascending
    order.  Returns None when a third distinct vector appears.
    """
    first = [0]
    second = []
    for i in range(1, len(vectors)):
        if vectors[i] == vectors[0]:
            first.append(i)
        elif not second or vectors[i] == vectors[second[0]]:
            second.append(i)
        else:
            return None
    return first, second


def relation_from_blocks(blocks: BlockStructure, symbol_counts) -> Relation:
    """The full relation certified by a compatible mod-2 block structure.

    X1 always contains the row class of row 0; X2 follows from x1 (the two
    choices are the equivalent (a,b) and (n-a,n-b) readings, and this one
    matches how worked examples are usually reported).
    """
    if blocks.w != 2 or not blocks.compatible:
        raise IncompatibleBlocks("need a compatible mod-2 block structure")
    n, a, b = blocks.n, blocks.a, blocks.b
    x1_rows = frozenset(blocks.row_perm[:a])
    col_first = frozenset(blocks.col_perm[:b])
    col_second = frozenset(blocks.col_perm[b:])
    v0 = 1 - blocks.x1  # membership of col 0's class in X2
    x2_cols = col_first if v0 else col_second
    xs = [x1_rows, x2_cols] + [frozenset({1})] * len(tuple(symbol_counts))
    return Relation(n, tuple(symbol_counts), tuple(xs))


def detect_full_relation(mofs: MofsSet) -> Relation | None:
    """Full relation satisfied by the whole set, or None.

    Equivalent to the mod-2 sum being u_r XOR v_c for 0/1 vectors u, v,
    i.e. a compatible two-class block structure.
    """
    if not mofs.all_binary:
        raise NotBinary()
    blocks = detect_block_structure(zw_sum(mofs, w=2))
    if blocks is None or not blocks.compatible:
        return None
    return relation_from_blocks(blocks, [sq.sig.m for sq in mofs.squares])


def detect_any_relation(mofs: MofsSet):
    """First non-empty subset satisfying a full relation, smallest first.

    Returns (subset indices, Relation) or None.  Subsets are scanned by
    cardinality with lexicographic tie-break, so reported certificates are
    minimal and reproducible.
    """
    if not mofs.all_binary:
        raise NotBinary()
    k = mofs.k
    if k > SUBSET_SEARCH_LIMIT:
        raise SubsetBudgetExceeded(k)
    for size in range(1, k + 1):
        for combo in itertools.combinations(range(k), size):
            rel = detect_full_relation(mofs.subset(combo))
            if rel is not None:
                return combo, rel
    return None


def verify_relation(mofs: MofsSet, rel: Relation) -> bool:
    """Check the even-membership condition over all n^2 cells."""
    if len(rel.xs) != mofs.k + 2:
        raise ArityMismatch(len(rel.xs), mofs.k + 2)
    n = mofs.order
    x1, x2 = rel.xs[0], rel.xs[1]
    sym_sets = rel.xs[2:]
    for r in range(n):
        base = 1 if r in x1 else 0
        for c in range(n):
            hits = base + (1 if c in x2 else 0)
            for t, sq in enumerate(mofs.squares):
                if sq.cells[r][c] in sym_sets[t]:
                    hits += 1
            if hits % 2:
                return False
    return True


def complement_pair(rel: Relation, i: int, j: int) -> Relation:
    """Swap X_i and X_j with their complements (preserves the relation)."""
    if i == j:
        raise IndexError("indices must be distinct")
    parts = list(rel.xs)
    parts[i] = rel.ground_set(i) - parts[i]  # IndexError if out of range
    parts[j] = rel.ground_set(j) - parts[j]
    return Relation(rel.n, rel.symbol_counts, tuple(parts))


@dataclass(frozen=True)
class TheoremVerdict:
    name: str
    applied: bool
    holds: bool | None
    detail: str


def check_parity_theorems(mofs: MofsSet, rel: Relation) -> list[TheoremVerdict]:
    """Evaluate the parity consequences a verified (set, relation) pair must obey.

    Each verdict names the condition, whether its hypotheses match, and
    whether the conclusion holds.  A verified relation violating a matched
    conclusion indicates an internal inconsistency.
    """
    if not verify_relation(mofs, rel):
        raise ValueError("relation does not hold for the given set")
    verdicts = []
    n = mofs.order
    a, b = rel.a, rel.b
    binary = mofs.all_binary
    lam1_total = sum(sq.sig.freqs[1] for sq in mofs.squares) if binary else None

    nonconstant = not rel.constant
    verdicts.append(TheoremVerdict(
        "nonconstant-even-order", nonconstant,
        (n % 2 == 0) if nonconstant else None,
        f"n={n} must be even under a non-constant relation"))
    verdicts.append(TheoremVerdict(
        "nonconstant-side-parity", nonconstant,
        (a % 2 == b % 2) if nonconstant else None,
        f"|X1|={a} and |X2|={b} must agree mod 2"))

    applies = binary and nonconstant and rel.full
    holds = None
    if applies:
        holds = a % 2 == b % 2 == lam1_total % 2
    verdicts.append(TheoremVerdict(
        "full-side-weight-parity", applies, holds,
        "a, b and the total symbol-1 frequency must agree mod 2"))

    applies = binary and rel.constant and rel.full
    holds = None
    detail = "constant relation weight test"
    if applies:
        # Normalize to the (n, b) representative via the complement
        # equivalence (a, b) ~ (n-a, n-b).
        aa, bb = (a, b) if a == n else (n - a, n - b)
        if aa != n:
            applies = False
        elif bb == n:
            holds = lam1_total % 2 == 0
            detail = f"(n,n) case: total symbol-1 frequency {lam1_total} must be even"
        else:
            holds = lam1_total % 2 == n % 2
            detail = f"(n,0) case: total symbol-1 frequency {lam1_total} must equal n={n} mod 2"
    verdicts.append(TheoremVerdict("constant-weight-parity", applies, holds, detail))

    orthogonal = binary and _is_verified_mofs(mofs)
    applies = orthogonal and nonconstant and rel.full
    holds = None
    if applies:
        odd = sum(1 for sq in mofs.squares if sq.sig.freqs[1] % 2)
        holds = odd == 0 or odd % 2 == 1
    verdicts.append(TheoremVerdict(
        "orthogonal-odd-frequency-count", applies, holds,
        "odd frequencies occur in no square or in an odd number of squares"))

    sigs = {sq.sig for sq in mofs.squares}
    uniform = binary and len(sigs) == 1
    if uniform:
        f0, f1 = next(iter(sigs)).freqs
    applies = (orthogonal and uniform and f0 % 2 == 1 and f1 % 2 == 1
               and nonconstant and rel.full)
    holds = None
    detail = "balanced odd sets: k must equal f0*f1 mod 4"
    if applies:
        holds = mofs.k % 4 == (f0 * f1) % 4
        detail = f"k={mofs.k} vs f0*f1={f0 * f1} mod 4"
    verdicts.append(TheoremVerdict("odd-type-count-mod-four", applies, holds, detail))
    return verdicts


def _is_verified_mofs(mofs: MofsSet) -> bool:
    if mofs.verified:
        return True
    from .orthogonality import verify_mofs
    return verify_mofs(mofs).ok


@dataclass(frozen=True)
class ObstructionReport:
    """Congruence test for extending a set with a compatible Z_w block structure.

    Any square of type (mu_0, ..., mu_{m-1}) joining the set must satisfy
    mu_i * lhs_base == mu_i * rhs (mod w) for every symbol i; frequencies
    coprime to w reduce this to lhs_base == rhs.
    """

    w: int
    a: int
    b: int
    xs: tuple[int, int, int, int]
    lhs_base: int
    rhs: int
    mu: tuple[int, ...]
    ruled_out: tuple[int, ...]

    @property
    def type_excluded(self) -> bool:
        return bool(self.ruled_out)

    @property
    def coprime_excluded(self) -> bool:
        """True when every frequency coprime to w is impossible."""
        return self.lhs_base != self.rhs


def extension_obstruction(mofs: MofsSet, blocks: BlockStructure, mu) -> ObstructionReport:
    """Which frequencies of a candidate type are excluded by the block congruence."""
    if not blocks.compatible:
        raise IncompatibleBlocks(
            f"x1+x4={blocks.x1 + blocks.x4} differs from x2+x3="
            f"{blocks.x2 + blocks.x3} mod {blocks.w}")
    if not mofs.all_binary:
        raise NotBinary()
    freqs = tuple(mu.freqs) if hasattr(mu, "freqs") else tuple(mu)
    w = blocks.w
    n = mofs.order
    lhs = sum(sq.sig.freqs[1] for sq in mofs.squares) % w
    rhs = (blocks.a * (blocks.x2 - blocks.x4)
           + blocks.b * (blocks.x3 - blocks.x4)
           + n * blocks.x4) % w
    ruled = tuple(i for i, f in enumerate(freqs) if (f * lhs - f * rhs) % w)
    return ObstructionReport(w, blocks.a, blocks.b, blocks.xs, lhs, rhs,
                             freqs, ruled)


@dataclass(frozen=True)
class EvenFrequencyVerdict:
    """What an odd frequency in a relation-certified set forces on extensions."""

    extensions_require_even: bool
    odd_squares: tuple[int, ...]
    allowed_binary_lambda1: tuple[int, ...]
    type_maximal: bool

    def describe(self) -> str:
        allowed = ",".join(str(t) for t in self.allowed_binary_lambda1) or "none"
        tail = "; the set is type-maximal" if self.type_maximal else ""
        return (f"every extending square needs all-even frequencies "
                f"(binary lambda1 in {{{allowed}}}){tail}")


def even_frequency_obstruction(mofs: MofsSet, rel: Relation) -> EvenFrequencyVerdict:
    """Odd-frequency consequence of a non-constant full relation on a MOFS set.

    Requires a verified binary set whose relation is non-constant and full,
    and at least one square with an odd frequency; then no extension square
    can carry an odd frequency.  The set is certified type-maximal when
    every occurring type contains an odd frequency.
    """
    if rel.constant or not rel.full:
        raise HypothesisNotMet("need a non-constant full relation")
    if not mofs.all_binary:
        raise NotBinary()
    ensure_verified(mofs)
    if not verify_relation(mofs, rel):
        raise ValueError("relation does not hold for the given set")
    odd = tuple(t for t, sq in enumerate(mofs.squares)
                if sq.sig.freqs[1] % 2 or sq.sig.freqs[0] % 2)
    if not odd:
        raise HypothesisNotMet("every frequency in the set is even")
    n = mofs.order
    allowed = tuple(l for l in range(1, n) if l % 2 == 0 and (n - l) % 2 == 0)
    occurring = {sq.sig.lambda1 for sq in mofs.squares}
    type_maximal = all(l % 2 or (n - l) % 2 for l in occurring)
    return EvenFrequencyVerdict(True, odd, allowed, type_maximal)
