"""Mate generation, the orthogonality graph on mates, maximum-clique
extension, and the largest-set statistics f(n; types).

A mate of a set is a binary square orthogonal to every member.  Extending
a set as far as possible means finding a maximum clique in the graph whose
vertices are the admissible mates and whose edges join orthogonal pairs.
Types are complement-normalized throughout: type t stands for squares with
lambda1 = t <= n/2, and for t = n/2 only one square of each complement
pair enters the graph (complementing one member of a set never changes
orthogonality, so this halves the graph without losing cliques).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FrequencySquare, MofsError, MofsSet
from .enumeration import EnumSpec, count_squares, enumerate_squares
from .isomorphism import dedupe_catalogue
from .orthogonality import ensure_verified

DEFAULT_ORDER = 6


class EmptyCatalogue(MofsError):
    pass


@dataclass(frozen=True)
class MateGraph:
    base: MofsSet
    allowed_types: tuple[int, ...]
    vertices: tuple[FrequencySquare, ...]
    adjacency: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2


@dataclass(frozen=True)
class CliqueResult:
    vertices: tuple[int, ...]
    exact: bool
    nodes: int

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ExtensionResult:
    extended: MofsSet
    added: tuple[FrequencySquare, ...]
    exact: bool
    nodes: int


@dataclass(frozen=True)
class FValueResult:
    n: int
    types: tuple[int, ...]
    value: int
    witness: MofsSet
    exact: bool


def _normalize_types(n: int, types) -> tuple[int, ...]:
    out = tuple(sorted(set(types)))
    for t in out:
        if not 1 <= t <= n // 2:
            raise ValueError(f"type {t} outside 1..{n // 2}")
    return out


def generate_mates(base: MofsSet, types) -> list[FrequencySquare]:
    """All admissible extension squares, by type then enumeration order."""
    ensure_verified(base)
    n = base.order
    mates: list[FrequencySquare] = []
    for t in _normalize_types(n, types):
        spec = EnumSpec(n, t, dedup_complement=(2 * t == n),
                        constraints=base.squares)
        enumerate_squares(spec, mates.append)
    return mates


def count_mates(base: MofsSet, types) -> int:
    ensure_verified(base)
    n = base.order
    total = 0
    for t in _normalize_types(n, types):
        spec = EnumSpec(n, t, dedup_complement=(2 * t == n),
                        constraints=base.squares)
        total += count_squares(spec)
    return total


def has_mate(base: MofsSet, types) -> bool:
    """Existence test with an early-exit enumeration walk."""
    ensure_verified(base)
    n = base.order

    def stop(_sq):
        raise StopIteration

    for t in _normalize_types(n, types):
        spec = EnumSpec(n, t, constraints=base.squares)
        if enumerate_squares(spec, stop) > 0:
            return True
    return False


def _pack_rows(bools: np.ndarray) -> list[int]:
    packed = np.packbits(bools, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def orthogonality_adjacency(vertices, block: int = 512) -> tuple[int, ...]:
    """Bitset adjacency rows: bit j of row i set iff squares i, j are orthogonal.

    Binary orthogonality reduces to one popcount per pair (the (1,1) count
    must equal the product of the two lambda1 values), done here in blocks
    with vectorized popcounts.
    """
    count = len(vertices)
    if count == 0:
        return ()
    grids = np.array([sq.grid_mask for sq in vertices], dtype=np.uint64)
    lam1 = np.array([sq.sig.freqs[1] for sq in vertices], dtype=np.int64)
    rows: list[int] = []
    for start in range(0, count, block):
        stop = min(start + block, count)
        ands = grids[start:stop, None] & grids[None, :]
        pc = np.bitwise_count(ands).astype(np.int64)
        ok = pc == lam1[start:stop, None] * lam1[None, :]
        for i in range(start, stop):
            ok[i - start, i] = False
        rows.extend(_pack_rows(ok))
    return tuple(rows)


def build_mate_graph(base: MofsSet, types) -> MateGraph:
    mates = generate_mates(base, types)
    adjacency = orthogonality_adjacency(mates)
    return MateGraph(base, _normalize_types(base.order, types),
                     tuple(mates), adjacency)


def max_clique(graph, budget: int | None = None,
               prune_below: int = 0) -> CliqueResult:
    """Branch and bound with greedy-coloring bounds over bitset adjacency.

    Deterministic: vertices are processed by descending degree with the
    row-mask tuple (or original index) breaking ties.  ``budget`` caps the
    number of search nodes; an exhausted budget returns the best clique
    found with ``exact=False``.  ``prune_below`` discards subtrees that
    cannot beat the given size, useful when only improvements over a known
    clique matter; a result at or below that size then only certifies that
    nothing larger exists.
    """
    from . import _clique

    if isinstance(graph, MateGraph):
        adjacency = graph.adjacency
        tie = [sq.row_masks for sq in graph.vertices]
    else:
        adjacency = tuple(graph)
        tie = list(range(len(adjacency)))
    count = len(adjacency)
    if count == 0:
        return CliqueResult((), True, 0)

    order = sorted(range(count),
                   key=lambda v: (-adjacency[v].bit_count(), tie[v]))
    radj = _reorder_packed(adjacency, order)
    found, nodes, exhausted = _clique.solve(radj, budget, prune_below)
    vertices = tuple(sorted(order[v] for v in found))
    return CliqueResult(vertices, not exhausted, nodes)


def _reorder_packed(adjacency, order) -> np.ndarray:
    """Permute integer bitset rows into word-packed kernel layout."""
    count = len(adjacency)
    word_bytes = 8 * ((count + 63) // 64)
    raw = np.frombuffer(
        b"".join(row.to_bytes(word_bytes, "little") for row in adjacency),
        dtype=np.uint8).reshape(count, word_bytes)
    bits = np.unpackbits(raw, axis=1, bitorder="little")
    perm = np.asarray(order)
    bits = bits[perm][:, perm]
    packed = np.packbits(
        np.pad(bits, ((0, 0), (0, word_bytes * 8 - count))),
        axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(
        count, word_bytes // 8)


def extend_to_maximum(base: MofsSet, types, budget: int | None = None,
                      graph: MateGraph | None = None) -> ExtensionResult:
    """Base plus the squares of a maximum clique among its mates."""
    if graph is None:
        graph = build_mate_graph(base, types)
    result = max_clique(graph, budget=budget)
    added = tuple(graph.vertices[i] for i in result.vertices)
    extended = base.extended(added)
    ensure_verified(extended)
    return ExtensionResult(extended, added, result.exact, result.nodes)


def is_maximal(mofs: MofsSet) -> bool:
    """No binary square of any type extends the set."""
    ensure_verified(mofs)
    return not has_mate(mofs, range(1, mofs.order // 2 + 1))


def is_type_maximal(mofs: MofsSet) -> bool:
    """No square whose (normalized) type already occurs extends the set."""
    ensure_verified(mofs)
    return not has_mate(mofs, set(mofs.type_indices()))


def f_value(n: int, types, seed_catalogue, budget: int | None = None) -> FValueResult:
    """Largest k-MOFS(n) whose occurring type set is exactly ``types``.

    ``seed_catalogue`` must cover, up to isomorphism, every set with one
    square of each requested type; each seed is extended by a maximum
    clique of mates drawn from the same types.  Seeds share a global
    incumbent so later searches only look for improvements.
    """
    types = _normalize_types(n, types)
    seeds = list(seed_catalogue)
    if not seeds:
        raise EmptyCatalogue("seed catalogue is empty")
    want = set(types)
    best_value = 0
    best_witness = None
    exact = True
    for seed in seeds:
        if set(seed.type_indices()) != want:
            raise ValueError("seed does not carry exactly the requested types")
        ensure_verified(seed)
        graph = build_mate_graph(seed, types)
        res = max_clique(graph, budget=budget,
                         prune_below=max(0, best_value - seed.k))
        exact = exact and res.exact
        total = seed.k + res.size
        if total > best_value:
            best_value = total
            best_witness = seed.extended(graph.vertices[i] for i in res.vertices)
    ensure_verified(best_witness)
    return FValueResult(n, types, best_value, best_witness, exact)


_CLASS_CACHE: dict = {}


def single_square_classes(n: int, type_index: int) -> list[MofsSet]:
    """Isomorphism classes of single squares of one normalized type."""
    key = (n, type_index)
    if key in _CLASS_CACHE:
        return list(_CLASS_CACHE[key])
    squares: list[FrequencySquare] = []
    spec = EnumSpec(n, type_index, dedup_complement=(2 * type_index == n))
    enumerate_squares(spec, squares.append)
    result = dedupe_catalogue(MofsSet(n, (sq,)) for sq in squares)
    _CLASS_CACHE[key] = list(result.representatives)
    return list(result.representatives)


def seed_catalogue(n: int, composition: dict[int, int]) -> list[MofsSet]:
    """All non-isomorphic sets with ``composition[t]`` squares of each type t.

    Built progressively: classes with one square, then each representative
    extended by every admissible mate of the next required type, deduping
    after every step.  Complement-halved enumeration of balanced mates is
    safe here because complementing a balanced square is an isomorphism
    operation in type-preserving mode.
    """
    shape: list[int] = []
    for t in sorted(composition):
        if composition[t] < 0:
            raise ValueError("negative multiplicity")
        shape.extend([t] * composition[t])
    if not shape:
        raise ValueError("empty composition")
    key = (n, tuple(shape))
    if key in _CLASS_CACHE:
        return list(_CLASS_CACHE[key])
    current = single_square_classes(n, shape[0])
    for t in shape[1:]:
        def grown():
            for rep in current:
                spec = EnumSpec(n, t, dedup_complement=(2 * t == n),
                                constraints=rep.squares)
                mates: list[FrequencySquare] = []
                enumerate_squares(spec, mates.append)
                for mate in mates:
                    yield rep.extended((mate,))
        current = list(dedupe_catalogue(grown()).representatives)
    for rep in current:
        ensure_verified(rep)
    _CLASS_CACHE[key] = list(current)
    return current


#: Table row layouts: seed composition (type -> count) and allowed mate types.
TABLE1_CASES: dict[int, tuple[dict[int, int], tuple[int, ...]]] = {
    1: ({1: 2}, (1,)),
    2: ({2: 2}, (2,)),
    3: ({3: 2}, (3,)),
    4: ({1: 1, 2: 1}, (1, 2)),
    5: ({1: 1, 3: 1}, (1, 3)),
    6: ({2: 1, 3: 1}, (3,)),
    7: ({2: 2, 3: 1}, (3,)),
    8: ({2: 3}, (2, 3)),
    9: ({1: 1, 2: 1}, (3,)),
    10: ({1: 1, 2: 2}, (2, 3)),
    11: ({1: 2, 2: 1}, (1, 2, 3)),
}

#: Cases small enough to rerun routinely; the rest sit behind an opt-in flag.
TABLE1_DESK_CASES = (1, 2)


@dataclass(frozen=True)
class Table1Row:
    case: int
    seed_count: int
    mate_min: int
    mate_max: int
    maximum: int | None
    exact: bool


def table1_row(case: int, budget: int | None = None,
               with_maximum: bool = True, seeds=None,
               progress=None) -> Table1Row:
    """Reproduce one row: per-seed mate counts and the overall maximum.

    ``seeds`` overrides the full catalogue (used for sampled verification
    of the heavy cases).  Seeds are processed in descending mate count so
    the incumbent maximum is found early and later seeds mostly just prove
    they cannot beat it.
    """
    composition, mate_types = TABLE1_CASES[case]
    if seeds is None:
        seeds = seed_catalogue(DEFAULT_ORDER, composition)
    seeds = list(seeds)
    if not seeds:
        raise EmptyCatalogue(f"no seeds for case {case}")
    counted = []
    for i, seed in enumerate(seeds):
        counted.append((count_mates(seed, mate_types), seed))
        if progress:
            progress("count", i + 1, len(seeds))
    mate_counts = [c for c, _ in counted]
    if not with_maximum:
        return Table1Row(case, len(seeds), min(mate_counts), max(mate_counts),
                         None, True)
    best = 0
    exact = True
    counted.sort(key=lambda item: -item[0])
    for i, (cnt, seed) in enumerate(counted):
        if cnt + seed.k > best:
            graph = build_mate_graph(seed, mate_types)
            res = max_clique(graph, budget=budget,
                             prune_below=max(0, best - seed.k))
            exact = exact and res.exact
            best = max(best, seed.k + res.size)
        if progress:
            progress("clique", i + 1, len(counted))
    return Table1Row(case, len(seeds), min(mate_counts), max(mate_counts),
                     best, exact)
