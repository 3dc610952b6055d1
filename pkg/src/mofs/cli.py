"""Command-line front end: file codecs, verification, certificates,
enumeration, canonical forms, search drivers and table reproduction.

File format (decimal superimposed): a header line

    MOFS n=<order> k=<count> types=<lambda1,...>[ format=bin]

followed by n lines of n whitespace-separated decimal cells, where the
cell in row r, column c is the k-bit integer whose most significant bit
comes from square 1.  With ``format=bin`` the body is instead k blocks of
n rows of n binary digits (spaces inside a row allowed), square 1 first.
``#`` starts a comment, blank lines are ignored.  Exit codes: 0 success,
1 verification failure, 2 usage or format problems, 3 budget exhausted
(partial results are still printed).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from .core import (MAX_SUPERIMPOSED, MofsError, MofsSet, TypeSignature,
                   decode_decimal, encode_decimal)
from .enumeration import EnumSpec, count_squares, enumerate_squares, random_mate, random_square
from .isomorphism import canonical_form, dedupe_catalogue
from .orthogonality import bound_for_set, verify_mofs
from .relations import (HypothesisNotMet, Relation, detect_any_relation,
                        detect_block_structure, detect_full_relation,
                        check_parity_theorems, even_frequency_obstruction,
                        extension_obstruction, zw_sum)
from .search import (TABLE1_CASES, TABLE1_DESK_CASES, build_mate_graph,
                     extend_to_maximum, f_value, generate_mates,
                     seed_catalogue, table1_row)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

#: Default per-seed node budget for the clique phase of table rows.
DEFAULT_TABLE_BUDGET = 300_000


class FormatError(MofsError):
    pass


def format_mofs(mofs: MofsSet, binary: bool = False) -> str:
    """Serialize a binary set in the decimal (or per-square binary) format."""
    types = ",".join(str(sq.sig.lambda1) for sq in mofs.squares)
    if binary:
        header = f"MOFS n={mofs.order} k={mofs.k} types={types} format=bin"
        blocks = []
        for sq in mofs.squares:
            blocks.append("\n".join(
                "".join(str(v) for v in row) for row in sq.cells))
        return header + "\n" + "\n".join(blocks) + "\n"
    header = f"MOFS n={mofs.order} k={mofs.k} types={types}"
    grid = encode_decimal(mofs)
    body = "\n".join(" ".join(str(v) for v in row) for row in grid)
    return header + "\n" + body + "\n"


def parse_mofs(text: str) -> MofsSet:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormatError("empty file")
    header = lines[0].split()
    if not header or header[0] != "MOFS":
        raise FormatError("missing MOFS header")
    fields = {}
    for token in header[1:]:
        if "=" not in token:
            raise FormatError(f"bad header token {token!r}")
        key, value = token.split("=", 1)
        fields[key] = value
    try:
        n = int(fields["n"])
        k = int(fields["k"])
        lambda1s = [int(v) for v in fields["types"].split(",")] if k else []
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad header: {exc}") from exc
    if len(lambda1s) != k:
        raise FormatError(f"header lists {len(lambda1s)} types for k={k}")
    if k > MAX_SUPERIMPOSED:
        raise FormatError(f"k={k} exceeds the {MAX_SUPERIMPOSED}-square grid limit")
    sigs = [TypeSignature.binary(n, l) for l in lambda1s]
    body = lines[1:]
    if fields.get("format") == "bin":
        if len(body) != n * k:
            raise FormatError(f"expected {n * k} body lines, got {len(body)}")
        grid = [[0] * n for _ in range(n)]
        for t in range(k):
            for r in range(n):
                digits = body[t * n + r].replace(" ", "").replace("\t", "")
                if len(digits) != n or set(digits) - {"0", "1"}:
                    raise FormatError(f"bad binary row {body[t * n + r]!r}")
                for c, ch in enumerate(digits):
                    grid[r][c] |= int(ch) << (k - 1 - t)
    else:
        if len(body) != n:
            raise FormatError(f"expected {n} grid rows, got {len(body)}")
        try:
            grid = [[int(v) for v in line.split()] for line in body]
        except ValueError as exc:
            raise FormatError(f"bad grid entry: {exc}") from exc
        if any(len(row) != n for row in grid):
            raise FormatError("grid rows must have n entries")
    try:
        return decode_decimal(grid, k, sigs)
    except MofsError as exc:
        raise FormatError(f"grid does not decode to valid squares: {exc}") from exc


def load_mofs(path: str) -> MofsSet:
    return parse_mofs(Path(path).read_text())


def format_catalogue(n: int, lambda1: int, squares) -> str:
    rows = [f"SQUARES n={n} lambda1={lambda1} count={len(squares)}"]
    for sq in squares:
        rows.append(" ".join(str(m) for m in sq.row_masks))
    return "\n".join(rows) + "\n"


def parse_catalogue(text: str):
    """Yield (n, lambda1, row-mask tuples) from a SQUARES catalogue."""
    from .core import square_from_row_masks
    lines = [l.split("#", 1)[0].strip() for l in text.splitlines()]
    lines = [l for l in lines if l]
    if not lines or not lines[0].startswith("SQUARES"):
        raise FormatError("missing SQUARES header")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    n = int(fields["n"])
    lambda1 = int(fields["lambda1"])
    squares = []
    for line in lines[1:]:
        masks = tuple(int(v) for v in line.split())
        if len(masks) != n:
            raise FormatError("row-mask line of wrong length")
        squares.append(square_from_row_masks(n, lambda1, masks))
    if "count" in fields and int(fields["count"]) != len(squares):
        raise FormatError("catalogue count does not match body")
    return n, lambda1, squares


def _indices_1based(values) -> str:
    vals = sorted(values)
    return ",".join(str(v + 1) for v in vals) if vals else "-"


def _fmt_bool(flag: bool) -> str:
    return "true" if flag else "false"


def _relation_line(rel: Relation) -> str:
    return (f"RELATION a={rel.a} b={rel.b} X1={_indices_1based(rel.xs[0])} "
            f"X2={_indices_1based(rel.xs[1])} full={_fmt_bool(rel.full)} "
            f"constant={_fmt_bool(rel.constant)}")


def _block_line(blocks) -> str:
    xs = ",".join(str(x) for x in blocks.xs)
    return (f"BLOCK w={blocks.w} a={blocks.a} b={blocks.b} x={xs} "
            f"compatible={_fmt_bool(blocks.compatible)}")


def _cmd_verify(args) -> int:
    mofs = load_mofs(args.file)
    report = verify_mofs(mofs, verbose=args.verbose)
    if report.ok:
        print(f"VERIFY ok=true n={mofs.order} k={mofs.k} pairs={report.pairs_checked}")
        bound = bound_for_set(mofs)
        print(f"BOUND total={bound.total} limit={bound.limit} "
              f"admissible={_fmt_bool(bound.admissible)} "
              f"complete={_fmt_bool(bound.complete)}")
        return EXIT_OK
    print(f"VERIFY ok=false n={mofs.order} k={mofs.k} pairs={report.pairs_checked}")
    for f in report.failures:
        print(f"FAIL pair=({f.i + 1},{f.j + 1}) symbols={f.symbols} "
              f"count={f.count} expected={f.expected}")
    return EXIT_FAILED


def _cmd_relations(args) -> int:
    mofs = load_mofs(args.file)
    if args.w is not None and args.w != 2:
        z = zw_sum(mofs, w=args.w)
        blocks = detect_block_structure(z)
        print(_block_line(blocks) if blocks else "NONE")
        return EXIT_OK
    if args.subsets:
        hit = detect_any_relation(mofs)
        if hit is None:
            print("NONE")
            return EXIT_OK
        subset, rel = hit
        print(f"SUBSET squares={','.join(str(i + 1) for i in subset)}")
        print(_relation_line(rel))
        sub = mofs.subset(subset)
        for verdict in check_parity_theorems(sub, rel):
            holds = "-" if verdict.holds is None else _fmt_bool(verdict.holds)
            print(f"THEOREM {verdict.name} applied={_fmt_bool(verdict.applied)} "
                  f"holds={holds}")
        return EXIT_OK
    blocks = detect_block_structure(zw_sum(mofs, w=2))
    if blocks is not None:
        print(_block_line(blocks))
    rel = detect_full_relation(mofs)
    if rel is None:
        print("NONE")
        return EXIT_OK
    print(_relation_line(rel))
    for verdict in check_parity_theorems(mofs, rel):
        holds = "-" if verdict.holds is None else _fmt_bool(verdict.holds)
        print(f"THEOREM {verdict.name} applied={_fmt_bool(verdict.applied)} "
              f"holds={holds}")
    return EXIT_OK


def _cmd_obstruct(args) -> int:
    mofs = load_mofs(args.file)
    n = mofs.order
    if args.mu:
        try:
            mu_list = [tuple(int(v) for v in args.mu.split(","))]
        except ValueError:
            print("bad --mu; expected comma-separated frequencies", file=sys.stderr)
            return EXIT_USAGE
    else:
        mu_list = [(n - t, t) for t in range(1, n // 2 + 1)]
    moduli = [args.w] if args.w is not None else list(range(2, n + 1))
    found = False
    for w in moduli:
        blocks = detect_block_structure(zw_sum(mofs, w=w))
        if blocks is None:
            continue
        print(_block_line(blocks))
        if not blocks.compatible:
            continue
        found = True
        for mu in mu_list:
            report = extension_obstruction(mofs, blocks, mu)
            ruled = ",".join(str(i) for i in report.ruled_out) or "-"
            mu_txt = ",".join(str(f) for f in mu)
            print(f"OBSTRUCT w={w} mu=({mu_txt}) lhs={report.lhs_base} "
                  f"rhs={report.rhs} ruled_out={ruled} "
                  f"excluded={_fmt_bool(report.type_excluded)}")
    if not found:
        print("NONE")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    constraints = ()
    if args.mate_of:
        base = load_mofs(args.mate_of)
        constraints = base.squares
    spec = EnumSpec(args.n, args.lambda1, dedup_complement=args.dedup,
                    constraints=constraints)
    if args.count_only:
        count = count_squares(spec)
        print(f"SQUARES n={args.n} lambda1={args.lambda1} count={count}")
        return EXIT_OK
    squares = []
    enumerate_squares(spec, squares.append)
    text = format_catalogue(args.n, args.lambda1, squares)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_canon(args) -> int:
    mofs = load_mofs(args.file)
    form = canonical_form(mofs, ordered=args.ordered,
                          preserve_types=args.preserve_types)
    from .isomorphism import transform_set
    canon = transform_set(mofs, form.ops)
    sys.stdout.write(format_mofs(canon))
    return EXIT_OK


def _cmd_dedupe(args) -> int:
    paths = sorted(Path(args.directory).glob("*.mofs"))
    if not paths:
        print("no .mofs files found", file=sys.stderr)
        return EXIT_USAGE
    sets = [load_mofs(str(p)) for p in paths]
    result = dedupe_catalogue(sets, ordered=args.ordered,
                              preserve_types=args.preserve_types)
    print(f"CLASSES count={result.class_count}")
    keys = {}
    for path, mofs in zip(paths, sets):
        key = canonical_form(mofs, ordered=args.ordered,
                             preserve_types=args.preserve_types).key
        keys.setdefault(key, path.name)
    for key, name in sorted(keys.items()):
        print(f"REP file={name}")
    return EXIT_OK


def _parse_types(text: str) -> tuple[int, ...]:
    return tuple(sorted({int(v) for v in text.split(",")}))


def _cmd_mates(args) -> int:
    base = load_mofs(args.file)
    types = _parse_types(args.types)
    mates = generate_mates(base, types)
    print(f"MATES count={len(mates)} types={{{','.join(map(str, types))}}}")
    for sq in mates:
        rows = ",".join(str(m) for m in sq.row_masks)
        print(f"MATE lambda1={sq.sig.lambda1} rows={rows}")
    return EXIT_OK


def _cmd_extend(args) -> int:
    base = load_mofs(args.file)
    types = _parse_types(args.types)
    result = extend_to_maximum(base, types, budget=args.budget or None)
    print(f"EXTEND base={base.k} added={len(result.added)} "
          f"total={result.extended.k} exact={_fmt_bool(result.exact)}")
    text = format_mofs(result.extended)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.exact else EXIT_BUDGET


def _cmd_fvalue(args) -> int:
    types = _parse_types(args.types)
    seeds = seed_catalogue(args.n, {t: 1 for t in types})
    result = f_value(args.n, types, seeds, budget=args.budget or None)
    print(f"FVALUE n={args.n} lambda={{{','.join(map(str, types))}}} "
          f"value={result.value} exact={_fmt_bool(result.exact)}")
    text = format_mofs(result.witness)
    if args.witness:
        Path(args.witness).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.exact else EXIT_BUDGET


def _sample_seeds(case: int, count: int, seed: int):
    composition, _ = TABLE1_CASES[case]
    rng = random.Random(seed)
    seeds = []
    guard = 0
    while len(seeds) < count:
        guard += 1
        if guard > 100 * count:
            raise RuntimeError("sampling failed to complete")
        squares = []
        ok = True
        for t in sorted(composition):
            for _ in range(composition[t]):
                if not squares:
                    squares.append(random_square(6, t, rng))
                    continue
                mate = random_mate(squares, t, rng)
                if mate is None:
                    ok = False
                    break
                squares.append(mate)
            if not ok:
                break
        if ok:
            seeds.append(MofsSet(6, tuple(squares)))
    return seeds


def _cmd_table1(args) -> int:
    case = args.case
    if case not in TABLE1_CASES:
        print(f"unknown case {case}", file=sys.stderr)
        return EXIT_USAGE
    if args.sample:
        seeds = _sample_seeds(case, args.sample, args.seed)
        _, mate_types = TABLE1_CASES[case]
        from .search import count_mates
        counts = [count_mates(s, mate_types) for s in seeds]
        print(f"TABLE1 case={case} sampled={len(seeds)} "
              f"mates=({min(counts)},{max(counts)})")
        return EXIT_OK
    if case not in TABLE1_DESK_CASES and not args.full:
        print(f"case {case} is not desk scale; pass --full to run it "
              f"(hours to days) or --sample K", file=sys.stderr)
        return EXIT_USAGE
    budget = args.budget if args.budget is not None else DEFAULT_TABLE_BUDGET
    row = table1_row(case, budget=budget or None)
    print(f"TABLE1 case={case} seeds={row.seed_count} "
          f"mates=({row.mate_min},{row.mate_max}) max={row.maximum} "
          f"exact={_fmt_bool(row.exact)}")
    return EXIT_OK if row.exact else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mofs",
        description="Exact search toolkit for binary mutually orthogonal "
                    "frequency squares of mixed type.")
    parser.add_argument("--workers", type=int,
                        default=int(os.environ.get("MOFS_WORKERS", "1")),
                        help="worker processes for seed-parallel drivers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check mutual orthogonality and the bound")
    p.add_argument("file")
    p.add_argument("--verbose", action="store_true",
                   help="report every failing pair instead of the first")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("relations", help="emit relation/block certificates")
    p.add_argument("file")
    p.add_argument("--w", type=int, default=None,
                   help="modulus for block detection (default 2)")
    p.add_argument("--subsets", action="store_true",
                   help="search non-empty subsets, smallest first")
    p.set_defaults(func=_cmd_relations)

    p = sub.add_parser("obstruct", help="modular extension obstructions")
    p.add_argument("file")
    p.add_argument("--w", type=int, default=None,
                   help="modulus (default: scan 2..n)")
    p.add_argument("--mu", default=None,
                   help="candidate type frequencies, e.g. 5,1")
    p.set_defaults(func=_cmd_obstruct)

    p = sub.add_parser("enumerate", help="stream all squares of one type")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda1", type=int, required=True)
    p.add_argument("--dedup", action="store_true",
                   help="emit one of each complement pair (lambda1 = n/2)")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--mate-of", default=None,
                   help="restrict to mates of the sets in this file")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("canon", help="print the canonical form of a set")
    p.add_argument("file")
    p.add_argument("--ordered", action="store_true",
                   help="keep the square order fixed")
    p.add_argument("--preserve-types", action="store_true",
                   help="complement only balanced squares")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("dedupe", help="deduplicate a directory of .mofs files")
    p.add_argument("directory")
    p.add_argument("--ordered", action="store_true")
    p.add_argument("--preserve-types", action="store_true")
    p.set_defaults(func=_cmd_dedupe)

    p = sub.add_parser("mates", help="list admissible extension squares")
    p.add_argument("file")
    p.add_argument("--types", required=True, help="comma-separated, e.g. 1,2,3")
    p.set_defaults(func=_cmd_mates)

    p = sub.add_parser("extend", help="extend a set by a maximum clique of mates")
    p.add_argument("file")
    p.add_argument("--types", required=True)
    p.add_argument("--budget", type=int, default=0,
                   help="clique search node limit (0 = unlimited)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("fvalue", help="largest set with exactly the given types")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--types", required=True)
    p.add_argument("--budget", type=int, default=0)
    p.add_argument("--witness", default=None)
    p.set_defaults(func=_cmd_fvalue)

    p = sub.add_parser("table1", help="reproduce a seed/mates/maximum table row")
    p.add_argument("--case", type=int, required=True)
    p.add_argument("--budget", type=int, default=None,
                   help=f"per-seed clique node limit "
                        f"(default {DEFAULT_TABLE_BUDGET}; 0 = unlimited)")
    p.add_argument("--sample", type=int, default=None,
                   help="verify mate counts on K random seeds instead")
    p.add_argument("--full", action="store_true",
                   help="run a non-desk-scale case in full")
    p.add_argument("--seed", type=int, default=20240913,
                   help="PRNG seed for --sample")
    p.set_defaults(func=_cmd_table1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisNotMet as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except MofsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
