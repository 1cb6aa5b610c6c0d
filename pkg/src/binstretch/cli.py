"""Command-line entry point: solve, verify, table, bench.

Exit codes are a stable contract: 0 = proven / verified, 1 = not proven /
verification failed, 2 = inconclusive (resource cap), 3 = usage error.
"""

from __future__ import annotations

import argparse
import sys
import tempfile
import time
import zlib
from pathlib import Path

from .certificate import (
    CertificateParseError,
    load_certificate,
    save_certificate,
    verify,
)
from .combinatorics import CountTable
from .core import GameParams
from .pruning import compute_v_table, enumerate_ranked_packings
from .search import SearchOptions, Verdict, solve

EXIT_PROVEN = 0
EXIT_NOT_PROVEN = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

# Table 3 reproduction cases: (m, g, t) -> (bound valid, paper wall time).
BENCH_SMALL = [
    ((3, 14, 19), True, "<0.1s"),
    ((3, 22, 30), False, "0.1s"),
    ((3, 40, 55), False, "5s"),
    ((3, 41, 56), False, "13s"),
    ((4, 14, 19), True, "0.1s"),
    ((4, 22, 30), False, "18s"),
    ((4, 25, 34), False, "2min 24s"),
    ((6, 11, 15), True, "14s"),
]
BENCH_FULL = BENCH_SMALL + [
    ((7, 11, 15), True, "1min 52s"),
    ((8, 11, 15), True, "1h"),
]


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binstretch",
        description="Prove lower bounds t/g on online bin stretching by game-tree search.",
    )
    sub = parser.add_subparsers(dest="command")

    p_solve = sub.add_parser("solve", help="search for a proof of the bound t/g")
    _add_game_args(p_solve)
    p_solve.add_argument("--emit-proof", metavar="PATH", default=None,
                         help="write the certificate here when the bound is proven")
    p_solve.add_argument("--memo-cap", metavar="BYTES", type=int, default=None,
                         help="abort with exit 2 if the memo table outgrows this")
    p_solve.add_argument("--stats", choices=("none", "summary", "full"), default="summary")
    p_solve.set_defaults(func=run_solve)

    p_verify = sub.add_parser("verify", help="check a certificate independently")
    p_verify.add_argument("certificate", help="path to a certificate file")
    p_verify.add_argument("--bins", "-m", type=int, default=None,
                          help="override the certificate header's bin count")
    p_verify.add_argument("--granularity", "-g", type=int, default=None)
    p_verify.add_argument("--target", "-t", type=int, default=None)
    p_verify.set_defaults(func=run_verify)

    p_table = sub.add_parser("table", help="dump counting/pruning table diagnostics")
    _add_game_args(p_table)
    p_table.add_argument("--dump", action="store_true",
                         help="print every packing with its v value (m=2 only)")
    p_table.set_defaults(func=run_table)

    p_bench = sub.add_parser("bench", help="reproduce the published verdict/timing table")
    p_bench.add_argument("--suite", required=True, choices=("paper-small", "paper-full"))
    p_bench.set_defaults(func=run_bench)
    return parser


def _add_game_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bins", "-m", type=int, required=True, help="number of bins (>= 2)")
    p.add_argument("--granularity", "-g", type=int, required=True,
                   help="bin capacity in item units (>= 1)")
    p.add_argument("--target", "-t", type=int, required=True,
                   help="target load; claimed bound is t/g (t > g)")


def _params(args) -> GameParams:
    try:
        return GameParams(args.bins, args.granularity, args.target)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _result_line(v: Verdict) -> str:
    p = v.params
    proven = "true" if v.proven else "false"
    return (
        f"RESULT m={p.m} g={p.g} t={p.t} proven={proven} "
        f"nodes={v.stats.nodes} pruned={v.stats.pruned} "
        f"memo_hits={v.stats.memo_hits} time_ms={v.time_ms:.0f}"
    )


def run_solve(args) -> int:
    params = _params(args)
    opts = SearchOptions(record_proof=args.emit_proof is not None,
                         memo_cap_bytes=args.memo_cap)
    verdict = solve(params, opts)
    if verdict.proven is None:
        print(f"INCONCLUSIVE m={params.m} g={params.g} t={params.t} reason={verdict.reason}")
        return EXIT_INCONCLUSIVE
    print(_result_line(verdict))
    if args.stats == "full":
        print(f"  bound {params.bound_str()} = {params.t / params.g:.6f}")
        print(f"  nodes={verdict.stats.nodes} pruned={verdict.stats.pruned} "
              f"memo_hits={verdict.stats.memo_hits}")
    if verdict.proven and args.emit_proof:
        save_certificate(verdict.proof, args.emit_proof)
        print(f"certificate written to {args.emit_proof}")
    return EXIT_PROVEN if verdict.proven else EXIT_NOT_PROVEN


def run_verify(args) -> int:
    try:
        tree = load_certificate(args.certificate)
    except FileNotFoundError:
        print(f"error: no such file: {args.certificate}", file=sys.stderr)
        return EXIT_NOT_PROVEN
    except CertificateParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_NOT_PROVEN
    params = GameParams(
        args.bins if args.bins is not None else tree.params.m,
        args.granularity if args.granularity is not None else tree.params.g,
        args.target if args.target is not None else tree.params.t,
    )
    report = verify(tree, params)
    print(f"claimed bound: {params.bound_str()} = {params.t / params.g:.6f}")
    print(f"tree: {report.nodes} nodes, {report.leaves} leaves, depth {report.depth}, "
          f"{len(report.items)} distinct items")
    if report.ok:
        print(f"VERIFIED value={report.value} >= t={params.t}")
        return EXIT_PROVEN
    print(f"FAILED [{report.code}] {report.message}")
    return EXIT_NOT_PROVEN


def run_table(args) -> int:
    params = _params(args)
    tables = CountTable(params)
    vt = compute_v_table(params, tables)
    stats = vt.stats()
    print(f"game m={params.m} g={params.g} t={params.t}")
    print(f"rank space |P_t,m| = {stats['size']}")
    print(f"n_kn table shape {tables.n_kn.shape}, "
          f"n_skn table shape {tables.n_skn.shape}")
    print(f"checksum n_kn={zlib.adler32(tables.n_kn.tobytes()):08x} "
          f"n_skn={zlib.adler32(tables.n_skn.tobytes()):08x} "
          f"v={zlib.adler32(vt.values.tobytes()):08x}")
    print(f"algorithm-winning entries (v = g+1): {stats['alg_winning']}")
    print("v histogram:")
    for val, cnt in sorted(vt.histogram().items()):
        print(f"  v={val}: {cnt}")
    if args.dump:
        if params.m != 2:
            raise _UsageError("--dump is only supported for m=2")
        for b in enumerate_ranked_packings(params):
            print(f"  {b}: v={vt.value(tables, b)}")
    return EXIT_PROVEN


def run_bench(args) -> int:
    cases = BENCH_SMALL if args.suite == "paper-small" else BENCH_FULL
    mismatches = 0
    print(f"{'case':>14} {'expected':>9} {'got':>9} {'paper time':>11} {'our time':>10}")
    for (m, g, t), expected, paper_time in cases:
        params = GameParams(m, g, t)
        opts = SearchOptions(record_proof=expected)
        t0 = time.perf_counter()
        verdict = solve(params, opts)
        elapsed = time.perf_counter() - t0
        got = verdict.proven
        ok = got is expected
        if ok and got and verdict.proof is not None:
            # round-trip: the emitted certificate must verify in-batch
            with tempfile.NamedTemporaryFile(suffix=".json", delete=False) as fh:
                path = Path(fh.name)
            save_certificate(verdict.proof, path)
            report = verify(load_certificate(path), params)
            path.unlink()
            if not report.ok:
                ok = False
        if not ok:
            mismatches += 1
        print(f"{f'{t}/{g} m={m}':>14} {_yn(expected):>9} {_yn(got):>9} "
              f"{paper_time:>11} {elapsed:>9.1f}s{'' if ok else '  MISMATCH'}")
    if mismatches:
        print(f"{mismatches} verdict mismatch(es)")
        return EXIT_NOT_PROVEN
    print("all verdicts match")
    return EXIT_PROVEN


def _yn(v) -> str:
    return "Yes" if v else "No"


if __name__ == "__main__":
    sys.exit(main())
