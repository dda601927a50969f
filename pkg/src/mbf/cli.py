"""Command-line interface.

Exit codes: 0 ok, 2 parse error, 3 invalid input semantics, 4 unsupported
scale, 5 recovery mismatch, 6 query-bound violation.
"""

from __future__ import annotations

import argparse
import csv
import os
import re
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from .boolcube import TruthTable, build_matrix, check_index, is_antichain, is_monotone, table_cap
from .errors import ContractViolation, RecoveryMismatchError, ResourceLimitError
from .generator import DEDEKIND_NUMBERS, MAX_COUNT_DIM, dedekind_count, iter_monotone
from .identify import MAX_SWEEP_DIM, REFERENCE_QUERY_STATS, IdentResult, SweepReport, identify, verify_sweep
from .oracle import MinTOracle, TableOracle

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_SCALE = 4
EXIT_MISMATCH = 5
EXIT_BOUND = 6

GENERATE_SAFE_DIM = 6
MATRIX_MAX_DIM = 6
MINT_MAX_DIM = 32


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- text formats -------------------------------------------------------------

def format_function(table: TruthTable, fmt: str = "bits") -> str:
    return table.to_hex() if fmt == "hex" else str(table)


def parse_function(text: str, n: Optional[int] = None) -> TruthTable:
    """Decode a bitstring or 'x'-prefixed hex string; raises CLIError(2) if malformed."""
    try:
        table = TruthTable.parse(text)
    except ResourceLimitError as exc:
        raise CLIError(EXIT_SCALE, str(exc)) from None
    except ContractViolation as exc:
        raise CLIError(EXIT_PARSE, f"malformed function {text!r}: {exc}") from None
    if n is not None and table.n != n:
        raise CLIError(EXIT_PARSE, f"function {text!r} has {len(table)} positions, expected {1 << n}")
    return table


def format_ident_record(n: int, result: IdentResult) -> str:
    def fmt(items):
        return "[" + ",".join(str(i) for i in sorted(items)) + "]"

    return f"n={n} minT={fmt(result.min_true)} maxF={fmt(result.max_false)} q={result.queries}"


_RECORD = re.compile(r"^n=(\d+) minT=\[([\d,]*)\] maxF=\[([\d,]*)\] q=(\d+)$")


def parse_ident_record(line: str) -> tuple[int, list[int], list[int], int]:
    match = _RECORD.match(line.strip())
    if match is None:
        raise ValueError(f"not an identification record: {line!r}")

    def ints(group: str) -> list[int]:
        return [int(x) for x in group.split(",")] if group else []

    return int(match[1]), ints(match[2]), ints(match[3]), int(match[4])


def format_q_ave(q_total: int, total: int) -> str:
    """Average truncated (not rounded) to two decimals, as in the published table."""
    hundredths = 100 * q_total // total if total else 0
    return f"{hundredths // 100}.{hundredths % 100:02d}"


# -- commands -----------------------------------------------------------------

def cmd_generate(args: argparse.Namespace, out) -> int:
    n = args.n
    if n > GENERATE_SAFE_DIM and not args.force:
        raise CLIError(EXIT_SCALE, f"generating M_{n} is a runaway job; pass --force to insist")
    if n > table_cap():
        raise CLIError(EXIT_SCALE, f"n={n} exceeds the truth-table cap {table_cap()}")
    if args.format == "hex" and n < 2:
        raise CLIError(EXIT_PARSE, "hex output needs n >= 2")
    start = None
    if args.start is not None:
        start = parse_function(args.start, n)
        if not is_monotone(start):
            raise CLIError(EXIT_INVALID, f"--from function {args.start} is not monotone")
    for k, table in enumerate(iter_monotone(n, resume_from=start)):
        if args.limit is not None and k >= args.limit:
            break
        out.write(format_function(table, args.format) + "\n")
    return EXIT_OK


def cmd_count(args: argparse.Namespace, out) -> int:
    n = args.n
    if n > MAX_COUNT_DIM:
        known = DEDEKIND_NUMBERS.get(n)
        msg = f"counting M_{n} is out of reach (n <= {MAX_COUNT_DIM})"
        if known is not None:
            msg += f"; known value M_{n} = {known}"
        raise CLIError(EXIT_SCALE, msg)
    out.write(f"M_{n} = {dedekind_count(n, threads=args.threads)}\n")
    return EXIT_OK


def cmd_identify(args: argparse.Namespace, out) -> int:
    n = args.n
    if args.fun is not None:
        if n > table_cap():
            raise CLIError(EXIT_SCALE, f"n={n} exceeds the truth-table cap; use --minT")
        table = parse_function(args.fun, n)
        if not is_monotone(table):
            raise CLIError(EXIT_INVALID, f"function {args.fun} is not monotone")
        oracle = TableOracle(table)
    else:
        if n > MINT_MAX_DIM:
            raise CLIError(EXIT_SCALE, f"--minT mode supports n <= {MINT_MAX_DIM}")
        try:
            items = [int(x) for x in args.minT.split(",") if x.strip()] if args.minT.strip() else []
        except ValueError:
            raise CLIError(EXIT_PARSE, f"malformed index list {args.minT!r}") from None
        try:
            for i in items:
                check_index(i, n)
        except ContractViolation as exc:
            raise CLIError(EXIT_INVALID, str(exc)) from None
        if not is_antichain(set(items)):
            raise CLIError(EXIT_INVALID, f"--minT {args.minT} is not an antichain")
        oracle = MinTOracle(items, n)
    result = identify(oracle, n)
    out.write(format_ident_record(n, result) + "\n")
    return EXIT_OK


def _write_csv_atomic(path: Path, header: Sequence[str], rows) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_sweep_csvs(report: SweepReport, out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    n = report.n
    paths = [
        out_dir / f"q_hist_n{n}.csv",
        out_dir / f"ratio_hist_n{n}.csv",
        out_dir / f"summary_n{n}.csv",
    ]
    _write_csv_atomic(paths[0], ["q", "count"], sorted(report.q_hist.items()))
    _write_csv_atomic(paths[1], ["ratio_percent_bin", "count_excluding_constant_0"],
                      sorted(report.ratio_hist.items()))
    _write_csv_atomic(paths[2], SUMMARY_HEADER, [summary_row(report)])
    return paths


SUMMARY_HEADER = ["n", "total", "q_max", "q_ave", "peak_tpi_max", "peak_tpc_max"]


def summary_row(report: SweepReport) -> list:
    return [report.n, report.total, report.q_max, format_q_ave(report.q_total, report.total),
            report.peak_tpi_max, report.peak_tpc_max]


def cmd_verify(args: argparse.Namespace, out) -> int:
    n = args.n
    if n > MAX_SWEEP_DIM:
        raise CLIError(EXIT_SCALE, f"verification sweeps are limited to n <= {MAX_SWEEP_DIM}")
    try:
        report = verify_sweep(n, threads=args.threads)
    except RecoveryMismatchError as exc:
        raise CLIError(EXIT_MISMATCH, f"recovery mismatch: {exc}") from None

    out.write(",".join(SUMMARY_HEADER) + "\n")
    out.write(",".join(str(v) for v in summary_row(report)) + "\n")
    ref = REFERENCE_QUERY_STATS.get(n)
    if ref is not None:
        d_max, d_ave = report.reference_deviation()
        out.write(f"reference q_max={ref[0]} ({d_max:+d}) q_ave={ref[1]:.2f} ({100 * d_ave:+.2f}%)\n")
    out.write(f"settled_by_initial_searches={report.settled_by_searches} "
              f"peak_over_m={report.peak_over_m} peak_excess_max={report.peak_excess_max}\n")
    if args.out is not None:
        write_sweep_csvs(report, Path(args.out))
    if not report.bound_ok:
        for table, q, nm in report.bound_violations:
            out.write(f"bound violation: f={table} q={q} n*m={nm}\n")
        return EXIT_BOUND
    out.write("bound check: ok\n")
    return EXIT_OK


def cmd_matrix(args: argparse.Namespace, out) -> int:
    n = args.n
    if n > MATRIX_MAX_DIM:
        raise CLIError(EXIT_SCALE, f"matrix printing is limited to n <= {MATRIX_MAX_DIM}")
    p = build_matrix(n)
    if args.transpose:
        p = p.T
    for row in p:
        out.write(" ".join(str(int(v)) for v in row) + "\n")
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mbf", description="Monotone Boolean function toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="list all monotone functions in lexicographic order")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--from", dest="start", metavar="FUNC", help="resume after this function")
    p.add_argument("--limit", type=_nonneg)
    p.add_argument("--format", choices=("bits", "hex"), default="bits")
    p.add_argument("--force", action="store_true", help="allow n > 6")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("count", help="count monotone functions of n variables")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("identify", help="identify one function by membership queries")
    p.add_argument("--n", type=_nonneg, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fun", metavar="FUNC")
    group.add_argument("--minT", metavar="I1,I2,...")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("verify", help="identify every function of M_n and report statistics")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("matrix", help="print the precedence matrix P_n")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--transpose", action="store_true", help="Pascal triangle mod 2 view")
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CLIError as exc:
        print(f"mbf {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except ResourceLimitError as exc:
        print(f"mbf {args.command}: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except ContractViolation as exc:
        print(f"mbf {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
