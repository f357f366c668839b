"""Command-line interface: compute values, run verification suites,
emit tables, and probe the conjectured identities.

Exit codes: 0 all passed, 1 verification failure, 2 invalid input,
3 output I/O failure.  Exact values are always serialized as strings;
JSON numbers cannot carry big rationals losslessly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .closedforms import conjecture_check, depth_one_bar, kkk_general
from .cyclotomic import render_cyclo
from .mhs import Index, zbar, zbar_star, z, z_star
from .report import FAIL, REPORT_ONLY, VerificationReport
from .suites import SUITES, default_parallelism, run_suite
from .xi import tilde_u, z_numeric

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_IO_FAIL = 3


def render_complex(v: complex) -> str:
    sign = "+" if v.imag >= 0 else "-"
    return f"{v.real:.12g}{sign}{abs(v.imag):.12g}i"


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    import os

    try:
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(str(exc))


class _IOFailure(Exception):
    pass


def _reports_text(reports: list[VerificationReport]) -> str:
    lines = []
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        lines.append(f"[{r.status}] {r.suite} {params} ({r.micros} us)")
        if r.status == FAIL:
            lines.append(f"    lhs: {r.lhs}")
            lines.append(f"    rhs: {r.rhs}")
    return "\n".join(lines) + "\n"


def _reports_json(reports: list[VerificationReport]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2)


def _reports_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["suite", "params", "status", "lhs", "rhs", "micros"])
    for r in reports:
        writer.writerow(
            [r.suite, json.dumps(r.params, sort_keys=True), r.status, r.lhs,
             r.rhs, r.micros]
        )
    return buf.getvalue()


def _format_reports(reports, fmt: str) -> str:
    if fmt == "json":
        return _reports_json(reports)
    if fmt == "csv":
        return _reports_csv(reports)
    return _reports_text(reports)


def cmd_compute(args) -> int:
    index = Index.parse(args.index)
    if args.backend == "numeric":
        if args.modified:
            raise ValueError("modified values are exact; use the exact backend")
        fn = z_star if args.star else z
        from .mhs import numeric_backend

        value = fn(index, args.n, numeric_backend(args.n))
        print(render_complex(value))
        return EXIT_OK
    if args.modified:
        value = (zbar_star if args.star else zbar)(index, args.n)
    else:
        value = (z_star if args.star else z)(index, args.n)
    print(render_cyclo(value))
    return EXIT_OK


def cmd_verify(args) -> int:
    parallelism = default_parallelism(args.parallelism)
    reports = run_suite(
        args.suite,
        n_max=args.n_max,
        cap=args.cap,
        k_max=args.k_max,
        r_max=args.r_max,
        parallelism=parallelism,
    )
    _write_output(_format_reports(reports, args.format), args.output)
    failed = [r for r in reports if r.status == FAIL]
    return EXIT_VERIFY_FAIL if failed else EXIT_OK


def cmd_conjecture(args) -> int:
    reports = []
    for n in range(2, args.n_max + 1):
        for total in range(0, args.ab_max + 1):
            for a in range(0, total + 1):
                b = total - a
                if a + b + 1 >= n:
                    continue
                reports.append(conjecture_check(args.family, n, a, b))
    _write_output(_format_reports(reports, args.format), args.output)
    return EXIT_OK


def _table_rows(args) -> tuple[list[str], list[list]]:
    kind = args.kind
    if kind == "depth1":
        values = depth_one_bar(args.n, args.k_max)
        header = ["n", "k", "numerator", "denominator"]
        rows = [
            [args.n, k, v.numerator, v.denominator]
            for k, v in enumerate(values, start=1)
        ]
        return header, rows
    if kind == "kkk":
        table = kkk_general(args.k, args.n_max, args.r_max)
        header = ["n", "r", "numerator", "denominator"]
        rows = [
            [n, r, table[(n, r)].numerator, table[(n, r)].denominator]
            for n in range(1, args.n_max + 1)
            for r in range(1, args.r_max + 1)
        ]
        return header, rows
    if kind == "zbar":
        header = ["n", "r", "numerator", "denominator"]
        rows = []
        for n in range(1, args.n_max + 1):
            for r in range(1, args.r_max + 1):
                v = zbar(Index.repeat(args.k, r), n).rational_part()
                rows.append([n, r, v.numerator, v.denominator])
        return header, rows
    if kind == "tildeU":
        kernel = tilde_u(args.cap)
        header = ["k", "r", "s", "numerator", "denominator"]
        rows = []
        for (ex, ey, ez) in sorted(kernel.coeffs):
            k, r, s = ex + ey + 2 * ez, ey + ez, ez
            v = kernel.coeffs[(ex, ey, ez)]
            rows.append([k, r, s, v.numerator, v.denominator])
        rows.sort()
        return header, rows
    raise ValueError(f"unknown table kind: {kind}")


def cmd_table(args) -> int:
    header, rows = _table_rows(args)
    if args.format == "json":
        text = json.dumps([dict(zip(header, row)) for row in rows], indent=2)
    elif args.format == "text":
        widths = [max(len(str(h)), max((len(str(r[i])) for r in rows), default=0))
                  for i, h in enumerate(header)]
        lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
        lines += ["  ".join(str(c).ljust(w) for c, w in zip(row, widths))
                  for row in rows]
        text = "\n".join(lines)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    _write_output(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmhs",
        description="Finite multiple harmonic q-series at roots of unity: "
        "exact computation and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate one nested sum")
    p.add_argument("--index", required=True,
                   help="comma-separated positive integers, e.g. 2,1,1")
    p.add_argument("--n", type=int, required=True, help="level (root order)")
    p.add_argument("--backend", choices=("exact", "numeric"), default="exact")
    p.add_argument("--star", action="store_true", help="non-strict chains")
    p.add_argument("--modified", action="store_true",
                   help="scale by (1 - zeta)^(-weight) (exact backend only)")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--parallelism", type=int, default=1,
                   help="worker count; QMHS_PARALLELISM overrides")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None, help="file path, default stdout")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("conjecture",
                       help="report both sides of the conjectured identities")
    p.add_argument("family", type=int, choices=(1, 2))
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--ab-max", type=int, default=3)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_conjecture)

    p = sub.add_parser("table", help="emit a table of exact rationals")
    p.add_argument("kind", choices=("zbar", "depth1", "kkk", "tildeU"))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--r-max", type=int, default=4)
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except _IOFailure as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO_FAIL
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
