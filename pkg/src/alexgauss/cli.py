"""Command-line front end.

Subcommands::

    alexgauss compute --in knot.json [--format crossings-json|pd-text]
                      [--method matrix|gaussian|stitch|all] [--out text|json]
    alexgauss verify [--matrix m.json] [--balancing POLY] [--out text|json]
    alexgauss selftest [--seed N] [--truncation D] [--degree G]

Exit codes for ``compute``: 0 success, 1 unreadable input, 2 pipelines
disagree, 3 pipeline error.  ``verify`` returns 0 when every axiom holds,
2 when one fails and 1 for an unreadable matrix file.  ``selftest`` returns 0
when all suites pass.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from alexgauss import __version__, kernels
from alexgauss.alexander import METHODS, PIPELINES, alex_compare, render_json
from alexgauss.diagram import UpwardDiagram, crossings_from_json, diag_from_pd, pd_from_text
from alexgauss.errors import AlexGaussError, ParseError
from alexgauss.laurent import LaurentMatrix, T, format_poly, parse_poly
from alexgauss.selftest import run_all
from alexgauss.xc import RMatrix, xc_standard, xc_twist, xc_verify_axioms

EXIT_OK, EXIT_PARSE, EXIT_DISAGREE, EXIT_PIPELINE = 0, 1, 2, 3
FORMATS = ("crossings-json", "pd-text")


@dataclass
class RunConfig:
    command: str
    source: Optional[str] = None
    text: Optional[str] = None
    format: Optional[str] = None
    method: str = "all"
    output: str = "text"


def sniff_format(text: str, path: Optional[str] = None) -> str:
    if path:
        suffix = Path(path).suffix.lower()
        if suffix == ".json":
            return "crossings-json"
        if suffix in (".pd", ".txt"):
            return "pd-text"
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return "crossings-json"
    if stripped.startswith("X[") or not stripped:
        return "pd-text"
    raise ParseError("cannot detect input format; pass --format")


def load_diagram(cfg: RunConfig) -> UpwardDiagram:
    if cfg.text is not None:
        text = cfg.text
    elif cfg.source in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(cfg.source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {cfg.source}: {exc.strerror}") from exc
    fmt = cfg.format or sniff_format(text, cfg.source)
    if fmt == "crossings-json":
        return crossings_from_json(text)
    return diag_from_pd(pd_from_text(text))


def cmd_compute(cfg: RunConfig, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        d = load_diagram(cfg)
    except AlexGaussError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    methods = METHODS if cfg.method == "all" else (cfg.method,)
    report = alex_compare(d, methods)
    if cfg.output == "json":
        body = report.as_dict()
        body["crossings"] = d.n
        if cfg.method != "all":
            body = {"crossings": d.n, **(report.results[cfg.method].as_dict() if report.results else {}),
                    "errors": report.errors}
        print(render_json(body), file=out)
    else:
        if report.results:
            print(next(iter(report.results.values())).to_text(), file=out)
        if cfg.method == "all":
            width = max(len(m) for m in methods) + 1
            for m in methods:
                val = format_poly(report.results[m].poly) if m in report.results else "error"
                print(f"  {(m + ':').ljust(width)} {val}", file=out)
            print(f"agreement: {'OK' if report.agree else 'MISMATCH'}", file=out)
    for m, msg in report.errors.items():
        print(f"error in {m} pipeline: {msg}", file=err)
    if report.errors:
        return EXIT_PIPELINE
    if not report.agree:
        return EXIT_DISAGREE
    return EXIT_OK


def load_matrix(path: str) -> LaurentMatrix:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        rows = data["matrix"] if isinstance(data, dict) else data
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError("matrix must be a list of rows")
        m = LaurentMatrix([[parse_poly(str(x)) for x in row] for row in rows])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"cannot read matrix from {path}: {exc}") from exc
    if m.shape != (2, 2):
        raise ParseError(f"R-matrix must be 2x2, got {m.shape}")
    return m


def cmd_verify(matrix: Optional[str] = None, balancing: str = "1", output: str = "text",
               out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        kappa = parse_poly(balancing)
        if matrix:
            rs = [RMatrix(load_matrix(matrix), "custom")]
        else:
            rs = [xc_standard("A-form"), xc_standard("B-form")]
    except AlexGaussError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    reports = [xc_verify_axioms(r, kappa) for r in rs]
    twist = None
    if not matrix:
        twist = xc_twist(rs[0], T).m == rs[1].m
    if output == "json":
        body = {"reports": [r.as_dict() for r in reports]}
        if twist is not None:
            body["twist_A_by_T_is_B"] = twist
        print(render_json(body), file=out)
    else:
        for r in reports:
            print(r.to_text(), file=out)
        if twist is not None:
            print(f"twist(A-form, T) = B-form: {'yes' if twist else 'no'}", file=out)
    ok = all(r.all_pass for r in reports) and twist is not False
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_selftest(seed: int = 0, truncation: int = 4, degree: int = 6, out=None) -> int:
    out = out or sys.stdout
    t0 = time.perf_counter()
    results = run_all(seed=seed, truncation=truncation, degree=degree)
    for r in results:
        print(r.line(), file=out)
    total = sum(r.passed for r in results)
    bad = sum(r.failed for r in results)
    print(f"{total} checks passed, {bad} failed in {time.perf_counter() - t0:.2f} s "
          f"(seed {seed}, u-order {truncation}, degree {degree}, kernels: {kernels.BACKEND})", file=out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alexgauss", description="Alexander polynomials via Gaussian contraction.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute the Alexander polynomial of a diagram")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="source", metavar="PATH", help="input file, or - for stdin")
    src.add_argument("--text", help="inline diagram text")
    c.add_argument("--format", choices=FORMATS, help="input format (default: detect)")
    c.add_argument("--method", choices=METHODS + ("all",), default="all")
    c.add_argument("--out", dest="output", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="check the XC axioms and Yang-Baxter equation")
    v.add_argument("--matrix", metavar="PATH", help='JSON file {"matrix": [["T","0"],["1 - T^2","T"]]}')
    v.add_argument("--balancing", default="1", metavar="POLY",
                   help="scalar balancing element, e.g. T (default 1)")
    v.add_argument("--out", dest="output", choices=("text", "json"), default="text")

    s = sub.add_parser("selftest", help="run the seeded oracle suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--truncation", type=int, default=4, metavar="D", help="u-order of the oracle")
    s.add_argument("--degree", type=int, default=6, metavar="G", help="generator-degree window")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compute":
        cfg = RunConfig("compute", args.source, args.text, args.format, args.method, args.output)
        return cmd_compute(cfg)
    if args.command == "verify":
        return cmd_verify(args.matrix, args.balancing, args.output)
    return cmd_selftest(args.seed, args.truncation, args.degree)


if __name__ == "__main__":
    sys.exit(main())
