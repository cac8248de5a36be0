"""Command line: ``electrical-lie dim`` and ``electrical-lie verify``.

Exit codes: 0 pass, 1 a check failed, 2 closure diverged, 3 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from . import __version__
from .dynkin import FAMILIES, diagram, positive_roots
from .errors import ClosureDiverged, ElectricalLieError, Unsupported, UnsupportedType
from .verify import SUITES, Certificate, build_table, certify_dimension, run_suite

EXIT_OK, EXIT_FAIL, EXIT_DIVERGED, EXIT_USAGE = 0, 1, 2, 3
RANK_CAPS = {"A": 12, "B": 8, "C": 8, "D": 8}
SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which means divergence here
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _config(args) -> tuple:
    fam = str(args.family).upper()
    if fam not in FAMILIES:
        raise UsageError(f"unsupported family {args.family!r} (supported: {', '.join(FAMILIES)})")
    cap = RANK_CAPS[fam]
    if args.rank < 1 or args.rank > cap:
        raise UsageError(f"rank {args.rank} outside 1..{cap} for type {fam}")
    try:
        diagram(fam, args.rank)
    except UnsupportedType as exc:
        raise UsageError(str(exc)) from None
    return fam, args.rank


def _document(kind: str, cert: Certificate, **extra) -> dict:
    doc = {"schema": SCHEMA, "command": kind, "version": __version__}
    doc.update(cert.to_dict())
    doc.update(extra)
    return doc


def _emit(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_dim(args) -> int:
    fam, rank = _config(args)
    try:
        cert = certify_dimension(fam, rank)
    except ClosureDiverged as exc:
        partial = getattr(exc, "certificate", Certificate("dimension", fam, rank))
        if args.format == "json" or args.out:
            _emit(_document("dim", partial, diverged=str(exc)), args.out)
        print(f"closure diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    upper = len(positive_roots(diagram(fam, rank)))
    if args.format == "json" or args.out:
        _emit(_document("dim", cert, dimension=upper if cert.overall else None), args.out)
    if args.format == "text":
        lower = next((c.witness for c in cert.checks if c.name.endswith("dim.lower")), None)
        print(f"{fam}{rank}: upper bound {upper}, certified lower bound {lower}")
        if cert.overall:
            print(f"dim = {upper} (certified)")
        else:
            print(f"dim not certified; failing checks: {', '.join(cert.failed())}")
    return EXIT_OK if cert.overall else EXIT_FAIL


def _suite_job(job):
    suite, fam, rank = job
    try:
        return suite, run_suite(suite, fam, rank), None
    except Unsupported:
        return suite, None, None
    except ClosureDiverged as exc:
        return suite, None, str(exc)


def cmd_verify(args) -> int:
    fam, rank = _config(args)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all":
        try:
            cert = run_suite(args.suite, fam, rank)
        except Unsupported as exc:
            print(f"unsupported: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except ClosureDiverged as exc:
            print(f"closure diverged: {exc}", file=sys.stderr)
            return EXIT_DIVERGED
        results = [(args.suite, cert)]
    else:
        jobs = [(s, fam, rank) for s in suites]
        if args.jobs > 1:
            build_table(fam, rank)
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                raw = list(pool.map(_suite_job, jobs))
        else:
            raw = [_suite_job(j) for j in jobs]
        for s, _, err in raw:
            if err:
                print(f"closure diverged in suite {s}: {err}", file=sys.stderr)
                return EXIT_DIVERGED
        results = [(s, c) for s, c, _ in raw if c is not None]
    merged = Certificate(args.suite, fam, rank)
    for _, c in results:
        merged.extend(c)
    doc = _document("verify", merged, suite=args.suite, suites_run=[s for s, _ in results])
    if args.format == "json" or args.out:
        _emit(doc, args.out)
    if args.format == "text":
        for c in merged.checks:
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}")
        print(f"{fam}{rank} {args.suite}: {'pass' if merged.overall else 'FAIL'} ({len(merged.checks)} checks)")
    return EXIT_OK if merged.overall else EXIT_FAIL


def cmd_table(args) -> int:
    fam, rank = _config(args)
    try:
        t = build_table(fam, rank, args.route)
    except ClosureDiverged as exc:
        print(f"closure diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    doc = t.to_dict()
    _emit(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="electrical-lie", description="Exact structure tables and certificates for electrical Lie algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--family", required=True, help="A, B, C or D")
        sp.add_argument("--rank", required=True, type=int)
        sp.add_argument("--out", help="write JSON to this path")
        sp.add_argument("--max-iterations", type=int, default=None, help="closure step cap (overrides ELA_ITER_CAP)")

    d = sub.add_parser("dim", help="certify the dimension")
    common(d)
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.set_defaults(func=cmd_dim)

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--format", choices=("text", "json"), default="json")
    v.add_argument("--jobs", type=int, default=1, help="suites run in parallel (with --suite all)")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="dump a structure table as JSON")
    common(t)
    t.add_argument("--route", choices=("auto", "representation", "presentation"), default="auto")
    t.set_defaults(func=cmd_table)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cap = getattr(args, "max_iterations", None)
    saved = os.environ.get("ELA_ITER_CAP")
    if cap is not None:
        # the cap is scoped to this command; cached tables built under it are dropped after
        os.environ["ELA_ITER_CAP"] = str(cap)
        build_table.cache_clear()
    try:
        return args.func(args)
    except (UsageError, Unsupported) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ElectricalLieError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        if cap is not None:
            if saved is None:
                os.environ.pop("ELA_ITER_CAP", None)
            else:
                os.environ["ELA_ITER_CAP"] = saved
            build_table.cache_clear()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
