"""Command line: ``popstar analyze|empirical|corpus``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from . import __version__
from .analysis import AnalysisReport, analyze, check_certificate
from .generators import FAMILIES, corpus_text, family
from .parsing import ParseError, load_certificate, load_problem, parse_certificate, parse_problem
from .rewriting import rc_fit
from .sat.solver import SOLVER_ENV, ExternalSolver, SolverError, default_backend
from .terms import OrderKind

ORDERS = [k.value for k in OrderKind]


def _backend(args):
    return default_backend(args.solver)


def _emit(rep: AnalysisReport, args, out):
    if args.json:
        print(rep.to_json(), file=out)
    elif args.verbose:
        print(rep.details(), file=out)
    else:
        print(rep.summary(), file=out)


def _run_batch(jobs: int, fn, items):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))  # map keeps input order


def _problem_id(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def cmd_analyze(args, out) -> int:
    order = OrderKind(args.order)
    if args.dimacs and len(args.files) > 1 and "{id}" not in args.dimacs:
        raise SystemExit("--dimacs needs an {id} placeholder when several files are given")
    if args.cert and len(args.files) > 1:
        raise SystemExit("--cert applies to a single problem")
    backend = _backend(args)

    def one(path):
        pid = _problem_id(path)
        pf = load_problem(path)
        if args.cert:
            cert = load_certificate(args.cert, pf.trs)
            return check_certificate(pid, pf.trs, cert)
        dim = args.dimacs.replace("{id}", pid) if args.dimacs else None
        return analyze(pid, pf.trs, order, args.verify, backend, dim, args.memo)

    reports = _run_batch(args.jobs, one, args.files)
    for rep in reports:
        _emit(rep, args, out)
    return 0 if all(r.definite for r in reports) else 1


def cmd_empirical(args, out) -> int:
    fam = family(args.family)
    label = args.id or fam.name
    fit = rc_fit(fam.trs(), fam.start, args.n, args.cap, args.n_min, args.abscissa)
    if args.json:
        print(json.dumps({"id": label, "family": fam.name, "slope": fit.slope,
                          "slope_n": fit.slope_n, "abscissa": fit.abscissa,
                          "superpolynomial": fit.superpolynomial, "capped": fit.capped,
                          "n": fit.sizes, "heights": fit.heights}), file=out)
    else:
        print(f"{label} {fam.name} slope={fit.slope:.3f} slope_n={fit.slope_n:.3f} "
              f"abscissa={fit.abscissa} superpolynomial={str(fit.superpolynomial).lower()} "
              f"capped={str(fit.capped).lower()}", file=out)
        if args.verbose:
            for n, x, h in zip(fit.sizes, fit.xs, fit.heights):
                print(f"  n={n} depth={x} height={h}", file=out)
    return 0 if not fit.capped else 1


def load_manifest():
    return json.loads(corpus_text("manifest.json"))


def cmd_corpus(args, out) -> int:
    orders = ORDERS if args.order == "all" else [args.order]
    backend = _backend(args)
    items = [(e, o) for e in load_manifest() for o in orders
             if not args.only or e["id"] in args.only]

    def one(item):
        entry, o = item
        pf = parse_problem(corpus_text(entry["file"]))
        rep = analyze(entry["id"], pf.trs, OrderKind(o), True, backend, None, args.memo)
        return entry, o, rep

    results = _run_batch(args.jobs, one, items)
    ok = True
    for entry, o, rep in results:
        want = entry["expected"][o]
        match = rep.verdict == want
        ok = ok and match and rep.definite
        _emit(rep, args, out)
        if not match:
            print(f"  expected {want}", file=out)
    if args.certs:
        for entry in load_manifest():
            if "cert" not in entry or (args.only and entry["id"] not in args.only):
                continue
            pf = parse_problem(corpus_text(entry["file"]))
            cert = parse_certificate(corpus_text(entry["cert"]), pf.trs)
            rep = check_certificate(entry["id"] + ":cert", pf.trs, cert)
            ok = ok and rep.verdict == "Compatible"
            _emit(rep, args, out)
    print(f"corpus {'ok' if ok else 'FAILED'} ({len(results)} runs)", file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="popstar", description=(
        "Synthesise and check polynomial path order certificates for constructor TRSs."))
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--solver", help=f"external DIMACS solver command (default: ${SOLVER_ENV} or picosat)")
    common.add_argument("--json", action="store_true", help="one JSON object per report")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for batches")
    common.add_argument("--memo", action=argparse.BooleanOptionalAction, default=True,
                        help="share subformulas of repeated comparisons")
    sub = p.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", parents=[common], help="analyse problem files")
    a.add_argument("files", nargs="+")
    a.add_argument("--order", choices=ORDERS, default="popstar")
    a.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    a.add_argument("--dimacs", metavar="PATH", help="write the CNF instance ({id} is replaced)")
    a.add_argument("--cert", metavar="PATH", help="check this certificate instead of synthesising")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("empirical", parents=[common], help="fit derivation heights of a family")
    e.add_argument("id", nargs="?")
    e.add_argument("--family", required=True, help="one of " + ", ".join(FAMILIES))
    e.add_argument("--n", type=int, default=20)
    e.add_argument("--n-min", type=int, default=1)
    e.add_argument("--cap", type=int, default=200000, help="budget of explored terms per start term")
    e.add_argument("--abscissa", choices=["depth", "n"], default="depth")
    e.set_defaults(func=cmd_empirical)

    c = sub.add_parser("corpus", parents=[common], help="run the bundled problems")
    c.add_argument("--order", choices=ORDERS + ["all"], default="all")
    c.add_argument("--only", nargs="*", help="restrict to these problem ids")
    c.add_argument("--certs", action=argparse.BooleanOptionalAction, default=True,
                   help="also check the bundled certificates")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, OSError, SolverError, KeyError) as e:
        print(f"popstar: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
