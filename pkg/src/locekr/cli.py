"""Command line front end.

Exit codes: 0 success, 1 usage or validation error, 2 search budget
exhausted, 3 an inequality that must hold was found violated.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bounds, hilton, search
from .constructions import SizeMismatch, build, looks_like_spec, parse_spec
from .exact import render
from .phi import phi_report, render_report
from .setfamily import FamilyFormatError, parse_family, serialize_family

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _range(text: str) -> range:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="locekr", description="Localized Erdos-Ko-Rado sums over uniform families.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("phi", help="evaluate the localized sum of a family")
    s.add_argument("--family", required=True, help="constructor spec (e.g. jt:5,3,1) or family file")

    s = sub.add_parser("construct", help="build a named family")
    s.add_argument("--spec", required=True, help="star:n,k,c jt:n,k,t h1:n,k,t h2:n,k,t ak:n,k,t,r full:n,k")
    s.add_argument("--out", help="write the family file here instead of stdout")

    s = sub.add_parser("scan", help="tabulate J_t(n,k) against the sharpness bound")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--t", type=_positive, required=True)
    s.add_argument("--n", type=_range, required=True, help="inclusive range A:B")

    s = sub.add_parser("search", help="maximize the sum over all families in C([n],k)")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--mode", choices=["naive", "canonical"], default="canonical")
    s.add_argument("--budget", type=_positive, help="node budget for canonical search")
    s.add_argument("--threads", type=_positive, default=1)

    s = sub.add_parser("conjecture", help="probe the conjectured threshold by exhaustive search")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--budget", type=_positive)
    s.add_argument("--threads", type=_positive, default=1)

    s = sub.add_parser("hilton", help="check a multi-threshold Hilton instance")
    s.add_argument("--file", required=True)

    s = sub.add_parser("thresholds", help="print the closed-form thresholds for k")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--D", type=_nonneg, default=0)
    return p


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_family(arg: str):
    if looks_like_spec(arg) and not os.path.exists(arg):
        return build(parse_spec(arg))
    return parse_family(_read(arg))


def cmd_phi(args, out) -> int:
    F = _load_family(args.family)
    report = phi_report(F)
    out.write(render_report(report))
    if F.n >= bounds.cubic_threshold(F.k) and report.phi > 1:
        out.write("check\tFAILED: sum exceeds 1 above the cubic threshold\n")
        return EXIT_FAILED
    return EXIT_OK


def cmd_construct(args, out) -> int:
    spec = parse_spec(args.spec)
    text = serialize_family(build(spec))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_scan(args, out) -> int:
    if not 1 <= args.t <= args.k - 2:
        raise UsageError(f"scan needs 1 <= t <= k-2, got k={args.k} t={args.t}")
    if args.n.start <= args.k:
        raise UsageError(f"scan needs n > k, got n from {args.n.start} with k={args.k}")
    rows = search.scan_counterexamples(args.k, args.t, args.n)
    out.write(search.render_scan(rows))
    if any(r.phi < r.bound for r in rows):
        out.write("# FAILED: a value fell below the sharpness lower bound\n")
        return EXIT_FAILED
    return EXIT_OK


def _search_log(out):
    def log(nodes, phi, family):
        out.write(search.render_incumbent(nodes, phi, family) + "\n")
    return log


def _validate_search(n: int, k: int, mode: str = "canonical"):
    if not k <= n <= 64:
        raise UsageError(f"need k <= n <= 64, got n={n} k={k}")
    if mode == "naive" and search.binomial(n, k) > search.NAIVE_LIMIT:
        raise UsageError(f"naive mode needs C(n,k) <= {search.NAIVE_LIMIT}, "
                         f"C({n},{k}) = {search.binomial(n, k)}")


def cmd_search(args, out) -> int:
    _validate_search(args.n, args.k, args.mode)
    if args.threads > 1:
        out.write("# note: with several workers incumbent lines may appear out of order; "
                  "final results are unaffected\n")
    res = search.run_search(args.n, args.k, mode=args.mode, budget=args.budget,
                            threads=args.threads, log=_search_log(out))
    out.write(search.render_result(res))
    if args.n >= bounds.cubic_threshold(args.k) and res.max_phi > 1:
        out.write("check\tFAILED: maximum exceeds 1 above the cubic threshold\n")
        return EXIT_FAILED
    return EXIT_OK if res.complete else EXIT_BUDGET


def cmd_conjecture(args, out) -> int:
    _validate_search(args.n, args.k)
    v = search.verify_conjecture(args.n, args.k, budget=args.budget, threads=args.threads,
                                 log=_search_log(out))
    out.write(search.render_verdict(v))
    if args.n >= bounds.cubic_threshold(args.k) and v.status == "REFUTED":
        return EXIT_FAILED
    return EXIT_BUDGET if v.status == "INCONCLUSIVE" else EXIT_OK


def cmd_hilton(args, out) -> int:
    inst = hilton.parse_instance(_read(args.file))
    v = hilton.verify_hilton(inst)
    out.write(hilton.render_verdict(inst, v))
    return EXIT_FAILED if v.failed else EXIT_OK


def cmd_thresholds(args, out) -> int:
    out.write(bounds.render_thresholds(bounds.thresholds(args.k, args.D)))
    return EXIT_OK


COMMANDS = {
    "phi": cmd_phi,
    "construct": cmd_construct,
    "scan": cmd_scan,
    "search": cmd_search,
    "conjecture": cmd_conjecture,
    "hilton": cmd_hilton,
    "thresholds": cmd_thresholds,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except SizeMismatch as e:
        print(f"locekr: FAILED: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, FamilyFormatError, search.SearchRefused, ValueError) as e:
        print(f"locekr: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
