"""Command line entry point.

Exit status is 0 when every check of a run agrees with the stored published
values, 1 when some check disagrees and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .dsl import DSLError, IdentityDocument, parse_identities
from .kolesnikov import eliminate_second_op, kp_transform
from .linalg import DEFAULT_PRIME, is_prime
from .repn import parse_partition
from .workflows import RUNS, RunReport, run

log = logging.getLogger("dimalcev")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("-v", "--verbose", action="count", default=0)


def _field_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prime", type=_prime, default=DEFAULT_PRIME, help="modulus for modular runs (default %(default)s)")
    p.add_argument("--rational", action="store_true", help="exact rational arithmetic instead of modular")
    p.add_argument("--force", action="store_true", help="allow rational arithmetic in degree 6")
    p.add_argument("--check-prime", type=_prime, default=None, help="repeat the computation modulo a second prime")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for per-partition work")
    p.add_argument("--checkpoint", default=None, help="directory for per-partition results")
    p.add_argument("--partition", type=_partition, default=None, help="only this partition, e.g. 3,2,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimalcev", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a named computation")
    p.add_argument("name", choices=sorted(RUNS))
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("-k", "--generators", type=int, default=2, help="generators for freedim")
    p.add_argument("--export-matrix", default=None, help="write the block matrix (.txt triples or .csv)")
    _field_options(p)
    _common(p)

    p = sub.add_parser("multiplicity", help="multiplicities of new identities per partition")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--consequences", action="store_true", help="ranks of the known consequences instead")
    _field_options(p)
    _common(p)

    p = sub.add_parser("triple", help="identities of the trilinear operation")
    p.add_argument("--degree", type=int, choices=(3, 5), default=3)
    p.add_argument("--prime", type=_prime, default=DEFAULT_PRIME)
    p.add_argument("--export-matrix", default=None)
    _common(p)

    p = sub.add_parser("kp", help="apply Kolesnikov's algorithm to identities in a file")
    p.add_argument("--input", required=True, help="identity file, '-' for stdin")
    p.add_argument("--eliminate", action="store_true", help="rewrite the second operation through the first")
    _common(p)

    p = sub.add_parser("parse", help="validate an identity file and print it normalised")
    p.add_argument("--input", required=True)
    _common(p)

    p = sub.add_parser("freedim", help="dimensions of small free RAC and Leibniz algebras")
    p.add_argument("-k", "--generators", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    _common(p)

    sub.add_parser("list", help="list the named computations")
    return parser


def _read(path: str) -> IdentityDocument:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_identities(text)


def _emit(report: RunReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_json(), indent=2, default=str))
    else:
        print(report.to_text())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _run_options(args) -> dict:
    opts = {}
    for key in ("degree", "prime", "rational", "force", "jobs", "checkpoint", "partition", "export_matrix"):
        if getattr(args, key, None) is not None:
            opts[key] = getattr(args, key)
    if "export_matrix" in opts:
        opts["export"] = opts.pop("export_matrix")
    if getattr(args, "check_prime", None):
        opts["verify_prime"] = args.check_prime
    if args.rational:
        opts["prime"] = None
    return opts


def _cmd_kp(args) -> int:
    doc = _read(args.input)
    if doc.signature not in (None, "single"):
        raise DSLError("Kolesnikov's algorithm takes identities in one operation M", 1, 1)
    out = kp_transform(doc.polynomials)
    if args.eliminate:
        out = [p for p in eliminate_second_op(out) if not p.is_zero()]
    result = IdentityDocument([(f"kp{i}", p) for i, p in enumerate(out, 1)], None)
    if args.json:
        print(json.dumps({"identities": [p.to_dsl() for p in out], "rendered": [p.render() for p in out]}, indent=2))
    else:
        sys.stdout.write(result.render())
    return EXIT_OK


def _cmd_parse(args) -> int:
    doc = _read(args.input)
    if args.json:
        print(json.dumps({"signature": doc.signature, "identities": {n: p.to_dsl() for n, p in doc}}, indent=2))
    else:
        sys.stdout.write(doc.render())
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(getattr(args, "verbose", 0) + 1, 2),
        format="%(asctime)s %(name)s %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "list":
            for name in RUNS:
                print(name)
            return EXIT_OK
        if args.command == "run":
            opts = _run_options(args)
            if args.name == "freedim":
                opts = {"k": args.generators, "degree": args.degree or 3}
            elif args.name in ("multiplicities", "special-search") and args.degree is None:
                opts["degree"] = 5
            return _emit(run(args.name, **opts), args.json)
        if args.command == "multiplicity":
            opts = _run_options(args)
            name = "special-search" if args.consequences else "multiplicities"
            return _emit(run(name, **opts), args.json)
        if args.command == "triple":
            opts = {"prime": args.prime}
            if args.export_matrix:
                if args.degree == 5:
                    parser.error("--export-matrix is available for degree 3 only")
                opts["export"] = args.export_matrix
            return _emit(run(f"triple{args.degree}", **opts), args.json)
        if args.command == "freedim":
            return _emit(run("freedim", k=args.generators, degree=args.degree), args.json)
        if args.command == "kp":
            return _cmd_kp(args)
        if args.command == "parse":
            return _cmd_parse(args)
    except DSLError as e:
        print(f"dimalcev: {args.input}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        print(f"dimalcev: {e}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
