"""Command-line front end: ``symdg construct``, ``symdg verify`` and ``symdg minpoly``.

Exit codes: 0 when everything passed, 1 when a claim failed, 2 for usage or
resource errors.  Any long option can be defaulted through an environment
variable ``SYMDG_<OPTION>``, e.g. ``SYMDG_ENUM_BOUND=500000``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .errors import ParseError, ResourceBoundError, SymdgError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "dot", "matrix", "text")
DEFAULT_ENUM_BOUND = 2_000_000
DEFAULT_MAX_ARCS = 10**8
DEFAULT_DOT_LIMIT = 2000

log = logging.getLogger("symdg")


class UsageError(Exception):
    pass


def _env(name: str, default):
    value = os.environ.get(f"SYMDG_{name.upper()}")
    if value is None:
        return default
    if isinstance(default, bool):
        return value.lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        try:
            return int(value)
        except ValueError:
            raise UsageError(f"SYMDG_{name.upper()}={value!r} is not an integer") from None
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return value


def s_list(text: str) -> list[int]:
    values = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, _, hi = part.partition("-")
            values += range(int(lo), int(hi) + 1)
        elif part:
            values.append(int(part))
    if not values:
        raise argparse.ArgumentTypeError("empty list of s values")
    return sorted(set(values))


def write_atomic(path: Path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def matrix_text(digraph) -> str:
    """Integer adjacency matrix in the ``rows cols`` header format read by ``minpoly``."""
    A = digraph.adjacency_array()
    lines = [f"{digraph.n} {digraph.n}"]
    lines += [" ".join("1" if x else "0" for x in row) for row in A]
    return "\n".join(lines) + "\n"


def digraph_text(digraph) -> str:
    lines = [f"{digraph.n} vertices, {digraph.num_arcs()} arcs"]
    for v in range(digraph.n):
        name = digraph.vertex_labels[v] if digraph.vertex_labels else str(v)
        lines.append(f"{v} [{name}] -> {' '.join(map(str, digraph.out_adj[v]))}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=_env("verbose", 0))
    sub = parser.add_subparsers(dest="command", required=True)

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--enum-bound", type=positive_int, default=_env("enum_bound", DEFAULT_ENUM_BOUND))
    bounds.add_argument("--max-arcs", type=positive_int, default=_env("max_arcs", DEFAULT_MAX_ARCS))

    con = sub.add_parser("construct", parents=[bounds], help="build a digraph and export it")
    con.add_argument("family", choices=("gamma", "sigma"))
    con.add_argument("--s", type=int, default=_env("s", None))
    con.add_argument("--power", type=positive_int, default=_env("power", 1))
    con.add_argument("--format", choices=FORMATS, default=_env("format", "json"))
    con.add_argument("--out", type=Path, default=_env("out", None), help="output file (stdout if omitted)")
    con.add_argument("--matrix-out", type=Path, default=None, help="also write the adjacency matrix here")
    con.add_argument("--manifest", type=Path, default=None, help="manifest path (default: <out>.manifest.json)")
    con.add_argument("--dot-limit", type=positive_int, default=_env("dot_limit", DEFAULT_DOT_LIMIT))
    con.add_argument("--labels", action="store_true", help="include vertex words in DOT output")

    ver = sub.add_parser("verify", parents=[bounds], help="run verification suites")
    ver.add_argument("suite", choices=("all", "gamma", "sigma", "tensor", "kronecker"))
    ver.add_argument("--s", type=s_list, default=s_list(str(_env("s", "2,3,4,5"))))
    ver.add_argument("--power", type=positive_int, default=_env("power", 2), help="largest tensor power")
    ver.add_argument("--report", type=Path, default=_env("report", None), help="write the JSON report here")
    ver.add_argument("--format", choices=("text", "json"), default=_env("report_format", "text"))
    ver.add_argument("--jobs", type=positive_int, default=_env("jobs", 1))
    ver.add_argument("--inject-fault", action="store_true", default=_env("inject_fault", False), help=argparse.SUPPRESS)

    mp = sub.add_parser("minpoly", help="minimal polynomial and diagonalizability of a matrix file")
    mp.add_argument("file", type=Path)
    return parser


def _construct(args) -> int:
    from .construct import build_gamma, build_sigma
    from .digraph import tensor_power

    if args.family == "gamma":
        if args.s is None:
            raise UsageError("construct gamma requires --s")
        if args.s < 2:
            raise UsageError(f"--s must be at least 2, got {args.s}")
        inst = build_gamma(args.s, enumeration_bound=args.enum_bound)
    else:
        if args.s is not None:
            raise UsageError("--s applies only to gamma")
        inst = build_sigma(enumeration_bound=args.enum_bound)
    base = inst.digraph
    arcs = base.num_arcs() ** args.power
    if arcs > args.max_arcs:
        raise ResourceBoundError(f"power {args.power} has {arcs} arcs, above --max-arcs {args.max_arcs}")
    digraph = tensor_power(base, args.power)

    if args.format == "json":
        body = digraph.dumps() + "\n"
    elif args.format == "dot":
        body = digraph.to_dot(with_labels=args.labels, max_vertices=args.dot_limit)
    elif args.format == "matrix":
        body = matrix_text(digraph)
    else:
        body = digraph_text(digraph)

    manifest = {**inst.manifest(), "power": args.power, "power_vertices": digraph.n, "format": args.format}
    manifest["power_valency"] = digraph.valency()
    manifest["toolkit_version"] = __version__
    if args.out is None:
        sys.stdout.write(body)
    else:
        write_atomic(args.out, body)
        manifest_path = args.manifest or args.out.with_name(args.out.name + ".manifest.json")
        write_atomic(manifest_path, json.dumps(manifest, indent=2, ensure_ascii=False) + "\n")
        log.info("wrote %s and %s", args.out, manifest_path)
    if args.matrix_out is not None:
        write_atomic(args.matrix_out, matrix_text(digraph))
    return EXIT_OK


def _verify(args) -> int:
    from .verify import SUITES, verify

    if any(s < 2 for s in args.s):
        raise UsageError(f"s values must be at least 2, got {args.s}")
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    report = verify(
        suites,
        s_values=args.s,
        n_max=args.power,
        inject_fault=args.inject_fault,
        jobs=args.jobs,
        enumeration_bound=args.enum_bound,
        max_arcs=args.max_arcs,
    )
    if args.report is not None:
        write_atomic(args.report, report.dumps() + "\n")
    sys.stdout.write(report.dumps() + "\n" if args.format == "json" else report.to_text())
    failed = report.failed_ids()
    if failed:
        print("failed claims: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def read_matrix(path: Path):
    from .exact import RationalMatrix

    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("["):
        try:
            rows = json.loads(text)
            return RationalMatrix([[_fraction(x) for x in row] for row in rows])
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise ParseError(f"bad JSON matrix: {exc}") from None
    return RationalMatrix.from_text(text)


def _fraction(x):
    from fractions import Fraction

    if isinstance(x, float):
        raise ValueError("floating-point entries are not exact; use integers or 'p/q' strings")
    return Fraction(x)


def _minpoly(args) -> int:
    from .exact import is_squarefree, minimal_polynomial

    A = read_matrix(args.file)
    if not A.is_square():
        raise UsageError(f"matrix is {A.rows}x{A.cols}, not square")
    m = minimal_polynomial(A)
    print(m)
    print("coefficients (ascending): " + " ".join(str(c) for c in m.coeffs))
    print("DIAGONALIZABLE" if is_squarefree(m) else "NOT DIAGONALIZABLE")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"symdg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s: %(message)s")
    handler = {"construct": _construct, "verify": _verify, "minpoly": _minpoly}[args.command]
    try:
        return handler(args)
    except (UsageError, ParseError, ResourceBoundError, SymdgError, OSError, ValueError) as exc:
        print(f"symdg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
