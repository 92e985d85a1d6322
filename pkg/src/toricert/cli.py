"""Command-line interface: ``toricert build|verify|resolve|hilbert``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .exact import Lattice, vec
from .fan import FanError, resolve_except_distinguished
from .interchange import FormatError, dec_num, enc_num, export_fan, import_fan
from .monoid import hilbert_basis
from .pipeline import PATHS, PipelineError, build_counterexample, verify_certificate, write_certificate
from .polyhedra import Cone

OK, CHECK_FAILED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def parse_vectors(text: str) -> list[tuple]:
    """``"1,0;1,2"`` -> ``[(1, 0), (1, 2)]``; entries may be rationals ``p/q``."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        out.append(vec(dec_num(x.strip()) for x in part.split(",")))
    if not out or len({len(v) for v in out}) != 1:
        raise FormatError(f"cannot parse vector list {text!r}")
    return out


def _cmd_build(args) -> int:
    try:
        cert = build_counterexample(args.dim, depth=args.depth, height=args.height, cap=args.cap,
                                    seed=args.seed, path=args.path)
    except PipelineError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return CHECK_FAILED
    write_certificate(cert, args.out)
    for line in cert.checks.lines():
        print(line)
    return OK


def _cmd_verify(args) -> int:
    report = verify_certificate(args.certificate)
    for line in report.lines():
        print(line)
    for r in report.failures():
        print(f"check failed: {r.name}" + (f": {r.detail}" if r.detail else ""), file=sys.stderr)
    return OK if report.passed else CHECK_FAILED


def _cmd_resolve(args) -> int:
    fan = import_fan(args.fan)
    keep = [int(x) for x in args.keep.split(",") if x.strip()] if args.keep else []
    if keep:
        if len(keep) != 2 or len(set(keep)) != 2 or any(not 0 <= i < len(fan.cones) for i in keep):
            raise FormatError("--keep takes two distinct maximal-cone indices")
        fan = replace(fan, distinguished=(min(keep), max(keep)))
    try:
        out, history = resolve_except_distinguished(fan, cap=args.cap)
    except FanError as exc:
        print(f"FAIL resolution: {exc}", file=sys.stderr)
        return CHECK_FAILED
    export_fan(out, args.out)
    print(f"{len(history)} subdivisions, {len(out.cones)} maximal cones, {len(out.rays)} rays")
    return OK


def _cmd_hilbert(args) -> int:
    gens = parse_vectors(args.cone)
    n = len(gens[0])
    lat = Lattice.from_generators(parse_vectors(args.lattice), n) if args.lattice else None
    c = Cone.from_generators(gens, n)
    if not c.pointed:
        raise FormatError("cone is not pointed")
    for h in hilbert_basis(c, lat):
        print(" ".join(enc_num(x) for x in h))
    return OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toricert", description="Build, resolve and certify simplicial toric fans.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="run the construction and write a certificate")
    b.add_argument("--dim", type=int, required=True)
    b.add_argument("--depth", type=int, default=4)
    b.add_argument("--height", type=int, default=6)
    b.add_argument("--cap", type=int, default=64)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--path", choices=PATHS, default="mirror")
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_build)

    v = sub.add_parser("verify", help="re-check a certificate from its contents")
    v.add_argument("certificate")
    v.set_defaults(func=_cmd_verify)

    r = sub.add_parser("resolve", help="resolve a fan except for two kept cones")
    r.add_argument("fan")
    r.add_argument("--keep", default="")
    r.add_argument("--cap", type=int, default=10000)
    r.add_argument("--out", required=True)
    r.set_defaults(func=_cmd_resolve)

    h = sub.add_parser("hilbert", help="Hilbert basis of a cone over a lattice")
    h.add_argument("--cone", required=True, help='generators, e.g. "1,0;1,2"')
    h.add_argument("--lattice", default="", help="lattice generators (default: the standard lattice)")
    h.set_defaults(func=_cmd_hilbert)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dim", 3) < 3:
        print("toricert: error: --dim must be at least 3", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (FormatError, ValueError) as exc:
        print(f"toricert: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
