"""Command-line interface.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 on malformed
input (bad flags, unreadable or ill-formed JSON).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import aiet as aiet_mod
from .iet import Iet, compose, power, random_iet, support
from .rational import NotQRational, ay_sweep, grid_permutation, nearest_q_rational, write_csv, write_svgs
from .relation import Certificate, CertificationError, certify_relation, verify_certificate
from .scalar import encode_scalar, parse_scalar, to_decimal
from .sets import IntervalSet, alpha_q, x_q, y_q

EXIT_OK, EXIT_FAILED, EXIT_MALFORMED = 0, 1, 2


class MalformedInput(Exception):
    pass


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def _load_iet(path: str) -> Iet:
    try:
        return Iet.from_json(_load_json(path))
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


class _Out:
    """Serialise results; ``--decimal`` adds a decimal rendering next to each exact scalar."""

    def __init__(self, decimal: bool):
        self.decimal = decimal

    def scalar(self, x) -> dict:
        enc = encode_scalar(x)
        if self.decimal:
            enc["decimal"] = str(to_decimal(x, 30))
        return enc

    def iet(self, T: Iet) -> dict:
        return {"lengths": [self.scalar(l) for l in T.lengths], "perm": list(T.perm)}

    def points(self, pts) -> list:
        return [self.scalar(p) for p in pts]

    def intervals(self, A: IntervalSet) -> list:
        return [[self.scalar(lo), self.scalar(hi)] for lo, hi in A]

    def emit(self, obj, path: str | None = None) -> None:
        text = json.dumps(obj, indent=2) + "\n"
        if path:
            Path(path).write_text(text)
        else:
            sys.stdout.write(text)


# -- iet ---------------------------------------------------------------------


def cmd_iet_info(args, out: _Out) -> int:
    T = _load_iet(args.file)
    out.emit(
        {
            "iet": out.iet(T),
            "n": T.n,
            "translations": out.points(T.translations),
            "discontinuities": out.points(T.discontinuities),
            "support": out.intervals(support(T)),
            "is_identity": T.is_identity(),
        }
    )
    return EXIT_OK


def cmd_iet_eval(args, out: _Out) -> int:
    T = _load_iet(args.file)
    try:
        x = parse_scalar(args.x)
        y = T(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(str(exc)) from exc
    out.emit({"x": out.scalar(x), "image": out.scalar(y)})
    return EXIT_OK


def cmd_iet_compose(args, out: _Out) -> int:
    out.emit(out.iet(compose(_load_iet(args.first), _load_iet(args.second))))
    return EXIT_OK


def cmd_iet_power(args, out: _Out) -> int:
    out.emit(out.iet(power(_load_iet(args.file), args.m)))
    return EXIT_OK


def cmd_iet_xq(args, out: _Out) -> int:
    S = _load_iet(args.file)
    out.emit(
        {
            "q": args.q,
            "X_q": out.points(x_q(S, args.q)),
            "Y_q": out.points(y_q(S, args.q)),
            "alpha_q": out.scalar(alpha_q(S, args.q)),
        }
    )
    return EXIT_OK


def cmd_iet_random(args, out: _Out) -> int:
    rng = random.Random(args.seed)
    out.emit(out.iet(random_iet(rng, args.n, cubic=args.cubic, denominator=args.denominator)))
    return EXIT_OK


# -- relation ----------------------------------------------------------------


def cmd_relation_certify(args, out: _Out) -> int:
    S, T0 = _load_iet(args.s), _load_iet(args.t0)
    try:
        cert = certify_relation(S, T0, args.q)
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    out.emit(cert.to_json(), args.out)
    print(f"certified: word {cert.word_kind}, k = {cert.k}, {len(cert.word)} blocks", file=sys.stderr)
    return EXIT_OK


def cmd_relation_verify(args, out: _Out) -> int:
    try:
        cert = Certificate.from_json(_load_json(args.file))
    except (ValueError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"{args.file}: {exc}") from exc
    report = verify_certificate(cert)
    out.emit(report)
    failed = [name for name, ok in report.items() if not ok]
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# -- rational ----------------------------------------------------------------


def cmd_rational_nearest(args, out: _Out) -> int:
    S = _load_iet(args.file)
    try:
        T0, delta = nearest_q_rational(S, args.q)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    out.emit({"q": args.q, "T0": out.iet(T0), "delta": out.scalar(delta)})
    return EXIT_OK


def cmd_rational_order(args, out: _Out) -> int:
    T0 = _load_iet(args.file)
    try:
        gp = grid_permutation(T0, args.q)
    except NotQRational as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAILED
    out.emit({"q": args.q, "order": gp.order(), "cycles": [list(c) for c in gp.cycles()]})
    return EXIT_OK


def cmd_ay_sweep(args, out: _Out) -> int:
    if args.qmax < args.qmin:
        raise MalformedInput("--qmax must be at least --qmin")
    try:
        rows = ay_sweep(args.qmin, args.qmax, jobs=args.jobs)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    if args.svg:
        write_svgs(rows, args.svg)
    over = [r.q for r in rows if not r.delta <= Fraction(5, r.q)]
    low = min(rows, key=lambda r: r.bound)
    print(
        f"{len(rows)} rows; min bound {to_decimal(low.bound, 12)} at q = {low.q}; "
        f"rows with bound < 1: {sum(r.bound_lt_1 for r in rows)}",
        file=sys.stderr,
    )
    if over:
        print(f"delta > 5/q for q in {over}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# -- aiet --------------------------------------------------------------------


def _pingpong_json(f, g, V, W, X, Y) -> dict:
    return {
        "f": f.to_json(),
        "g": g.to_json(),
        **{name: [[str(lo), str(hi)] for lo, hi in A] for name, A in zip("VWXY", (V, W, X, Y))},
    }


def cmd_aiet_pingpong(args, out: _Out) -> int:
    if args.standard:
        data = aiet_mod.standard_pingpong_pair()
    else:
        obj = _load_json(args.check)
        try:
            if not isinstance(obj, dict):
                raise ValueError("expected an object with keys f, g, V, W, X, Y")
            f, g = aiet_mod.Aiet.from_json(obj["f"]), aiet_mod.Aiet.from_json(obj["g"])
            sets = [IntervalSet.from_json(obj[k]) for k in "VWXY"]
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise MalformedInput(f"{args.check}: {exc}") from exc
        data = (f, g, *sets)
    report = aiet_mod.pingpong_report(*data)
    result = {"passed": all(report.values()), "checks": report}
    if args.standard:
        result["instance"] = _pingpong_json(*data)
    out.emit(result)
    return EXIT_OK if result["passed"] else EXIT_FAILED


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--decimal", action="store_true", help="add 30-digit decimal renderings of scalars")

    parser = argparse.ArgumentParser(prog="ietgroups", description="Exact interval exchange computations.")
    groups = parser.add_subparsers(dest="group", required=True)

    iet = groups.add_parser("iet", help="IET algebra").add_subparsers(dest="command", required=True)
    p = iet.add_parser("info", parents=[common], help="canonical form, translations, support")
    p.add_argument("file")
    p.set_defaults(func=cmd_iet_info)
    p = iet.add_parser("eval", parents=[common], help="evaluate T at a point")
    p.add_argument("file")
    p.add_argument("x", help='point as "p/q" or a JSON scalar')
    p.set_defaults(func=cmd_iet_eval)
    p = iet.add_parser("compose", parents=[common], help="first o second")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iet_compose)
    p = iet.add_parser("power", parents=[common], help="T^m for any integer m")
    p.add_argument("file")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_iet_power)
    p = iet.add_parser("xq", parents=[common], help="obstruction sets X_q, Y_q and alpha_q")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_iet_xq)
    p = iet.add_parser("random", parents=[common], help="seeded random IET")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cubic", action="store_true", help="lengths in Q(a)")
    p.add_argument("--denominator", type=int, default=None)
    p.set_defaults(func=cmd_iet_random)

    rel = groups.add_parser("relation", help="relation certificates").add_subparsers(dest="command", required=True)
    p = rel.add_parser("certify", parents=[common], help="certify a relation between S and a drift of T0")
    p.add_argument("--s", required=True)
    p.add_argument("--t0", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_relation_certify)
    p = rel.add_parser("verify", parents=[common], help="replay every check of a certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_relation_verify)

    rat = groups.add_parser("rational", help="q-rational IETs").add_subparsers(dest="command", required=True)
    p = rat.add_parser("nearest", parents=[common], help="closest q-rational IET with the same permutation")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_rational_nearest)
    p = rat.add_parser("order", parents=[common], help="order and grid cycles of a q-rational IET")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_rational_order)

    ay = groups.add_parser("ay", help="Arnoux-Yoccoz sweep").add_subparsers(dest="command", required=True)
    p = ay.add_parser("sweep", parents=[common], help="CSV of delta, order and bound per q")
    p.add_argument("--qmin", type=int, default=20)
    p.add_argument("--qmax", type=int, default=2000)
    p.add_argument("--out")
    p.add_argument("--svg", metavar="DIR")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_ay_sweep)

    af = groups.add_parser("aiet", help="affine interval exchanges").add_subparsers(dest="command", required=True)
    p = af.add_parser("pingpong", parents=[common], help="exact ping-pong check")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", metavar="FILE", help="JSON with keys f, g, V, W, X, Y")
    mode.add_argument("--standard", action="store_true", help="check the built-in pair")
    p.set_defaults(func=cmd_aiet_pingpong)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(getattr(args, "decimal", False))
    try:
        return args.func(args, out)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
