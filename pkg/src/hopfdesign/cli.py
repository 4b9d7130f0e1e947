"""Command line: generate, lift and verify designs.

    hopfdesign gen s2-antipodal | hopfdesign lift --gon-size 3 | hopfdesign verify --max-degree 3

Exit codes: 0 ok, 1 verification below --expect-strength, 2 usage error,
3 interval solver did not converge, 4 unreadable design file, 5 point off
the sphere.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import designfile
from .errors import NoConvergence, OffSphere, ParseError
from .generators import antipodal_pair, interval_design, product_design_s2, regular_gon
from .hopf import Section, pullback_monomial, pushforward_monomial
from .lift import LiftConfig, cardinality_report, lift_design
from .sphere import MonomialS2, MonomialS3
from .verify import DEFAULT_TOL, brute_force_certify, certify

SEED_ENV = "HOPFDESIGN_SEED"

EXIT_OK = 0
EXIT_WEAK = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_PARSE = 4
EXIT_OFF_SPHERE = 5


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _pos_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _pos_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _threshold(text: str) -> float:
    value = float(text)
    if not -1 < value < 1:
        raise argparse.ArgumentTypeError("chart threshold must lie in (-1, 1)")
    return value


def _default_seed() -> int | None:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw not in (None, "") else None


def _read(path: str | None, renormalize: bool, sphere: str | None = None):
    if path in (None, "-"):
        return designfile.read_design(sys.stdin, sphere=sphere, renormalize=renormalize)
    return designfile.read_design(path, sphere=sphere, renormalize=renormalize)


def _write(design, path: str | None) -> None:
    if path in (None, "-"):
        designfile.write_design(design, sys.stdout)
    else:
        designfile.write_design(design, path)


def cmd_gen(args, parser) -> int:
    if args.kind == "s1-gon":
        design = regular_gon(args.n, args.phase)
    elif args.kind == "s2-antipodal":
        design = antipodal_pair()
    else:
        seed = args.seed if args.seed is not None else _default_seed()
        if args.phases == "random" and seed is None:
            parser.error(f"--phases random needs --seed or ${SEED_ENV}")
        rule = interval_design(args.t, args.nodes) if args.nodes else None
        design = product_design_s2(args.t, rule, args.phases,
                                   seed if args.phases == "random" else None,
                                   weighted_fallback=args.weighted_fallback)
    _write(design, args.output)
    return EXIT_OK


def cmd_lift(args, parser) -> int:
    if args.gon_size is None and args.t is None:
        parser.error("lift needs --gon-size or --t")
    t = args.t if args.t is not None else (args.gon_size - 1) // 2
    gon_size = args.gon_size if args.gon_size is not None else 2 * t + 1
    seed = args.seed if args.seed is not None else _default_seed()
    if args.phases == "random" and seed is None:
        parser.error(f"--phases random needs --seed or ${SEED_ENV}")
    if args.phases == "explicit" and not args.phase_list:
        parser.error("--phases explicit needs --phase-list")
    base = _read(args.input, args.renormalize, sphere="s2")
    cfg = LiftConfig(
        gon_size=gon_size,
        phase_mode=args.phases,
        seed=seed if args.phases == "random" else None,
        phases=tuple(args.phase_list or ()),
        section=Section(args.threshold),
        merge=args.merge,
    )
    try:
        lifted = lift_design(base, cfg)
    except ValueError as exc:
        parser.error(str(exc))
    _write(lifted, args.output)
    report = cardinality_report(t, lifted)
    stream = sys.stderr if args.output in (None, "-") else sys.stdout
    print(f"lifted {len(base)} base points x {gon_size}-gon (t = {t})", file=stream)
    print(report, file=stream)
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    design = _read(args.input, args.renormalize)
    if args.brute_force:
        try:
            report = brute_force_certify(design, args.max_degree, args.tol)
        except ValueError as exc:
            parser.error(str(exc))
    else:
        report = certify(design, args.max_degree, args.tol)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print(f"{len(design)} points on {design.sphere}, "
              f"{'equal' if design.equal_weight else 'non-equal'} weights")
        print(report)
    if args.expect_strength is not None and report.certified_strength < args.expect_strength:
        return EXIT_WEAK
    return EXIT_OK


def cmd_pushforward(args, parser) -> int:
    poly = pushforward_monomial(MonomialS3(*args.exponents))
    print(poly.reduced() if args.reduced else poly)
    return EXIT_OK


def cmd_pullback(args, parser) -> int:
    print(pullback_monomial(MonomialS2(*args.exponents)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfdesign",
        description="Spherical designs on S^3 lifted from S^2 through the Hopf map.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an input design")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    gon = gen_sub.add_parser("s1-gon", help="regular n-gon on S^1")
    gon.add_argument("--n", type=_pos_int, required=True)
    gon.add_argument("--phase", type=float, default=0.0)
    gen_sub.add_parser("s2-antipodal", help="the antipodal 1-design {(+-1, 0)}")
    prod = gen_sub.add_parser("s2-product", help="latitude-gon t-design on S^2")
    prod.add_argument("--t", type=_nonneg_int, required=True)
    prod.add_argument("--nodes", type=_pos_int, default=None,
                      help="starting number of latitudes for the interval solver")
    prod.add_argument("--phases", choices=("zero", "random"), default="zero")
    prod.add_argument("--seed", type=int, default=None)
    prod.add_argument("--weighted-fallback", action="store_true",
                      help="use weighted Gauss-Legendre latitudes if the solver fails")
    for p in (gon, gen_sub.choices["s2-antipodal"], prod):
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")
        p.set_defaults(handler=cmd_gen)

    lift = sub.add_parser("lift", help="lift an S^2 design to S^3")
    lift.add_argument("--input", "-i", default=None, help="S^2 design file (default stdin)")
    lift.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    lift.add_argument("--t", type=_nonneg_int, default=None,
                      help="strength of the input design (default (gon_size-1)//2)")
    lift.add_argument("--gon-size", type=_pos_int, default=None,
                      help="points per fiber (default 2t+1)")
    lift.add_argument("--phases", choices=("zero", "random", "explicit"), default="zero")
    lift.add_argument("--phase-list", type=float, nargs="+", default=None,
                      help="one gon rotation per input point, for --phases explicit")
    lift.add_argument("--seed", type=int, default=None)
    lift.add_argument("--threshold", type=_threshold, default=0.0,
                      help="chart switch height for the section (default 0)")
    lift.add_argument("--merge", action="store_true", help="merge coincident points")
    lift.add_argument("--renormalize", action="store_true",
                      help="project input points onto the sphere instead of rejecting them")
    lift.set_defaults(handler=cmd_lift)

    ver = sub.add_parser("verify", help="certify the design strength of a point set")
    ver.add_argument("--input", "-i", default=None, help="design file (default stdin)")
    ver.add_argument("--max-degree", type=_nonneg_int, required=True)
    ver.add_argument("--tol", type=_pos_float, default=DEFAULT_TOL)
    ver.add_argument("--expect-strength", type=_nonneg_int, default=None)
    ver.add_argument("--json", action="store_true", help="machine-readable report")
    ver.add_argument("--brute-force", action="store_true",
                     help="use numeric quadrature moments (degree <= 6, <= 1000 points)")
    ver.add_argument("--renormalize", action="store_true")
    ver.set_defaults(handler=cmd_verify)

    push = sub.add_parser("pushforward", help="fiber average of a^i ā^j b^k b̄^l")
    push.add_argument("exponents", type=_nonneg_int, nargs=4, metavar="N")
    push.add_argument("--reduced", action="store_true",
                      help="rewrite η·η̄ as 1 - ξ^2")
    push.set_defaults(handler=cmd_pushforward)

    pull = sub.add_parser("pullback", help="ξ^p η^q η̄^r composed with the Hopf map")
    pull.add_argument("exponents", type=_nonneg_int, nargs=3, metavar="N")
    pull.set_defaults(handler=cmd_pullback)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, parser)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OffSphere as exc:
        print(f"error: {exc} (use --renormalize to project)", file=sys.stderr)
        return EXIT_OFF_SPHERE


if __name__ == "__main__":
    sys.exit(main())
