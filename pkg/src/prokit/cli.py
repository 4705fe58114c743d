"""``prokit`` command line.

Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
Output depends only on the arguments (including ``--seed``), never on the clock.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import harness
from .bits import BitSource
from .errors import BitSourceDefective, IterationCapExceeded
from .expander import see_bound, see_std
from .expr import build_pro, parse_pro_expr
from .gf import (count_irreducible, enum_monic_poly, find_irreducible_det, parse_poly,
                 rabin_test, render_poly, sample_irreducible)
from .pro import sample_pro
from .spectral import DENSE_CAP, SLACK, cheeger_check, format_report, lambda_a
from .streamalg import (Stream, estimate_basic, estimate_mean, estimate_median_expander,
                        estimator_pro, f2_exact)

BRUTE_CAP = 2**20


class UsageError(Exception):
    pass


def _emit(lines):
    for line in lines:
        sys.stdout.write(line + "\n")


def format_estimate(x: Fraction) -> str:
    """Integers print exactly; other values as the shortest round-tripping decimal."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else repr(float(x))


# ---------------------------------------------------------------------------
# gf


def cmd_gf_find(args):
    if args.random:
        f, _ = sample_irreducible(args.p, args.deg, BitSource(args.seed))
    else:
        f = find_irreducible_det(args.p, args.deg)
    _emit([render_poly(f)])
    return 0


def cmd_gf_count(args):
    space = args.p ** args.deg
    if args.brute_check and space > BRUTE_CAP:
        raise UsageError(f"brute-force check over {space} polynomials exceeds {BRUTE_CAP}")
    count = count_irreducible(args.p, args.deg)
    _emit([str(count)])
    if not args.brute_check:
        return 0
    brute = sum(rabin_test(args.p, enum_monic_poly(args.p, args.deg, i)) for i in range(space))
    ok = brute == count
    _emit(format_report([("brute", brute), ("check", ok)]))
    return 0 if ok else 1


def cmd_gf_rabin(args):
    f = parse_poly(args.p, args.poly)
    _emit(["irreducible" if rabin_test(args.p, f) else "reducible"])
    return 0


# ---------------------------------------------------------------------------
# pro


def cmd_pro_sample(args):
    bits = BitSource(args.seed)
    P = build_pro(parse_pro_expr(args.spec), bits)
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    _emit(harness.render_element(sample_pro(P, bits)) for _ in range(args.count))
    return 0


def cmd_pro_dist(args):
    P = build_pro(parse_pro_expr(args.spec), BitSource(args.seed))
    _emit(harness.exhaustive_dist(P, args.cap).tsv_lines())
    return 0


# ---------------------------------------------------------------------------
# expander


def cmd_expander_certify(args):
    if args.n > args.max_dim:
        raise UsageError(f"--n {args.n} exceeds --max-dim {args.max_dim}")
    if args.lam is None:
        G, k = see_std(args.n), 1
    else:
        G, k = see_bound(args.n, args.lam)
    la = lambda_a(G)
    ok = la <= G.claimed_lambda + SLACK and (args.lam is None or la <= args.lam + SLACK)
    _emit(format_report([("n", G.vertex_count), ("degree", G.degree), ("power", k),
                         ("lambda_a", la), ("claimed", G.claimed_lambda), ("pass", ok)]))
    return 0 if ok else 1


def cmd_expander_cheeger(args):
    report = cheeger_check(see_std(args.n))
    _emit(report.lines())
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# f2


def _read_stream(args) -> Stream:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    return Stream.from_text(text, args.n)


def cmd_f2(args):
    stream = _read_stream(args)
    bits = BitSource(args.seed)
    if args.method == "exact":
        value = Fraction(f2_exact(stream))
    elif args.method == "basic":
        value = estimate_basic(stream, bits, rand_field=args.rand_field)
    elif args.method == "mean":
        value = estimate_mean(stream, bits, eps=args.eps, s=args.s, mode=args.mode,
                              rand_field=args.rand_field)
    else:
        value = estimate_median_expander(stream, bits, eps=args.eps, delta=args.delta, s=args.s,
                                         t=args.t, rand_field=args.rand_field)
    _emit([format_estimate(value)])
    return 0


# ---------------------------------------------------------------------------
# verify


def _hash_configs(args):
    if args.k is None and args.n is None and args.inner is None:
        return list(harness.HASH_BATTERY)
    if None in (args.k, args.n, args.inner):
        raise UsageError("give all of --k, --n and --inner, or none for the standard battery")
    return [(args.k, args.n, build_pro(parse_pro_expr(args.inner), BitSource(args.seed)))]


def _verify_k_indep(args):
    return [harness.check_k_indep(k, n, inner) for k, n, inner in _hash_configs(args)]


def _verify_component(args):
    out = []
    for k, n, inner in _hash_configs(args):
        points = range(n) if getattr(args, "i", None) is None else [args.i]
        out += [harness.check_component(k, n, inner, i) for i in points]
    return out


def _verify_bienayme(args):
    out = [harness.check_bienayme(k, n, inner) for k, n, inner in _hash_configs(args)]
    if getattr(args, "k", None) is None:
        basic = estimator_pro(Stream(2, (0, 1)), "basic")
        out += [harness.check_bienayme(2, s, basic) for s in (2, 3, 4)]
    return out


def _verify_chernoff(args):
    ns = [args.n] if getattr(args, "n", None) is not None else [2, 4, 6]
    ls = [args.l] if getattr(args, "l", None) is not None else [2, 3, 4, 5]
    lam = harness.WALK_LAMBDA if getattr(args, "lam", None) is None else args.lam
    return [harness.check_walk_chernoff(n, l, lam) for n in ns for l in ls]


def cmd_verify(args):
    suites = {"k-indep": _verify_k_indep, "component": _verify_component,
              "bienayme": _verify_bienayme, "chernoff": _verify_chernoff}
    if args.suite == "all":
        plain = argparse.Namespace(seed=args.seed, k=None, n=None, inner=None, i=None, l=None,
                                   lam=None)
        results = [r for fn in suites.values() for r in fn(plain)]
    else:
        results = suites[args.suite](args)
    ok = True
    for r in results:
        _emit(r.lines())
        ok &= r.passed
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _open_unit(text: str) -> float:
    v = float(_fraction(text))
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1): {text!r}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="bit source seed (default 0)")

    parser = argparse.ArgumentParser(prog="prokit", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    gf = top.add_parser("gf", help="finite field utilities").add_subparsers(dest="cmd",
                                                                               required=True)
    p = gf.add_parser("find-irreducible", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--random", action="store_true", help="rejection-sample instead of searching")
    p.set_defaults(func=cmd_gf_find)
    p = gf.add_parser("count-irreducible", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--brute-check", action="store_true")
    p.set_defaults(func=cmd_gf_count)
    p = gf.add_parser("rabin-test", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--poly", required=True, help='monic polynomial such as "X^2+X+1"')
    p.set_defaults(func=cmd_gf_rabin)

    pro = top.add_parser("pro", help="pseudorandom object expressions").add_subparsers(
        dest="cmd", required=True)
    p = pro.add_parser("sample", parents=[common])
    p.add_argument("--spec", required=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_pro_sample)
    p = pro.add_parser("dist", parents=[common])
    p.add_argument("--spec", required=True)
    p.add_argument("--cap", type=int, default=harness.DEFAULT_CAP)
    p.set_defaults(func=cmd_pro_dist)

    ex = top.add_parser("expander", help="expander certification").add_subparsers(
        dest="cmd", required=True)
    p = ex.add_parser("certify", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_open_unit)
    p.add_argument("--max-dim", type=int, default=DENSE_CAP)
    p.set_defaults(func=cmd_expander_certify)
    p = ex.add_parser("cheeger", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_expander_cheeger)

    f2 = top.add_parser("f2", help="second frequency moment of a stream file")
    f2.add_argument("method", choices=["exact", "basic", "mean", "median"])
    f2.add_argument("--seed", type=_seed, default=0, help="bit source seed (default 0)")
    f2.add_argument("--file", required=True, help='whitespace-separated naturals ("-" for stdin)')
    f2.add_argument("--n", type=int, required=True, help="universe size")
    f2.add_argument("--eps", type=float)
    f2.add_argument("--delta", type=_open_unit)
    f2.add_argument("--s", type=int)
    f2.add_argument("--t", type=int)
    f2.add_argument("--mode", choices=["independent", "hashed"], default="hashed")
    f2.add_argument("--rand-field", action="store_true")
    f2.set_defaults(func=cmd_f2)

    ver = top.add_parser("verify", help="exhaustive verification suites")
    ver.add_argument("suite", choices=["k-indep", "component", "chernoff", "bienayme", "all"])
    ver.add_argument("--seed", type=_seed, default=0, help="bit source seed (default 0)")
    ver.add_argument("--k", type=int, help="hash family independence")
    ver.add_argument("--n", type=int, help="hash domain size, or walk inner size for chernoff")
    ver.add_argument("--inner", help="inner object expression")
    ver.add_argument("--i", type=int, help="single component to check")
    ver.add_argument("--l", type=int, help="walk length (chernoff)")
    ver.add_argument("--lambda", dest="lam", type=_fraction, help="walk spectral bound")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (IterationCapExceeded, BitSourceDefective) as exc:
        print(f"prokit: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, OSError, IndexError) as exc:
        print(f"prokit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
