"""Command-line front end: ``hopfmi <command> [options] EXPR``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
input errors.
"""
import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from hopfmi import __version__
from hopfmi.bseries import bseries_truncated, parse_field
from hopfmi.errors import HopfMIError
from hopfmi.fertility import jmath, load_fiber_cache, phi, save_fiber_cache
from hopfmi.forests import (
    antipode_bck,
    bck_cuts,
    coproduct_bck,
    enumerate_forests,
    enumerate_trees,
    gl_forest,
    guin_oudom_forest,
)
from hopfmi.linear import LinComb, bilinear_extend
from hopfmi.lot import Lbar_lin, antipode_lot, coproduct_lot, gl_bags, go_bags
from hopfmi.multiindex import dbar_pow, mi_admissible_cuts, weight_minus_one_monomials
from hopfmi.textio import (
    dumps,
    format_key,
    format_lincomb,
    format_rational,
    infer_sort,
    parse,
    parse_key,
)
from hopfmi.verify import ALL_IDENTITIES, verify_identity

log = logging.getLogger("hopfmi")


class UsageError(Exception):
    pass


def _alphabet(text):
    letters = tuple(sorted({a.strip() for a in text.split(",") if a.strip()}))
    if not letters or not all(a.isidentifier() for a in letters):
        raise argparse.ArgumentTypeError(f"invalid alphabet {text!r}")
    return letters


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _common(defaults):
    """Global flags; sub-parsers repeat them with suppressed defaults so they work anywhere."""
    kw = (lambda v: {"default": v}) if defaults else (lambda v: {"default": argparse.SUPPRESS})
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alphabet", type=_alphabet, help="decoration alphabet, e.g. a,b", **kw(("a",)))
    p.add_argument("--format", choices=("text", "json"), help="output format", **kw("text"))
    p.add_argument("--cache", help="fiber cache file (default: $HOPFMI_CACHE)", **kw(os.environ.get("HOPFMI_CACHE")))
    p.add_argument("--seed", type=int, help="seed for randomized checks", **kw(0))
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hopfmi",
        description="Exact computations in the Hopf algebras of multi-indices and of rooted forests.",
        parents=[_common(True)],
    )
    parser.add_argument("--version", action="version", version=f"hopfmi {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common(False)]

    p = sub.add_parser("coproduct", parents=common, help="coproduct of a bag or forest expression")
    p.add_argument("--algebra", choices=("lot", "bck"), required=True)
    p.add_argument("--order", type=_positive, default=2, help="number of tensor legs")
    p.add_argument("expr")

    p = sub.add_parser("product", parents=common, help="products of two expressions")
    p.add_argument("--op", choices=("gl", "graft", "odot"), required=True)
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("embed", parents=common, help="the embedding of bags into forests")
    p.add_argument("expr")

    p = sub.add_parser("phi", parents=common, help="fertility map of a forest expression")
    p.add_argument("expr")

    p = sub.add_parser("antipode", parents=common, help="antipode of a bag or forest expression")
    p.add_argument("expr")

    p = sub.add_parser("lbar", parents=common, help="transpose of the mock-cocycle L^a")
    p.add_argument("--decoration", required=True)
    p.add_argument("expr")

    p = sub.add_parser("cuts", parents=common, help="admissible cuts of a monomial or forest")
    p.add_argument("--algebra", choices=("lot", "bck"), required=True)
    p.add_argument("expr")

    p = sub.add_parser("enumerate", parents=common, help="list trees, forests or monomials")
    p.add_argument("--what", choices=("trees", "forests", "monomials"), required=True)
    p.add_argument("--degree", type=_positive, required=True)

    p = sub.add_parser("bseries", parents=common, help="truncated multi-index B-series")
    p.add_argument("--alpha", required=True, help="JSON file: monomial -> rational, optional \"default\"")
    p.add_argument("--field", required=True, help='e.g. "y^2" or "a=y^2;b=1+y"')
    p.add_argument("--degree", type=_positive, required=True)

    p = sub.add_parser("verify", parents=common, help="check named identities")
    p.add_argument("--identity", choices=ALL_IDENTITIES + ("all",), required=True)
    p.add_argument("--degree", type=_positive, required=True)
    return parser


# -- commands ---------------------------------------------------------------------------


def _emit(args, value, sort):
    print(dumps(value, sort, args.alphabet, args.format))
    return 0


def _show(args):
    return len(args.alphabet) > 1


def cmd_coproduct(args):
    sort = "bag" if args.algebra == "lot" else "forest"
    x = parse(args.expr, sort, args.alphabet)
    delta = coproduct_lot if args.algebra == "lot" else coproduct_bck
    out = delta(x, args.order)
    if args.order == 1:
        out = out.map_keys(lambda k: k[0])
    return _emit(args, out, sort)


def cmd_product(args):
    sort = infer_sort(args.left + " " + args.right)
    x = parse(args.left, sort, args.alphabet)
    y = parse(args.right, sort, args.alphabet)
    if args.op == "odot":
        out = bilinear_extend(lambda a, b: LinComb.basis(a.odot(b) if sort == "bag" else a.mul(b)), x, y)
    elif args.op == "gl":
        out = bilinear_extend(gl_bags if sort == "bag" else gl_forest, x, y)
    else:
        out = bilinear_extend(go_bags if sort == "bag" else guin_oudom_forest, x, y)
    return _emit(args, out, sort)


def cmd_embed(args):
    return _emit(args, jmath(parse(args.expr, "bag", args.alphabet)), "forest")


def cmd_phi(args):
    return _emit(args, parse(args.expr, "forest", args.alphabet).map_keys(phi), "bag")


def cmd_antipode(args):
    sort = infer_sort(args.expr)
    x = parse(args.expr, sort, args.alphabet)
    out = antipode_lot(x) if sort == "bag" else antipode_bck(x)
    return _emit(args, out, sort)


def cmd_lbar(args):
    if args.decoration not in args.alphabet:
        raise UsageError(f"--decoration {args.decoration} is not in the alphabet")
    return _emit(args, Lbar_lin(parse(args.expr, "bag", args.alphabet), args.decoration), "bag")


def cmd_cuts(args):
    show = _show(args)
    records = []
    if args.algebra == "lot":
        k = parse_key(args.expr, "multiindex", args.alphabet)
        for cut in mi_admissible_cuts(k):
            if cut.is_full:
                right = "1"
            else:
                image = dbar_pow(cut.remainder, cut.r)
                right = format_lincomb(image, show)
                if len(image) > 1:
                    right = f"({right})"
            records.append(
                {
                    "multiplicity": cut.multiplicity,
                    "r": cut.r,
                    "pruning": format_key(cut.bag, show),
                    "remainder": format_key(cut.remainder, show),
                    "trunk": right,
                }
            )
    else:
        F = parse_key(args.expr, "forest", args.alphabet)
        for cut in bck_cuts(F):
            records.append({"pruning": format_key(cut.pruning), "trunk": format_key(cut.trunk)})
    if args.format == "json":
        print(json.dumps({"algebra": args.algebra, "input": args.expr, "cuts": records}, ensure_ascii=False))
    else:
        for rec in records:
            if args.algebra == "lot":
                print(
                    f"{rec['multiplicity']} × [r={rec['r']}] {rec['pruning']} | {rec['remainder']}"
                    f"  ->  {rec['pruning']} ⊗ {rec['trunk']}"
                )
            else:
                print(f"{rec['pruning']} ⊗ {rec['trunk']}")
    return 0


def cmd_enumerate(args):
    show = _show(args)
    if args.what == "trees":
        items = [t.to_text() for t in enumerate_trees(args.degree, args.alphabet)]
    elif args.what == "forests":
        items = [F.to_text() for F in enumerate_forests(args.degree, args.alphabet)]
    else:
        items = [k.to_text(show) for k in weight_minus_one_monomials(args.degree, args.alphabet)]
    if args.format == "json":
        print(json.dumps({"what": args.what, "degree": args.degree, "count": len(items), "items": items}, ensure_ascii=False))
    else:
        print("\n".join(items))
    return 0


def _load_alpha(path, alphabet):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise UsageError("--alpha file must hold a JSON object")
    default = Fraction(str(doc.get("default", 0)))
    entries = doc.get("coefficients", {k: v for k, v in doc.items() if k != "default"})
    alpha = {}
    for text, value in entries.items():
        k = parse_key(text, "multiindex", alphabet)
        alpha[k] = Fraction(str(value))
    return alpha, default


def cmd_bseries(args):
    f = parse_field(args.field, args.alphabet)
    extra = sorted(set(f) - set(args.alphabet))
    if extra:
        raise UsageError(f"--field names decoration(s) outside the alphabet: {','.join(extra)}")
    alpha, default = _load_alpha(args.alpha, args.alphabet)
    out = bseries_truncated(alpha, f, args.degree, default)
    if args.format == "json":
        print(json.dumps({"poly": out.to_text(), "coeffs": [format_rational(c) for c in out.coeffs]}))
    else:
        print(out.to_text())
    return 0


def cmd_verify(args):
    names = ALL_IDENTITIES if args.identity == "all" else (args.identity,)
    reports = []
    for name in names:
        report = verify_identity(name, args.degree, args.alphabet, args.seed)
        reports.append(report)
        print(f"{name}: {report.elapsed:.2f}s", file=sys.stderr)
        if args.format == "text":
            status = "PASS" if report.passed else "FAIL"
            print(f"{status} {name} degree<={args.degree} cases={report.cases} failures={len(report.failures)}")
            for msg in report.failures[:3]:
                print(f"    counterexample: {msg}")
            sys.stdout.flush()
    if args.format == "json":
        docs = []
        for r in reports:
            d = r.as_dict()
            del d["elapsed"]
            docs.append(d)
        print(json.dumps({"reports": docs, "passed": all(r.passed for r in reports)}, ensure_ascii=False))
    else:
        failed = [r.identity for r in reports if not r.passed]
        print(f"{len(reports) - len(failed)}/{len(reports)} identities passed")
    return 0 if all(r.passed for r in reports) else 1


COMMANDS = {
    "coproduct": cmd_coproduct,
    "product": cmd_product,
    "embed": cmd_embed,
    "phi": cmd_phi,
    "antipode": cmd_antipode,
    "lbar": cmd_lbar,
    "cuts": cmd_cuts,
    "enumerate": cmd_enumerate,
    "bseries": cmd_bseries,
    "verify": cmd_verify,
}


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="hopfmi: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = args.cache
    if cache and os.path.exists(cache):
        try:
            load_fiber_cache(cache)
        except (OSError, ValueError, HopfMIError) as exc:
            log.warning("ignoring fiber cache %s: %s", cache, exc)
    try:
        status = COMMANDS[args.command](args)
    except (HopfMIError, UsageError) as exc:
        print(f"hopfmi {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"hopfmi {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if cache:
        try:
            save_fiber_cache(cache, args.alphabet)
        except OSError as exc:
            log.warning("could not write fiber cache %s: %s", cache, exc)
    return status


if __name__ == "__main__":
    sys.exit(main())
