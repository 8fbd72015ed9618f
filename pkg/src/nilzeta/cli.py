"""Command-line front end: compute, verify, and inspect zeta functions."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import zeta as zmod
from .arith import FactoredRationalFunction, rf_equal, rf_series_coeffs
from .oracle import CapacityExceeded, compare_routes, count_subalgebras

EXIT_OK = 0
EXIT_CAPACITY = 2
EXIT_ORACLE_CAPACITY = 3
EXIT_USAGE = 64

KINDS = ("padic", "overlap", "no-overlap", "reduced", "topological")


def default_cache_dir(flag_value):
    if flag_value:
        return flag_value
    return os.environ.get("NILZETA_CACHE", ".nilzeta-cache")


def heartbeat(every=200):
    def cb(k, n):
        if k % every == 0 or k == n:
            print(f"progress: {k}/{n} pairs", file=sys.stderr, flush=True)
    return cb


def render_latex(value):
    """Factored display with denominator factors by decreasing q-exponent."""
    if isinstance(value, FactoredRationalFunction):
        var_names = value.vars

        def mono(e):
            bits = []
            for v, x in zip(var_names, e):
                if x == 1:
                    bits.append(v)
                elif x:
                    bits.append(f"{v}^{{{x}}}")
            return " ".join(bits) or "1"

        num_bits = []
        for e in sorted(value.num.terms, key=lambda e: (e[-1], e)):
            c = value.num.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coeff = "" if mag == 1 and any(e) else str(mag)
            num_bits.append(f"{sign} {coeff}{mono(e) if any(e) else ('' if coeff else '1')}".strip())
        num = " ".join(num_bits).lstrip("+ ").strip() or "0"
        den_bits = []
        for e, m in sorted(value.den.items(), key=lambda em: (-em[0][0], em[0])):
            factor = f"(1 - {mono(e)})"
            den_bits.append(factor + (f"^{{{m}}}" if m > 1 else ""))
        return f"\\frac{{{num}}}{{{''.join(den_bits) or '1'}}}"
    # univariate in s
    num = " + ".join(f"{c} s^{{{i}}}" for i, c in enumerate(value.num) if c)
    den = "".join(
        f"({b} s - {a})" + (f"^{{{m}}}" if m > 1 else "")
        for (b, a), m in sorted(value.den.items()))
    return f"\\frac{{{num or '0'}}}{{{den or '1'}}}"


def render(result, fmt):
    if fmt == "json":
        return json.dumps({
            "d": result.d, "kind": result.kind,
            "value": result.value.to_json_obj(),
            "provenance": result.provenance,
        }, sort_keys=True)
    if fmt == "latex":
        return render_latex(result.value)
    return repr(result.value)


def cmd_compute(args):
    cache_dir = default_cache_dir(args.cache_dir)
    kind = args.kind
    if kind == "overlap" and not args.word:
        print("--word is required with --kind overlap", file=sys.stderr)
        return EXIT_USAGE
    if kind != "overlap" and args.word:
        print("--word only makes sense with --kind overlap", file=sys.stderr)
        return EXIT_USAGE
    cache_kind = kind if kind != "overlap" else f"overlap:{args.word}"
    cache_kind = cache_kind.replace("no-overlap", "no_overlap")
    result = zmod.load_result(cache_dir, args.d, cache_kind)
    if result is None:
        cb = heartbeat()
        if kind == "padic":
            result = zmod.zeta_padic(args.d, progress=cb)
        elif kind == "overlap":
            result = zmod.zeta_overlap(args.d, args.word, progress=cb)
        elif kind == "no-overlap":
            result = zmod.zeta_no_overlap(args.d, route=args.route,
                                          progress=cb)
        elif kind == "reduced":
            result = zmod.zeta_reduced(args.d, progress=cb)
        else:
            result = zmod.zeta_topological(args.d, progress=cb)
        zmod.store_result(cache_dir, result)
    text = render(result, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _check(name, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  {detail}" if detail else ""))
    return bool(ok)


def _verify_golden(d):
    from .golden import golden_padic, golden_reduced, golden_topological
    from .arith import lff_equal
    ok = True
    z = zmod.zeta_padic(d)
    g = golden_padic(d)
    if g is not None:
        ok &= _check(f"padic d={d} matches closed form", rf_equal(z.value, g))
    r = zmod.zeta_reduced(d)
    gr = golden_reduced(d)
    if gr is not None:
        ok &= _check(f"reduced d={d} matches closed form",
                     rf_equal(r.value, gr))
    t = zmod.zeta_topological(d)
    gt = golden_topological(d)
    if gt is not None:
        ok &= _check(f"topological d={d} matches closed form",
                     lff_equal(t.value, gt))
    return ok


def _verify_funeq(d):
    D = d + d * (d - 1) // 2
    ok = _check(f"functional equation, padic d={d}",
                zmod.check_functional_equation(zmod.zeta_padic(d).value, D))
    ok &= _check(f"functional equation, no-overlap d={d}",
                 zmod.check_functional_equation(
                     zmod.zeta_no_overlap(d).value, D))
    words = sorted({wp.context.dyck for wp in zmod.enumerate_Wd(d)})
    for w in words:
        word = "".join(map(str, w))
        ok &= _check(f"functional equation, overlap {word} d={d}",
                     zmod.check_functional_equation(
                         zmod.zeta_overlap(d, w).value, D))
    return ok


def _verify_pole(d):
    rep = zmod.pole_report(d, zmod.zeta_reduced(d), zmod.zeta_topological(d))
    return _check(f"pole report d={d} self-consistent", rep.consistent(),
                  str(rep))


def _verify_oracle(d, p, order):
    rep = compare_routes(d, p, order)
    print(rep.text())
    return _check(f"oracle routes d={d} p={p} order={order}", rep.ok)


def cmd_verify(args):
    d = args.d
    ok = True
    suite = args.suite
    try:
        if suite in ("golden", "all"):
            ok &= _verify_golden(d)
        if suite in ("funeq", "all"):
            ok &= _verify_funeq(d)
        if suite in ("pole", "all"):
            ok &= _verify_pole(d)
        if suite in ("oracle", "all"):
            ok &= _verify_oracle(d, args.p, args.order)
    except CapacityExceeded as exc:
        print(f"oracle capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_ORACLE_CAPACITY
    return EXIT_OK if ok else 1


def cmd_oracle(args):
    try:
        print(count_subalgebras(args.d, args.p, args.n))
    except CapacityExceeded as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_ORACLE_CAPACITY
    return EXIT_OK


def cmd_report(args):
    rep = zmod.pole_report(
        args.d, zmod.zeta_reduced(args.d, progress=heartbeat()),
        zmod.zeta_topological(args.d, progress=heartbeat()))
    obj = {
        "d": rep.d,
        "reduced_order_at_1": rep.reduced_order_at_1,
        "reduced_residue_at_1": str(rep.reduced_residue_at_1),
        "top_degree": rep.top_degree,
        "top_residue_at_0": str(rep.top_residue_at_0),
        "top_limit_at_infinity": str(rep.top_limit_at_infinity),
        "c_d": str(rep.c_d),
        "consistent": rep.consistent(),
    }
    text = json.dumps(obj, sort_keys=True) if args.format == "json" else \
        "\n".join(f"{k}: {v}" for k, v in obj.items())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="nilzeta",
        description="Subalgebra zeta functions of free class-2-nilpotent "
                    "Lie rings.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--format", choices=("json", "latex", "text"),
                        default="text")
        sp.add_argument("--output")
        sp.add_argument("--cache-dir")
        sp.add_argument("--jobs", type=int, default=1)

    sc = sub.add_parser("compute", help="compute one zeta function")
    common(sc)
    sc.add_argument("--kind", choices=KINDS, default="padic")
    sc.add_argument("--word", help="Dyck word for --kind overlap, e.g. 0101")
    sc.add_argument("--route", choices=("via_H", "via_G"), default="via_H")
    sc.set_defaults(func=cmd_compute)

    sv = sub.add_parser("verify", help="run verification suites")
    common(sv)
    sv.add_argument("--suite",
                    choices=("golden", "funeq", "pole", "oracle", "all"),
                    default="all")
    sv.add_argument("--p", type=int, default=2)
    sv.add_argument("--order", type=int, default=2)
    sv.set_defaults(func=cmd_verify)

    so = sub.add_parser("oracle", help="brute-force subalgebra count")
    so.add_argument("--d", type=int, required=True)
    so.add_argument("--p", type=int, required=True)
    so.add_argument("--n", type=int, required=True)
    so.set_defaults(func=cmd_oracle)

    sr = sub.add_parser("report", help="pole/residue report")
    common(sr)
    sr.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if args.d < 2:
        print("--d must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
