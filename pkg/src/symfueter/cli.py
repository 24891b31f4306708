"""Command-line entry point: ``symfueter <subcommand> ...``.

Every subcommand writes a deterministic document (sorted-key JSON or CSV)
to ``--output`` or stdout and exits 0 only when all of its certifications
passed.  Rationals are accepted and emitted as "p/q" strings.
"""

import argparse
import csv
import io
import json
import sys
from math import factorial

from . import catalog, clifford, fueter, suites
from .config import Caps, CapExceeded
from .exactnum import format_rational, gr_pow, I, parse_rational
from .polyspinor import SpinorFunction

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _dump_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _gr_fields(c):
    d = c.to_json()
    return d["re"], d["im"]


# -- subcommands ----------------------------------------------------------

def cmd_gen_monogenic(args, caps):
    caps.check(ell=args.ell, n=args.n)
    f = fueter.fueter_map(args.ell, args.n, caps)
    residual = fueter.monogenic_residual(f)
    doc = {
        "n": args.n,
        "ell": args.ell,
        "spinor": f.to_json(),
        "vanished": f.is_zero(),
        "certification": {"monogenic": residual.is_zero(), "residual_terms": len(residual)},
    }
    _emit(args, _dump_json(doc))
    return EXIT_OK if residual.is_zero() else EXIT_FAILED


def _table_rows(p_max):
    rows = []
    for p in range(p_max + 1):
        scale = gr_pow(-I, p) * factorial(p)
        for j in range(p + 1):
            g = fueter.gamma_coefficient(p, j)
            b = fueter.bessel_coefficient(p, j)
            if g != scale * b:
                raise ArithmeticError(f"gamma/Bessel cross-check failed at p={p}, j={j}")
            re, im = _gr_fields(g)
            rows.append({"p": p, "j": j, "gamma_re": re, "gamma_im": im,
                         "bessel": format_rational(b)})
    return rows


def cmd_tables(args, caps):
    if args.p_max < 0:
        raise ValueError("--p-max must be nonnegative")
    caps.check(p=args.p_max)
    try:
        rows = _table_rows(args.p_max)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.format == "json":
        _emit(args, _dump_json({"p_max": args.p_max, "rows": rows}))
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["p", "j", "gamma_re", "gamma_im", "bessel"],
                           lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(args, buf.getvalue())
    return EXIT_OK


def _suite_config(args):
    cfg = {}
    for name in ("n", "m", "k_max", "a_max", "seed", "trials", "max_degree"):
        value = getattr(args, name)
        if value is not None:
            cfg[name] = value
    if args.alpha is not None:
        cfg["alpha"] = parse_rational(args.alpha)
    return cfg


def cmd_check(args, caps):
    cfg = _suite_config(args)
    caps.check(n=cfg.get("n"), m=cfg.get("m"))
    report = suites.run_suite(args.suite, cfg, workers=args.parallel)
    _emit(args, _dump_json(report))
    return EXIT_OK if report["all_pass"] else EXIT_FAILED


def cmd_decompose(args, caps):
    with open(args.input, encoding="utf-8") as fh:
        obj = json.load(fh)
    F = SpinorFunction.from_json(obj.get("spinor", obj))
    caps.check(n=F.n)
    parts = fueter.fischer_decompose(F)
    certified = [fueter.is_monogenic(g) for _, g in parts]
    exact = fueter.fischer_reconstruct(parts, F.n) == F
    doc = {
        "n": F.n,
        "parts": [{"j": j, "monogenic": ok, "g": g.to_json()} for (j, g), ok in zip(parts, certified)],
        "reconstructed": exact,
        "all_pass": exact and all(certified),
    }
    _emit(args, _dump_json(doc))
    return EXIT_OK if doc["all_pass"] else EXIT_FAILED


def cmd_classical(args, caps):
    m, k = args.m, args.k
    caps.check(m=m)
    doc = {"op": args.op, "m": m, "k": k}
    if args.op == "e1bar-power":
        P = clifford.e1bar_x_power(k, m)
        ok = True
    elif args.op == "fueter":
        P = clifford.classical_fueter(k, m)
        ok = clifford.dirac_apply(P).is_zero()
        doc["dirac_closed"] = ok
        doc["vanished"] = P.is_zero()
    elif args.op == "gegenbauer":
        P = clifford.gegenbauer_monogenic(k, m)
        c = clifford.fueter_gegenbauer_constant(k, m)
        closed = clifford.dirac_apply(P).is_zero()
        doc["dirac_closed"] = closed
        doc["fueter_constant"] = None if c is None else c.to_json()
        ok = closed and c is not None
    else:
        alpha = parse_rational(args.alpha) if args.alpha is not None else 2 - m
        P = clifford.raising_R_apply(clifford.e1bar_x_power(k, m), alpha)
        doc["alpha"] = format_rational(alpha)
        ok = True
    doc["polynomial"] = P.to_json()
    doc["all_pass"] = ok
    _emit(args, _dump_json(doc))
    return EXIT_OK if ok else EXIT_FAILED


OPERATORS = ("Ds", "Xs", "E", "Xjk", "Yjk", "Zjk", "Yjj", "Zjj", "Z", "Zdual")


def cmd_operator(args, caps):
    n, j, k = args.n, args.j, args.k
    caps.check(n=n)
    alpha = parse_rational(args.alpha) if args.alpha is not None else 0
    name = args.name
    if name == "Ds":
        op = catalog.make_Ds(n)
    elif name == "Xs":
        op = catalog.make_Xs(n)
    elif name == "E":
        op = catalog.make_Euler(n)
    elif name in catalog.SP_KINDS:
        op = catalog.make_sp_generator(name, j, j if name in ("Yjj", "Zjj") else k, n)
    elif name == "Z":
        op = catalog.make_Z(j, n, alpha)
    else:
        op = catalog.make_Z_dual(j, n, alpha)
    doc = {"name": name, "operator": op.to_json(), "text": str(op)}
    _emit(args, _dump_json(doc))
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = argparse.ArgumentParser(prog="symfueter", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-monogenic", parents=[common], help="symplectic Fueter image of degree ell")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_gen_monogenic)

    p = sub.add_parser("tables", parents=[common], help="gamma and Bessel coefficient table")
    p.add_argument("--p-max", type=int, required=True)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("check", parents=[common], help="run an identity suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--n", type=_positive, help="largest dimension n; every 1..n is checked")
    p.add_argument("--m", type=int, help="Clifford dimension (classical suites)")
    p.add_argument("--k-max", type=int)
    p.add_argument("--a-max", type=int)
    p.add_argument("--alpha", help="single deformation parameter, as p/q")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=_positive)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--parallel", type=_positive, default=1, metavar="WORKERS")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="Fischer decomposition of a JSON spinor")
    p.add_argument("--input", "-i", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classical", parents=[common], help="orthogonal Clifford constructions")
    p.add_argument("op", choices=("e1bar-power", "fueter", "gegenbauer", "raise"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", help="raise only; defaults to 2-m")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("operator", parents=[common], help="print a catalog operator in normal order")
    p.add_argument("name", choices=OPERATORS)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--j", type=_positive, default=1)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_operator)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.format == "csv" and args.command != "tables":
        print("error: csv output is only available for 'tables'", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, Caps.from_env())
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, IndexError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
