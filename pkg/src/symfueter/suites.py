"""Identity suites behind ``symfueter check``.

Each suite expands its parameters into independent cases.  A case is a
module-level function plus keyword arguments, so cases can be shipped to
worker processes; results are always reported in expansion order.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import catalog, clifford, fueter
from .exactnum import I, format_rational
from .operalg import WeylOperator, op_commutator

__all__ = ["SUITES", "expand", "run_suite"]


def _case(inputs, passed, witness=None, **extra):
    out = {"inputs": inputs, "pass": bool(passed), **extra}
    if not passed and witness is not None:
        out["witness"] = witness
    return out


def _op_witness(diff):
    return {"difference_terms": len(diff), "difference": str(diff)[:2000]}


# -- symplectic operator identities ---------------------------------------

def case_sl2(n, relation):
    Ds, Xs, E = catalog.make_Ds(n), catalog.make_Xs(n), catalog.make_Euler(n)
    H = E + n
    if relation == "[E+n,Xs]=Xs":
        lhs, rhs = op_commutator(H, Xs), Xs
    elif relation == "[E+n,Ds]=-Ds":
        lhs, rhs = op_commutator(H, Ds), -Ds
    else:
        lhs, rhs = op_commutator(Ds, Xs), -I * H
    diff = lhs - rhs
    return _case({"n": n, "relation": relation}, diff.is_zero(), _op_witness(diff))


def case_sp2n_symmetry(n, kind, j, k):
    report = catalog.check_proper_symmetry(catalog.make_sp_generator(kind, j, k, n), n)
    return _case({"n": n, "kind": kind, "j": j, "k": k}, report.proper,
                 _op_witness(report.commutator))


def case_power_commutators(n, j, a, identity):
    Xs = catalog.make_Xs(n)
    pw = lambda e: Xs ** e if e >= 0 else WeylOperator.zero(n)  # noqa: E731
    mult = lambda v: WeylOperator.mult(n, v, j)  # noqa: E731
    der = lambda v: WeylOperator.deriv(n, v, j)  # noqa: E731
    tri = Fraction(a * (a - 1), 2)
    if identity == "q":
        lhs = op_commutator(mult("q"), pw(a))
        rhs = -a * (mult("y") * pw(a - 1))
    elif identity == "dx":
        lhs = op_commutator(der("x"), pw(a))
        rhs = a * (pw(a - 1) * (I * mult("q"))) - tri * (pw(a - 2) * (I * mult("y")))
    else:
        lhs = op_commutator(der("y"), pw(a))
        rhs = a * (pw(a - 1) * der("q")) + tri * (pw(a - 2) * (I * mult("x")))
    diff = lhs - rhs
    return _case({"n": n, "j": j, "a": a, "identity": identity}, diff.is_zero(), _op_witness(diff))


def case_dual_raising(n, j, alpha):
    alpha = Fraction(alpha)
    lhs = op_commutator(catalog.make_sp_generator("Yjj", j, j, n), catalog.make_Z(j, n, alpha))
    diff = lhs - catalog.make_Z_dual(j, n, alpha)
    return _case({"n": n, "j": j, "alpha": format_rational(alpha)}, diff.is_zero(), _op_witness(diff))


def case_intertwining(n, j, k, a):
    return _case({"n": n, "j": j, "k": k, "a": a}, catalog.verify_intertwining(j, n, k, a))


def case_deformed_kernel(n, j, k, trials, seed):
    report = fueter.check_deformed_kernel(j, n, k, trials=trials, seed=seed)
    return _case({"n": n, "j": j, "k": k, "seed": seed}, report.all_pass,
                 trials=[c.to_json() for c in report.cases])


def case_fischer(n, seed, max_degree):
    F = fueter.random_spinor(n, max_degree, seed)
    parts = fueter.fischer_decompose(F)
    monogenic = all(fueter.is_monogenic(g) for _, g in parts)
    exact = fueter.fischer_reconstruct(parts, n) == F
    return _case({"n": n, "seed": seed, "max_degree": max_degree}, monogenic and exact,
                 {"monogenic": monogenic, "reconstructed": exact},
                 components=[j for j, _ in parts])


# -- classical side -------------------------------------------------------

def case_classical_raising(m, k, seed):
    P = clifford.classical_kernel_input(m, k, seed)
    order = 2 * k + 1
    in_kernel = clifford.dirac_power(P, order).is_zero()
    image = clifford.raising_R_apply(P, -2 * k)
    kept = clifford.dirac_power(image, order).is_zero()
    return _case({"m": m, "k": k, "seed": seed}, in_kernel and kept,
                 {"input_in_kernel": in_kernel, "image_in_kernel": kept})


def case_classical_fueter(m, k):
    F = clifford.classical_fueter(k, m)
    closed = clifford.dirac_apply(F).is_zero()
    return _case({"m": m, "k": k}, closed, {"dirac_closed": False}, vanished=F.is_zero())


def case_gegenbauer(m, k):
    G = clifford.gegenbauer_monogenic(k, m)
    closed = clifford.dirac_apply(G).is_zero()
    c = clifford.fueter_gegenbauer_constant(k, m)
    return _case({"m": m, "k": k}, closed and c is not None and bool(c),
                 {"dirac_closed": closed, "proportional": c is not None},
                 constant=None if c is None else c.to_json())


def case_power_raising(m, k):
    P = clifford.e1bar_x_power(k, m)
    ok = clifford.raising_R_apply(P, 2 - m) == clifford.e1bar_x_power(k + 1, m).scale(k + 1)
    return _case({"m": m, "k": k}, ok)


# -- expansion ------------------------------------------------------------

DEFAULT_ALPHAS = (Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-2))


def _ns(cfg):
    return range(1, cfg.get("n", 2) + 1)


def _expand_sl2(cfg):
    for n in _ns(cfg):
        for rel in ("[E+n,Xs]=Xs", "[E+n,Ds]=-Ds", "[Ds,Xs]=-i(E+n)"):
            yield case_sl2, {"n": n, "relation": rel}


def _expand_sp2n(cfg):
    for n in _ns(cfg):
        for kind in catalog.SP_KINDS:
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    if kind in ("Yjj", "Zjj") and j != k:
                        continue
                    yield case_sp2n_symmetry, {"n": n, "kind": kind, "j": j, "k": k}


def _expand_comm(cfg):
    for n in _ns(cfg):
        for j in range(1, n + 1):
            for a in range(1, cfg.get("a_max", 6) + 1):
                for ident in ("q", "dx", "dy"):
                    yield case_power_commutators, {"n": n, "j": j, "a": a, "identity": ident}


def _expand_dual(cfg):
    alphas = [cfg["alpha"]] if cfg.get("alpha") is not None else DEFAULT_ALPHAS
    for n in _ns(cfg):
        for j in range(1, n + 1):
            for alpha in alphas:
                yield case_dual_raising, {"n": n, "j": j, "alpha": Fraction(alpha)}


def _expand_intertwining(cfg):
    for n in _ns(cfg):
        for j in range(1, n + 1):
            for k in range(cfg.get("k_max", 2) + 1):
                for a in range(2 * k + 1):
                    yield case_intertwining, {"n": n, "j": j, "k": k, "a": a}


def _expand_deformed(cfg):
    for n in _ns(cfg):
        for j in range(1, n + 1):
            for k in range(cfg.get("k_max", 2) + 1):
                yield case_deformed_kernel, {"n": n, "j": j, "k": k,
                                             "trials": cfg.get("trials", 5),
                                             "seed": cfg.get("seed", 0)}


def _expand_fischer(cfg):
    base = cfg.get("seed", 0)
    for n in _ns(cfg):
        for t in range(cfg.get("trials", 5)):
            yield case_fischer, {"n": n, "seed": base + t, "max_degree": cfg.get("max_degree", 5)}


def _expand_classical_raising(cfg):
    base = cfg.get("seed", 0)
    for k in range(cfg.get("k_max", 2) + 1):
        for t in range(cfg.get("trials", 5)):
            yield case_classical_raising, {"m": cfg.get("m", 4), "k": k, "seed": base + t}


def _expand_classical_fueter(cfg):
    for k in range(cfg.get("k_max", 8) + 1):
        yield case_classical_fueter, {"m": cfg.get("m", 4), "k": k}


def _expand_gegenbauer(cfg):
    for k in range(cfg.get("k_max", 4) + 1):
        yield case_gegenbauer, {"m": cfg.get("m", 4), "k": k}


SUITES = {
    "sl2": _expand_sl2,
    "sp2n-symmetry": _expand_sp2n,
    "comm-lemma": _expand_comm,
    "dual-raising": _expand_dual,
    "intertwining": _expand_intertwining,
    "deformed-kernel": _expand_deformed,
    "fischer": _expand_fischer,
    "classical-raising": _expand_classical_raising,
    "classical-fueter": _expand_classical_fueter,
    "gegenbauer": _expand_gegenbauer,
}


def expand(suite, cfg):
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return list(SUITES[suite](cfg))


def _run_one(item):
    fn, kwargs = item
    return fn(**kwargs)


def run_suite(suite, cfg, workers=1):
    """Run every case of ``suite``; returns the JSON-ready report dict."""
    items = expand(suite, cfg)
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cases = list(pool.map(_run_one, items))
    else:
        cases = [_run_one(it) for it in items]
    params = {k: (format_rational(v) if isinstance(v, Fraction) else v) for k, v in sorted(cfg.items())}
    return {
        "suite": suite,
        "params": params,
        "cases": cases,
        "all_pass": all(c["pass"] for c in cases),
    }
