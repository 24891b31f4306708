"""Symplectic Fueter construction and the sl(2) toolkit around D_s.

The pipeline: closed-form coefficients -> abstract word in (y_1, X_s, q_1)
-> materialization in dimension n -> D_s^(2n-2) -> kernel certificate.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Tuple

from .catalog import make_Ds, make_Xs, make_Z, make_Z_dual
from .config import Caps
from .exactnum import GaussianRational, gr_pow, I
from .operalg import op_apply, op_apply_power
from .polyspinor import SpinorFunction, SymplecticPolynomial

__all__ = [
    "odd_double_factorial",
    "gamma_coefficient",
    "bessel_coefficient",
    "BesselPolynomial",
    "bessel_polynomial",
    "AbstractMonogenicWord",
    "build_M",
    "build_M_by_iteration",
    "materialize",
    "fueter_map",
    "is_monogenic",
    "monogenic_residual",
    "random_monogenic",
    "check_deformed_kernel",
    "fischer_decompose",
    "fischer_reconstruct",
    "random_spinor",
]


def odd_double_factorial(j):
    """(2j-1)!! with the empty product (-1)!! = 1 at j = 0."""
    r = 1
    for t in range(1, 2 * j, 2):
        r *= t
    return r


def _check_pj(p, j):
    if p < 0 or j < 0:
        raise ValueError("p and j must be nonnegative")
    if j > p:
        raise ValueError(f"j={j} exceeds p={p}")


def gamma_coefficient(p, j):
    """(-i)^p p! (2j-1)!! C(p+j, 2j)."""
    _check_pj(p, j)
    return gr_pow(-I, p) * (factorial(p) * odd_double_factorial(j) * comb(p + j, 2 * j))


def bessel_coefficient(p, j):
    """(p+j)! / ((p-j)! j! 2^j)."""
    _check_pj(p, j)
    return Fraction(factorial(p + j), factorial(p - j) * factorial(j) * 2 ** j)


@dataclass(frozen=True)
class BesselPolynomial:
    """beta_p(x) = sum_j B(p, j) x^j."""

    p: int
    coefficients: Tuple[Fraction, ...]

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def bessel_polynomial(p):
    return BesselPolynomial(p, tuple(bessel_coefficient(p, j) for j in range(p + 1)))


@dataclass(frozen=True)
class AbstractMonogenicWord:
    """sum_j coeffs[j] * y_1^j X_s^(p-j) q_1^(p-j) acting on the Gaussian.

    Read right to left: multiply by q_1^(p-j), apply X_s (p-j) times, then
    multiply by y_1^j.  X_s and q_1 do not commute, so the order matters.
    """

    p: int
    coeffs: Tuple[GaussianRational, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p + 1:
            raise ValueError("a degree-p word carries p+1 coefficients")

    def materialize(self, n):
        return materialize(self, n)


def build_M(ell):
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return AbstractMonogenicWord(ell, tuple(gamma_coefficient(ell, j) for j in range(ell + 1)))


def build_M_by_iteration(ell):
    """ell-fold action of Z_1^[2,0] on exp(-q^2/2), in dimension one."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return op_apply_power(make_Z(1, 1, 0), ell, SpinorFunction.gaussian(1))


def materialize(word, n):
    """Substitute the n-dimensional X_s and the product Gaussian into ``word``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    Xs = make_Xs(n)
    p = word.p
    total = SpinorFunction.zero(n)
    for j, c in enumerate(word.coeffs):
        if not c:
            continue
        f = SpinorFunction(SymplecticPolynomial.monomial(n, eq=(p - j,) + (0,) * (n - 1)))
        f = op_apply_power(Xs, p - j, f)
        f = SpinorFunction(f.poly.shift((0,) * n + (j,) + (0,) * (2 * n - 1), c))
        total = total + f
    return total


def fueter_map(ell, n, caps=None):
    """D_s^(2n-2) applied to the materialized word M_ell in dimension n.

    May be the zero spinor (small ell); that is a legitimate outcome.
    """
    if ell < 0 or n < 1:
        raise ValueError("need ell >= 0 and n >= 1")
    (caps or Caps.from_env()).check(ell=ell, n=n)
    return op_apply_power(make_Ds(n), 2 * n - 2, materialize(build_M(ell), n))


def monogenic_residual(f):
    return op_apply(make_Ds(f.n), f)


def is_monogenic(f):
    return monogenic_residual(f).is_zero()


def _nonzero_gr(rng, lo=-3, hi=3):
    while True:
        c = GaussianRational(rng.randint(lo, hi), rng.randint(lo, hi))
        if c:
            return c


def random_monogenic(n, ell, seed=0, words=2):
    """Seeded random element of the degree-ell symplectic monogenics.

    A combination of ell-fold products of the undeformed raising operators
    Z_j^[2n,0] and Z_{j+n}^[2n,0] applied to the Gaussian.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    psi = SpinorFunction.gaussian(n)
    if ell == 0:
        return psi
    raisers = [make_Z(j, n, 0) for j in range(1, n + 1)]
    raisers += [make_Z_dual(j, n, 0) for j in range(1, n + 1)]
    rng = random.Random(f"monogenic:{n}:{ell}:{seed}")
    total = SpinorFunction.zero(n)
    for _ in range(words):
        f = psi
        for _ in range(ell):
            f = op_apply(raisers[rng.randrange(len(raisers))], f)
        total = total + f.scale(_nonzero_gr(rng))
    if total.is_zero():
        total = op_apply_power(raisers[0], ell, psi)
    if not is_monogenic(total):
        raise ArithmeticError(f"raising-operator word left ker D_s (n={n}, ell={ell}, seed={seed})")
    return total


@dataclass
class KernelCase:
    a: int
    ell: int
    seed: int
    passed: bool
    residual_terms: int = 0

    def to_json(self):
        return {
            "inputs": {"a": self.a, "ell": self.ell, "seed": self.seed},
            "pass": self.passed,
            **({"witness": {"residual_terms": self.residual_terms}} if not self.passed else {}),
        }


@dataclass
class KernelReport:
    j: int
    n: int
    k: int
    cases: List[KernelCase]

    @property
    def all_pass(self):
        return all(c.passed for c in self.cases)

    def to_json(self):
        return {
            "params": {"j": self.j, "n": self.n, "k": self.k},
            "cases": [c.to_json() for c in self.cases],
            "all_pass": self.all_pass,
        }


def check_deformed_kernel(j, n, k, trials=5, seed=0, max_degree=3):
    """Test that Z_j^[2n,k] keeps inputs X_s^a M (a <= 2k) inside ker D_s^(2k+1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rng = random.Random(f"deformed:{j}:{n}:{k}:{seed}")
    Ds, Xs, Z = make_Ds(n), make_Xs(n), make_Z(j, n, k)
    cases = []
    for _ in range(trials):
        a = rng.randint(0, 2 * k)
        ell = rng.randint(0, max_degree)
        sub_seed = rng.randrange(2 ** 32)
        F = op_apply_power(Xs, a, random_monogenic(n, ell, sub_seed))
        residual = op_apply_power(Ds, 2 * k + 1, op_apply(Z, F))
        cases.append(KernelCase(a, ell, sub_seed, residual.is_zero(), len(residual)))
    return KernelReport(j, n, k, cases)


def _peel_scalar(G, r, Ds, Xs):
    # D_s^r X_s^r G == c G for monogenic G; c found by direct application
    T = op_apply_power(Ds, r, op_apply_power(Xs, r, G))
    key, g0 = next(iter(G.terms.items()))
    c = T.terms.get(key, GaussianRational(0)) / g0
    if not c or T != G.scale(c):
        raise ArithmeticError(f"D_s^{r} X_s^{r} is not a nonzero multiple of the identity here")
    return c


def fischer_decompose(F):
    """Split F into sum_j X_s^j g_j with every g_j monogenic.

    Returns ``[(j, g_j), ...]`` sorted by j, nonzero parts only.
    """
    n = F.n
    Ds, Xs = make_Ds(n), make_Xs(n)
    parts = {}
    for _, comp in F.components().items():
        rem = comp
        while not rem.is_zero():
            chain = [rem]
            while True:
                nxt = op_apply(Ds, chain[-1])
                if nxt.is_zero():
                    break
                chain.append(nxt)
            r = len(chain) - 1
            G = chain[-1]
            g = G.scale(_peel_scalar(G, r, Ds, Xs).inverse())
            parts[r] = parts[r] + g if r in parts else g
            rem = rem - op_apply_power(Xs, r, g)
    return [(j, g) for j, g in sorted(parts.items()) if not g.is_zero()]


def fischer_reconstruct(parts, n):
    Xs = make_Xs(n)
    total = SpinorFunction.zero(n)
    for j, g in parts:
        total = total + op_apply_power(Xs, j, g)
    return total


def random_spinor(n, max_degree, seed=0, nterms=6, max_q_degree=2):
    """Seeded random polynomial spinor of (x,y)-degree <= max_degree."""
    rng = random.Random(f"spinor:{n}:{max_degree}:{seed}")
    terms = {}
    for _ in range(nterms):
        key = [0] * (3 * n)
        for _ in range(rng.randint(0, max_degree)):
            key[rng.randrange(2 * n)] += 1
        for _ in range(rng.randint(0, max_q_degree)):
            key[2 * n + rng.randrange(n)] += 1
        key = tuple(key)
        terms[key] = terms.get(key, 0) + _nonzero_gr(rng)
    return SpinorFunction(SymplecticPolynomial(n, terms))
