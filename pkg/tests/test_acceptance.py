"""The twelve acceptance criteria, each checked exactly (zero tolerance).

Run directly for a plain report:  python3 tests/test_acceptance.py
Under pytest each criterion is one test and the summary lists PASS/FAIL lines.
"""

import random
import sys
from fractions import Fraction
from math import factorial

import pytest

from symfueter import catalog, clifford, fueter
from symfueter.clifford import CliffordElement, CliffordPolynomial
from symfueter.exactnum import GaussianRational, I, gr_pow
from symfueter.operalg import WeylOperator, op_commutator

RESULTS = {}

PINNED_GEGENBAUER_CONSTANT = {4: GaussianRational(-2)}


def ac1_sl2():
    for n in range(1, 5):
        Ds, Xs, H = catalog.make_Ds(n), catalog.make_Xs(n), catalog.make_Euler(n) + n
        if op_commutator(Ds, Xs) != -I * H:
            return False
        if op_commutator(H, Xs) != Xs or op_commutator(H, Ds) != -Ds:
            return False
    return True


def ac2_power_commutators():
    for n in (1, 2, 3):
        Xs = catalog.make_Xs(n)
        pw = lambda e: Xs ** e if e >= 0 else WeylOperator.zero(n)  # noqa: E731
        for j in range(1, n + 1):
            q, y, x = (WeylOperator.mult(n, v, j) for v in "qyx")
            dx, dy, dq = (WeylOperator.deriv(n, v, j) for v in "xyq")
            for a in range(1, 7):
                tri = Fraction(a * (a - 1), 2)
                if op_commutator(q, pw(a)) != -a * (y * pw(a - 1)):
                    return False
                if op_commutator(dx, pw(a)) != a * (pw(a - 1) * (I * q)) - tri * (pw(a - 2) * (I * y)):
                    return False
                if op_commutator(dy, pw(a)) != a * (pw(a - 1) * dq) + tri * (pw(a - 2) * (I * x)):
                    return False
    return True


def ac3_dual_raising():
    for n in (1, 2, 3):
        for j in range(1, n + 1):
            Yjj = catalog.make_sp_generator("Yjj", j, j, n)
            for alpha in (0, 1, Fraction(3, 2), -2):
                if op_commutator(Yjj, catalog.make_Z(j, n, alpha)) != catalog.make_Z_dual(j, n, alpha):
                    return False
    return True


def ac4_intertwining():
    return all(
        catalog.verify_intertwining(j, n, k, a)
        for n in (1, 2, 3)
        for j in range(1, n + 1)
        for k in range(3)
        for a in range(2 * k + 1)
    )


def ac5_deformed_kernel():
    for n in (1, 2, 3):
        for j in range(1, n + 1):
            for k in range(3):
                report = fueter.check_deformed_kernel(j, n, k, trials=5, seed=0, max_degree=3)
                if len(report.cases) < 5 or not report.all_pass:
                    return False
    return True


def ac6_coefficients():
    for ell in range(7):
        if fueter.materialize(fueter.build_M(ell), 1) != fueter.build_M_by_iteration(ell):
            return False
    for p in range(11):
        for j in range(p + 1):
            if fueter.gamma_coefficient(p, j) != gr_pow(-I, p) * factorial(p) * fueter.bessel_coefficient(p, j):
                return False
    return [fueter.gamma_coefficient(1, j) for j in (0, 1)] == [-I, -I]


def ac7_symplectic_fueter():
    for n in (2, 3):
        nonzero = 0
        for ell in range(7):
            f = fueter.fueter_map(ell, n)
            if not fueter.is_monogenic(f):
                return False
            nonzero += not f.is_zero()
        if not nonzero:
            return False
    return True


def ac8_fischer():
    count = 0
    for n in (1, 2):
        for seed in range(6):
            F = fueter.random_spinor(n, 5, seed)
            parts = fueter.fischer_decompose(F)
            if not all(fueter.is_monogenic(g) for _, g in parts):
                return False
            if fueter.fischer_reconstruct(parts, n) != F:
                return False
            count += 1
    return count >= 10


def ac9_classical_raising_powers():
    for m in (2, 4, 6):
        for k in range(7):
            lhs = clifford.raising_R_apply(clifford.e1bar_x_power(k, m), 2 - m)
            if lhs != clifford.e1bar_x_power(k + 1, m).scale(k + 1):
                return False
    return True


def ac10_classical_fueter():
    return all(
        clifford.dirac_apply(clifford.classical_fueter(k, m)).is_zero()
        for m in (4, 6)
        for k in range(9)
    )


def ac11_gegenbauer():
    # Fueter image of the degree k+m-2 power against the degree-k Gegenbauer
    # monogenic, with the constant conj(e_1) factor on the right
    m = 4
    for k in range(5):
        G = clifford.gegenbauer_monogenic(k, m)
        if not clifford.dirac_apply(G).is_zero():
            return False
        c = clifford.fueter_gegenbauer_constant(k, m)
        if c is None or c != PINNED_GEGENBAUER_CONSTANT[m]:
            return False
        if clifford.classical_fueter(k + m - 2, m) != G.scale(c) * clifford.e1bar(m):
            return False
    return True


def _random_clifford_poly(m, rng):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        exps = tuple(rng.randint(0, 3) for _ in range(m))
        blade = {rng.randrange(2 ** m): GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4))}
        terms[exps] = CliffordElement(m, blade)
    return CliffordPolynomial(m, terms)


def ac12_clifford_substrate():
    for m in range(1, 9):
        for p in range(1, m + 1):
            for q in range(1, m + 1):
                ep, eq = CliffordElement.e(m, p), CliffordElement.e(m, q)
                if ep * eq + eq * ep != CliffordElement.scalar(m, -2 if p == q else 0):
                    return False
    rng = random.Random("clifford-substrate")
    for m in (2, 4, 6):
        for _ in range(10):
            P = _random_clifford_poly(m, rng)
            if clifford.dirac_apply(clifford.dirac_apply(P)) != -clifford.laplacian_apply(P, 1):
                return False
    return True


CRITERIA = [
    ("AC1 sl(2) relations, n=1..4", ac1_sl2),
    ("AC2 commutator identities for powers of X_s, a<=6, n<=3", ac2_power_commutators),
    ("AC3 dual raising [Y_jj, Z_j] = Z_{j+n}, n<=3", ac3_dual_raising),
    ("AC4 intertwining Z^[k] X_s^a = X_s^a (Z^[0] + Psi), n<=3, k<=2", ac4_intertwining),
    ("AC5 deformed raising preserves ker D_s^(2k+1), n<=3, k<=2", ac5_deformed_kernel),
    ("AC6 gamma/Bessel closed forms and iteration, l<=6, p<=10", ac6_coefficients),
    ("AC7 symplectic Fueter images are monogenic, n=2,3, l<=6", ac7_symplectic_fueter),
    ("AC8 Fischer decomposition round trip, n<=2", ac8_fischer),
    ("AC9 classical raising of (e1bar x)^k, m=2,4,6, k<=6", ac9_classical_raising_powers),
    ("AC10 classical Fueter images are monogenic, m=4,6, k<=8", ac10_classical_fueter),
    ("AC11 Gegenbauer monogenics and the pinned Fueter constant, m=4, k<=4", ac11_gegenbauer),
    ("AC12 Clifford generator relations and Dirac factorization", ac12_clifford_substrate),
]


@pytest.mark.parametrize("label,check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_acceptance(label, check):
    ok = bool(check())
    RESULTS[label] = ok
    print(f"{'PASS' if ok else 'FAIL'}  {label}")
    assert ok, label


if __name__ == "__main__":
    failed = 0
    for label, check in CRITERIA:
        ok = bool(check())
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {label}", flush=True)
    sys.exit(1 if failed else 0)
