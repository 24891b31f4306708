"""Named operators of symplectic Clifford analysis, built for dimension n.

All constructors return canonical :class:`WeylOperator` values; the
composite ones are expanded once and cached.
"""

from fractions import Fraction
from functools import lru_cache

from .exactnum import I, parse_rational
from .operalg import WeylOperator, op_commutator

__all__ = [
    "make_Ds",
    "make_Xs",
    "make_Euler",
    "make_sp_generator",
    "make_Z",
    "make_Z_dual",
    "make_rest_operator",
    "rest_constant",
    "check_proper_symmetry",
    "verify_intertwining",
    "SP_KINDS",
    "SymmetryReport",
]

SP_KINDS = ("Xjk", "Yjk", "Zjk", "Yjj", "Zjj")


def _check_n(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension n must be a positive integer, got {n!r}")


def _check_j(j, n):
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")


def _alpha(alpha):
    return parse_rational(alpha) if isinstance(alpha, str) else Fraction(alpha)


def _x(n, j):
    return WeylOperator.mult(n, "x", j)


def _y(n, j):
    return WeylOperator.mult(n, "y", j)


def _q(n, j):
    return WeylOperator.mult(n, "q", j)


def _dx(n, j):
    return WeylOperator.deriv(n, "x", j)


def _dy(n, j):
    return WeylOperator.deriv(n, "y", j)


def _dq(n, j):
    return WeylOperator.deriv(n, "q", j)


@lru_cache(maxsize=None)
def make_Ds(n):
    """Symplectic Dirac operator  sum_j i q_j d_{y_j} - d_{x_j} d_{q_j}."""
    _check_n(n)
    op = WeylOperator.zero(n)
    for j in range(1, n + 1):
        op = op + I * (_q(n, j) * _dy(n, j)) - _dx(n, j) * _dq(n, j)
    return op


@lru_cache(maxsize=None)
def make_Xs(n):
    """Dual operator  sum_j y_j d_{q_j} + i x_j q_j."""
    _check_n(n)
    op = WeylOperator.zero(n)
    for j in range(1, n + 1):
        op = op + _y(n, j) * _dq(n, j) + I * (_x(n, j) * _q(n, j))
    return op


@lru_cache(maxsize=None)
def make_Euler(n):
    """Euler operator in (x, y) only; q is not counted."""
    _check_n(n)
    op = WeylOperator.zero(n)
    for j in range(1, n + 1):
        op = op + _x(n, j) * _dx(n, j) + _y(n, j) * _dy(n, j)
    return op


@lru_cache(maxsize=None)
def make_sp_generator(kind, j, k, n):
    """Generators of the regular sp(2n) action on polynomial spinors."""
    _check_n(n)
    _check_j(j, n)
    _check_j(k, n)
    half = Fraction(1, 2)
    if kind == "Xjk":
        op = -(_x(n, j) * _dx(n, k)) + _y(n, k) * _dy(n, j) + _q(n, k) * _dq(n, j)
        if j == k:
            op = op + half
        return op
    if kind == "Yjk":
        return _x(n, k) * _dy(n, j) + _x(n, j) * _dy(n, k) + I * (_dq(n, j) * _dq(n, k))
    if kind == "Zjk":
        return _y(n, k) * _dx(n, j) + _y(n, j) * _dx(n, k) + I * (_q(n, j) * _q(n, k))
    if kind in ("Yjj", "Zjj"):
        if j != k:
            raise ValueError(f"{kind} needs j == k, got j={j}, k={k}")
        if kind == "Yjj":
            return -(_x(n, j) * _dy(n, j)) - (I * half) * WeylOperator.deriv(n, "q", j, 2)
        return -(_y(n, j) * _dx(n, j)) - (I * half) * WeylOperator.mult(n, "q", j, 2)
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {SP_KINDS}")


def _euler_factors(n, alpha):
    E = make_Euler(n)
    first = E + (n - alpha)
    second = 2 * E + (2 * n - 1 - 2 * alpha)
    return first, second


@lru_cache(maxsize=None)
def _make_Z(j, n, alpha):
    Xs = make_Xs(n)
    first, second = _euler_factors(n, alpha)
    return (
        Xs * Xs * _dx(n, j)
        - I * (_y(n, j) * first * second)
        - I * (Xs * _q(n, j) * second)
    )


def make_Z(j, n, alpha=0):
    """Alpha-deformed raising operator Z_j^[2n, alpha].

    ``alpha`` is any exact rational (int, Fraction or "p/q").
    """
    _check_n(n)
    _check_j(j, n)
    return _make_Z(j, n, _alpha(alpha))


@lru_cache(maxsize=None)
def _make_Z_dual(j, n, alpha):
    Xs = make_Xs(n)
    first, second = _euler_factors(n, alpha)
    return (
        Xs * Xs * _dy(n, j)
        + I * (_x(n, j) * first * second)
        - Xs * _dq(n, j) * second
    )


def make_Z_dual(j, n, alpha=0):
    """Second family Z_{j+n}^[2n, alpha] = [Y_jj, Z_j^[2n, alpha]].

    X_s^2 d_{y_j} + i x_j (E+n-alpha)(2E+2n-1-2alpha) - X_s d_{q_j}(2E+2n-1-2alpha).
    The last term carries coefficient -1, not -i: only then does the
    operator commute correctly with D_s and preserve its kernel.
    """
    _check_n(n)
    _check_j(j, n)
    return _make_Z_dual(j, n, _alpha(alpha))


def rest_constant(n, k, a):
    """k - 2ak + 2k^2 + 2an - 4kn + a(a-1)/2, exactly."""
    return Fraction(k - 2 * a * k + 2 * k * k + 2 * a * n - 4 * k * n) + Fraction(a * (a - 1), 2)


@lru_cache(maxsize=None)
def make_rest_operator(j, n, k, a):
    """Rest term Psi_j with Z_j^[2n,k] X_s^a = X_s^a (Z_j^[2n,0] + Psi_j)."""
    _check_n(n)
    _check_j(j, n)
    if a < 0 or k < 0:
        raise ValueError("a and k must be nonnegative")
    E = make_Euler(n)
    inner = 2 * (a - 2 * k) * E + rest_constant(n, k, a)
    return -I * (_y(n, j) * inner) - I * (make_Xs(n) * _q(n, j)).scale(a - 2 * k)


class SymmetryReport:
    """Outcome of commuting a candidate symmetry with D_s."""

    def __init__(self, generator, commutator):
        self.generator = generator
        self.commutator = commutator

    @property
    def proper(self):
        return self.commutator.is_zero()

    def __bool__(self):
        return self.proper

    def to_json(self):
        return {"proper": self.proper, "commutator": self.commutator.to_json()}

    def __repr__(self):
        return f"SymmetryReport(proper={self.proper}, [Ds, g]={self.commutator})"


def check_proper_symmetry(g, n):
    """Return the canonical commutator [D_s, g]; empty means proper symmetry."""
    return SymmetryReport(g, op_commutator(make_Ds(n), g))


def verify_intertwining(j, n, k, a):
    """Check Z_j^[2n,k] X_s^a == X_s^a (Z_j^[2n,0] + Psi_j) as operators."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    Xa = make_Xs(n) ** a
    lhs = make_Z(j, n, k) * Xa
    rhs = Xa * (make_Z(j, n, 0) + make_rest_operator(j, n, k, a))
    return lhs == rhs
