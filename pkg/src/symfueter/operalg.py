"""Normal-ordered polynomial differential operators acting on spinor functions.

An operator is a finite sum of monomials ``c * v^mul * d^der`` in which
every multiplication stands left of every derivative.  Composition
re-normal-orders with the per-variable rule

    d^k v^m = sum_j j! C(k,j) C(m,j) v^(m-j) d^(k-j)

and distinct variables commute.  Application to a :class:`SpinorFunction`
takes the q-derivatives against the implicit Gaussian weight.
"""

from itertools import product
from math import comb, factorial
from typing import Dict, Tuple

from .exactnum import ONE, GaussianRational, as_gr
from .polyspinor import (
    ExponentVector,
    SpinorFunction,
    SymplecticPolynomial,
    _accumulate,
    canonical_key,
    gaussian_derivative,
    var_index,
)

__all__ = [
    "WeylOperator",
    "op_compose",
    "op_commutator",
    "op_apply",
    "op_apply_power",
    "solve_in_span",
]

OpKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _falling(e, d):
    r = 1
    for t in range(e - d + 1, e + 1):
        r *= t
    return r


def _ordering_table(k, m):
    # d^k v^m  ->  [(shift j, integer coefficient)]
    return [(j, factorial(j) * comb(k, j) * comb(m, j)) for j in range(min(k, m) + 1)]


class WeylOperator:
    """Sparse normal-ordered operator in the Weyl algebra on (x, y, q)."""

    __slots__ = ("n", "terms", "_plan")

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("dimension n must be >= 1")
        self.n = n
        size = 3 * n
        clean: Dict[OpKey, GaussianRational] = {}
        for (mul, der), c in (terms or {}).items():
            mul, der = tuple(mul), tuple(der)
            if len(mul) != size or len(der) != size:
                raise ValueError("exponent blocks must have length 3n")
            if min(mul + der, default=0) < 0:
                raise ValueError("negative exponent")
            c = as_gr(c)
            if c:
                key = (mul, der)
                s = clean.get(key, 0) + c
                if s:
                    clean[key] = s
                else:
                    clean.pop(key, None)
        self.terms = clean
        self._plan = None

    @classmethod
    def _wrap(cls, n, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        obj._plan = None
        return obj

    # elementary operators ---------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls._wrap(n, {})

    @classmethod
    def scalar(cls, n, c=1):
        c = as_gr(c)
        z = (0,) * (3 * n)
        return cls._wrap(n, {(z, z): c} if c else {})

    @classmethod
    def identity(cls, n):
        return cls.scalar(n, 1)

    @classmethod
    def mult(cls, n, kind, j, power=1):
        """Multiplication by ``kind_j ** power``."""
        key = [0] * (3 * n)
        key[var_index(n, kind, j)] = power
        return cls._wrap(n, {(tuple(key), (0,) * (3 * n)): ONE})

    @classmethod
    def deriv(cls, n, kind, j, power=1):
        """The partial derivative ``d/d kind_j`` raised to ``power``."""
        key = [0] * (3 * n)
        key[var_index(n, kind, j)] = power
        return cls._wrap(n, {((0,) * (3 * n), tuple(key)): ONE})

    # algebra ------------------------------------------------------------

    def _same_n(self, other):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, WeylOperator):
            other = WeylOperator.scalar(self.n, other)
        self._same_n(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return WeylOperator._wrap(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOperator._wrap(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_gr(c)
        if not c:
            return WeylOperator.zero(self.n)
        return WeylOperator._wrap(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylOperator):
            return op_compose(self, other)
        if isinstance(other, SpinorFunction):
            raise TypeError("use op(f) or op_apply(op, f) to act on a spinor")
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("operator power must be a nonnegative integer")
        result = WeylOperator.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = op_compose(result, base)
            k >>= 1
            if k:
                base = op_compose(base, base)
        return result

    def __call__(self, f):
        return op_apply(self, f)

    def __eq__(self, other):
        if isinstance(other, WeylOperator):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, GaussianRational)):
            return self == WeylOperator.scalar(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (canonical_key(kv[0][0]), canonical_key(kv[0][1])),
        )

    def __str__(self):
        if not self.terms:
            return "0"
        n = self.n
        names = [f"{v}{j}" for v in "xyq" for j in range(1, n + 1)]
        parts = []
        for (mul, der), c in self.sorted_terms():
            factors = [nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, mul) if e]
            factors += [f"d{nm}" if e == 1 else f"d{nm}^{e}" for nm, e in zip(names, der) if e]
            mono = "*".join(factors)
            cs = str(c) if c.is_real() else f"({c})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WeylOperator(n={self.n}, {self})"

    def to_json(self):
        n = self.n
        rows = []
        for (mul, der), c in self.sorted_terms():
            m = ExponentVector.from_key(mul, n)
            d = ExponentVector.from_key(der, n)
            rows.append({
                "mul": {"ex": list(m.ex), "ey": list(m.ey), "eq": list(m.eq)},
                "der": {"ex": list(d.ex), "ey": list(d.ey), "eq": list(d.eq)},
                **c.to_json(),
            })
        return {"n": n, "terms": rows}

    @classmethod
    def from_json(cls, obj):
        n = int(obj["n"])
        terms = {}
        for row in obj["terms"]:
            m, d = row["mul"], row["der"]
            key = (
                tuple(m["ex"]) + tuple(m["ey"]) + tuple(m["eq"]),
                tuple(d["ex"]) + tuple(d["ey"]) + tuple(d["eq"]),
            )
            terms[key] = terms.get(key, 0) + GaussianRational.from_json(row)
        return cls(n, terms)

    # application plan: per monomial, the plain and Gaussian derivative slots
    def _application_plan(self):
        if self._plan is None:
            n2 = 2 * self.n
            plan = []
            for (mul, der), c in self.terms.items():
                plain = tuple((i, d) for i, d in enumerate(der[:n2]) if d)
                gauss = tuple((n2 + i, d) for i, d in enumerate(der[n2:]) if d)
                plan.append((mul, plain, gauss, c))
            self._plan = plan
        return self._plan


def op_compose(a, b):
    """The product ``a o b`` in normal order."""
    a._same_n(b)
    out: Dict[OpKey, GaussianRational] = {}
    tables = {}
    for (ma, da), ca in a.terms.items():
        for (mb, db), cb in b.terms.items():
            coeff = ca * cb
            # variables where a derivative of a meets a multiplication of b
            clash = [i for i, (k, m) in enumerate(zip(da, mb)) if k and m]
            base_mul = [x + y for x, y in zip(ma, mb)]
            base_der = [x + y for x, y in zip(da, db)]
            if not clash:
                key = (tuple(base_mul), tuple(base_der))
                prev = out.get(key)
                out[key] = coeff if prev is None else prev + coeff
                continue
            options = []
            for i in clash:
                km = (da[i], mb[i])
                t = tables.get(km)
                if t is None:
                    t = tables[km] = _ordering_table(*km)
                options.append(t)
            for choice in product(*options):
                mul = list(base_mul)
                der = list(base_der)
                w = 1
                for i, (j, c) in zip(clash, choice):
                    mul[i] -= j
                    der[i] -= j
                    w *= c
                key = (tuple(mul), tuple(der))
                v = coeff * w
                prev = out.get(key)
                out[key] = v if prev is None else prev + v
    return WeylOperator._wrap(a.n, {k: c for k, c in out.items() if c})


def op_commutator(a, b):
    """``[a, b] = a o b - b o a``."""
    return op_compose(a, b) - op_compose(b, a)


def op_apply(a, f):
    """Act with operator ``a`` on spinor function ``f`` (derivatives first)."""
    if not isinstance(f, SpinorFunction):
        raise TypeError("op_apply expects a SpinorFunction")
    if a.n != f.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {f.n}")
    out: Dict[Tuple[int, ...], GaussianRational] = {}
    fterms = f.poly.terms
    for mul, plain, gauss, c in a._application_plan():
        for key, fc in fterms.items():
            w = 1
            k = list(key)
            dead = False
            for i, d in plain:
                e = k[i]
                if e < d:
                    dead = True
                    break
                w *= _falling(e, d)
                k[i] = e - d
            if dead:
                continue
            for i, m in enumerate(mul):
                if m:
                    k[i] += m
            base = fc * c if w == 1 else fc * (c * w)
            if not gauss:
                nk = tuple(k)
                prev = out.get(nk)
                out[nk] = base if prev is None else prev + base
                continue
            options = [gaussian_derivative(key[i], d) for i, d in gauss]
            for choice in product(*options):
                w2 = 1
                for (i, _), (t, m) in zip(gauss, choice):
                    # k[i] currently holds key[i] + mul[i]; replace the key part by t
                    k[i] = t + mul[i]
                    w2 *= m
                nk = tuple(k)
                v = base * w2
                prev = out.get(nk)
                out[nk] = v if prev is None else prev + v
    return SpinorFunction(SymplecticPolynomial._wrap(f.n, {k: v for k, v in out.items() if v}))


def op_apply_power(a, k, f):
    """``a^k f`` by iterated application; ``a^k`` is never formed."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    if a.n != f.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {f.n}")
    for _ in range(k):
        if f.is_zero():
            break
        f = op_apply(a, f)
    return f


def solve_in_span(target, basis):
    """Coefficients ``c`` with ``sum c_i basis_i == target``, or None.

    Works for any objects exposing a ``terms`` dict with GaussianRational
    values (operators, polynomials).  Exact Gaussian elimination.
    """
    keys = sorted(
        set(target.terms).union(*(b.terms for b in basis)), key=repr
    )
    ncols = len(basis)
    rows = [
        [b.terms.get(key, GaussianRational(0)) for b in basis] + [target.terms.get(key, GaussianRational(0))]
        for key in keys
    ]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    sol = [GaussianRational(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol
