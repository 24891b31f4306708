"""Polynomials over Q(i) in the 3n variables x_j, y_j, q_j and spinor functions.

A monomial is keyed by a flat exponent tuple of length 3n laid out as
``(x_1..x_n, y_1..y_n, q_1..q_n)``.  A :class:`SpinorFunction` is such a
polynomial times the implicit weight ``exp(-|q|^2/2)``; every operator in
this package maps that space to itself.
"""

from functools import lru_cache
from typing import Dict, NamedTuple, Tuple

from .exactnum import ONE, GaussianRational, as_gr

__all__ = [
    "ExponentVector",
    "SymplecticPolynomial",
    "SpinorFunction",
    "var_index",
    "canonical_key",
    "poly_add",
    "poly_mul",
    "spinor_diff",
    "homogeneous_component",
    "eval_at",
    "gaussian_derivative",
]

Key = Tuple[int, ...]

_BLOCKS = {"x": 0, "y": 1, "q": 2}


class ExponentVector(NamedTuple):
    ex: Tuple[int, ...]
    ey: Tuple[int, ...]
    eq: Tuple[int, ...]

    @property
    def n(self):
        return len(self.ex)

    def key(self):
        return tuple(self.ex) + tuple(self.ey) + tuple(self.eq)

    @classmethod
    def from_key(cls, key, n):
        return cls(tuple(key[:n]), tuple(key[n:2 * n]), tuple(key[2 * n:]))


def var_index(n, kind, j):
    """Position of variable ``kind_j`` (kind in 'xyq', j 1-based) in a key."""
    if kind not in _BLOCKS:
        raise ValueError(f"unknown variable kind {kind!r}")
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range for n={n}")
    return _BLOCKS[kind] * n + (j - 1)


def canonical_key(key):
    """Graded-lex sort key: total degree first, then the exponent tuple."""
    return (sum(key), key)


def _check_key(key, n):
    if len(key) != 3 * n:
        raise ValueError(f"exponent vector of length {len(key)} for n={n}")
    for e in key:
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"bad exponent {e!r}")


class SymplecticPolynomial:
    """Sparse polynomial in (x, y, q) with Gaussian-rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("dimension n must be >= 1")
        self.n = n
        clean: Dict[Key, GaussianRational] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            _check_key(key, n)
            c = as_gr(c)
            if c:
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self.terms = clean

    @classmethod
    def _wrap(cls, n, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n):
        return cls._wrap(n, {})

    @classmethod
    def constant(cls, n, c=1):
        c = as_gr(c)
        return cls._wrap(n, {(0,) * (3 * n): c} if c else {})

    @classmethod
    def variable(cls, n, kind, j):
        key = [0] * (3 * n)
        key[var_index(n, kind, j)] = 1
        return cls._wrap(n, {tuple(key): ONE})

    @classmethod
    def monomial(cls, n, ex=None, ey=None, eq=None, coeff=1):
        key = tuple(ex or (0,) * n) + tuple(ey or (0,) * n) + tuple(eq or (0,) * n)
        return cls(n, {key: coeff})

    # ring operations ---------------------------------------------------

    def _same_n(self, other):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, SymplecticPolynomial):
            return self + SymplecticPolynomial.constant(self.n, other)
        self._same_n(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return SymplecticPolynomial._wrap(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SymplecticPolynomial._wrap(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_gr(c)
        if not c:
            return SymplecticPolynomial.zero(self.n)
        return SymplecticPolynomial._wrap(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymplecticPolynomial):
            return self.scale(other)
        self._same_n(other)
        out: Dict[Key, GaussianRational] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                c = ca * cb
                prev = out.get(key)
                out[key] = c if prev is None else prev + c
        return SymplecticPolynomial._wrap(self.n, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = SymplecticPolynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, key, c=ONE):
        """Multiply by the monomial ``c * v^key``."""
        return SymplecticPolynomial._wrap(
            self.n,
            {tuple(a + b for a, b in zip(k, key)): v * c for k, v in self.terms.items()},
        )

    def diff(self, kind, j):
        """Ordinary partial derivative in ``kind_j``."""
        idx = var_index(self.n, kind, j)
        out = {}
        for key, c in self.terms.items():
            e = key[idx]
            if e:
                nk = key[:idx] + (e - 1,) + key[idx + 1:]
                out[nk] = c * e
        return SymplecticPolynomial._wrap(self.n, out)

    # queries -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SymplecticPolynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, GaussianRational)) or hasattr(other, "denominator"):
            return self == SymplecticPolynomial.constant(self.n, other)
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
        return sorted(self.terms.items(), key=lambda kv: canonical_key(kv[0]))

    def xy_degrees(self):
        n2 = 2 * self.n
        return sorted({sum(k[:n2]) for k in self.terms})

    def __call__(self, *point):
        return eval_at(self, point)

    def __str__(self):
        return _format_terms(self.n, self.sorted_terms())

    def __repr__(self):
        return f"SymplecticPolynomial(n={self.n}, {self})"

    # serialization -----------------------------------------------------

    def to_json(self):
        n = self.n
        rows = []
        for key, c in self.sorted_terms():
            ev = ExponentVector.from_key(key, n)
            rows.append({"ex": list(ev.ex), "ey": list(ev.ey), "eq": list(ev.eq), **c.to_json()})
        return rows

    @classmethod
    def from_json(cls, n, rows):
        terms = {}
        for row in rows:
            key = tuple(row["ex"]) + tuple(row["ey"]) + tuple(row["eq"])
            c = GaussianRational.from_json(row)
            terms[key] = terms.get(key, 0) + c
        return cls(n, terms)


def _accumulate(out, terms, factor=None):
    for key, c in terms.items():
        if factor is not None:
            c = c * factor
        prev = out.get(key)
        if prev is None:
            out[key] = c
        else:
            s = prev + c
            if s:
                out[key] = s
            else:
                del out[key]


def _format_terms(n, items):
    if not items:
        return "0"
    names = [f"{v}{j}" for v in "xyq" for j in range(1, n + 1)]
    parts = []
    for key, c in items:
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, key) if e
        )
        cs = str(c)
        if not mono:
            parts.append(f"({cs})" if not c.is_real() else cs)
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"({cs})*{mono}" if not c.is_real() else f"{cs}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def gaussian_derivative(e, d):
    """Coefficients of ``d^d/dq^d (q^e exp(-q^2/2))`` divided by the Gaussian.

    Returns a tuple of ``(exponent, integer coefficient)`` pairs.
    """
    if d == 0:
        return ((e, 1),)
    acc: Dict[int, int] = {}
    for t, c in gaussian_derivative(e, d - 1):
        if t:
            acc[t - 1] = acc.get(t - 1, 0) + c * t
        acc[t + 1] = acc.get(t + 1, 0) - c
    return tuple(sorted((t, c) for t, c in acc.items() if c))


class SpinorFunction:
    """``poly(x, y, q) * exp(-|q|^2/2)``; the weight is never stored."""

    __slots__ = ("poly",)

    def __init__(self, poly):
        if not isinstance(poly, SymplecticPolynomial):
            raise TypeError("SpinorFunction wraps a SymplecticPolynomial")
        self.poly = poly

    @classmethod
    def gaussian(cls, n):
        """The spinor psi(q) = exp(-|q|^2/2) itself."""
        return cls(SymplecticPolynomial.constant(n, 1))

    @classmethod
    def zero(cls, n):
        return cls(SymplecticPolynomial.zero(n))

    @property
    def n(self):
        return self.poly.n

    @property
    def terms(self):
        return self.poly.terms

    def __add__(self, other):
        return SpinorFunction(self.poly + other.poly)

    def __sub__(self, other):
        return SpinorFunction(self.poly - other.poly)

    def __neg__(self):
        return SpinorFunction(-self.poly)

    def scale(self, c):
        return SpinorFunction(self.poly.scale(c))

    def __mul__(self, other):
        if isinstance(other, SpinorFunction):
            raise TypeError("product of two spinor functions leaves the space")
        if isinstance(other, SymplecticPolynomial):
            return SpinorFunction(self.poly * other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, SpinorFunction):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return self.poly.is_zero()

    def __len__(self):
        return len(self.poly)

    def diff(self, kind, j):
        return spinor_diff(self, kind, j)

    def xy_degrees(self):
        return self.poly.xy_degrees()

    def component(self, ell):
        return homogeneous_component(self, ell)

    def components(self):
        """Map (x,y)-degree -> homogeneous component."""
        n2 = 2 * self.n
        groups: Dict[int, dict] = {}
        for key, c in self.poly.terms.items():
            groups.setdefault(sum(key[:n2]), {})[key] = c
        return {
            d: SpinorFunction(SymplecticPolynomial._wrap(self.n, t))
            for d, t in sorted(groups.items())
        }

    def __str__(self):
        s = str(self.poly)
        return "0" if s == "0" else f"({s})*psi"

    def __repr__(self):
        return f"SpinorFunction(n={self.n}, {self})"

    def to_json(self):
        return {"n": self.n, "gaussian": True, "terms": self.poly.to_json()}

    @classmethod
    def from_json(cls, obj):
        if not obj.get("gaussian", False):
            raise ValueError("spinor JSON must carry \"gaussian\": true")
        return cls(SymplecticPolynomial.from_json(int(obj["n"]), obj["terms"]))


def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


def spinor_diff(f, kind, j):
    """Partial derivative of ``f = p * exp(-|q|^2/2)``.

    For x_j and y_j this is the plain derivative of p; for q_j the product
    rule against the weight gives ``dp/dq_j - q_j p``.
    """
    n = f.n
    idx = var_index(n, kind, j)
    if kind != "q":
        return SpinorFunction(f.poly.diff(kind, j))
    out: Dict[Key, GaussianRational] = {}
    for key, c in f.poly.terms.items():
        e = key[idx]
        for t, m in gaussian_derivative(e, 1):
            nk = key[:idx] + (t,) + key[idx + 1:]
            v = c * m
            prev = out.get(nk)
            out[nk] = v if prev is None else prev + v
    return SpinorFunction(SymplecticPolynomial._wrap(n, {k: c for k, c in out.items() if c}))


def homogeneous_component(f, ell):
    """Terms of ``f`` of total (x,y)-degree ``ell``; q-degree is ignored."""
    n2 = 2 * f.n
    return SpinorFunction(
        SymplecticPolynomial._wrap(
            f.n, {k: c for k, c in f.poly.terms.items() if sum(k[:n2]) == ell}
        )
    )


def eval_at(p, point):
    """Evaluate a SymplecticPolynomial at 3n exact values (x block, y block, q block)."""
    if isinstance(p, SpinorFunction):
        p = p.poly
    point = [as_gr(v) for v in point]
    if len(point) != 3 * p.n:
        raise ValueError(f"expected {3 * p.n} coordinates, got {len(point)}")
    powers: Dict[Tuple[int, int], GaussianRational] = {}

    def pw(i, e):
        v = powers.get((i, e))
        if v is None:
            v = point[i] ** e
            powers[(i, e)] = v
        return v

    total = GaussianRational(0)
    for key, c in p.terms.items():
        term = c
        for i, e in enumerate(key):
            if e:
                term = term * pw(i, e)
        total = total + term
    return total
