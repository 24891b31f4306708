"""Orthogonal Clifford analysis on R^m: the classical Fueter-Sce construction.

Blades are stored as bitmasks (bit j-1 <-> e_j) with e_p e_q + e_q e_p =
-2 delta_pq.  A :class:`CliffordPolynomial` is a sparse map from
(exponent tuple, blade mask) to a Gaussian-rational coefficient; the
``terms`` property regroups it as exponent -> :class:`CliffordElement`.
"""

import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .exactnum import ONE, GaussianRational, as_gr

__all__ = [
    "CliffordElement",
    "CliffordPolynomial",
    "blade_product",
    "cl_mul",
    "dirac_apply",
    "laplacian_apply",
    "euler_apply",
    "e1bar",
    "e1bar_x_power",
    "raising_R_apply",
    "classical_fueter",
    "gegenbauer_coefficients",
    "gegenbauer_monogenic",
    "fueter_gegenbauer_constant",
    "dirac_power",
    "random_classical_monogenic",
    "classical_kernel_input",
]

MAX_M = 16


def _mask(indices, m):
    mask = 0
    for j in indices:
        if not 1 <= j <= m:
            raise IndexError(f"generator e_{j} out of range for m={m}")
        bit = 1 << (j - 1)
        if mask & bit:
            raise ValueError(f"repeated generator e_{j} in blade; use the product instead")
        mask |= bit
    return mask


def _indices(mask):
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


@lru_cache(maxsize=None)
def blade_product(a, b):
    """e_A e_B = sign * e_{A xor B}; returns (sign, mask)."""
    swaps = 0
    bb = b
    i = 0
    while bb:
        if bb & 1:
            swaps += bin(a >> (i + 1)).count("1")
        bb >>= 1
        i += 1
    swaps += bin(a & b).count("1")  # each e_j e_j = -1
    return (-1 if swaps & 1 else 1), a ^ b


def _grade_sign_conj(mask):
    r = bin(mask).count("1")
    # conjugation = reversion composed with grade involution
    return -1 if (r + r * (r - 1) // 2) & 1 else 1


class CliffordElement:
    """Element of the complex Clifford algebra on e_1..e_m."""

    __slots__ = ("m", "blades")

    def __init__(self, m, blades=None):
        if not 1 <= m <= MAX_M:
            raise ValueError(f"dimension m={m} outside 1..{MAX_M}")
        self.m = m
        clean: Dict[int, GaussianRational] = {}
        for key, c in (blades or {}).items():
            mask = key if isinstance(key, int) else _mask(key, m)
            if mask >> m:
                raise IndexError(f"blade mask {mask} out of range for m={m}")
            c = as_gr(c)
            s = clean.get(mask, 0) + c
            if s:
                clean[mask] = s
            else:
                clean.pop(mask, None)
        self.blades = clean

    @classmethod
    def _wrap(cls, m, blades):
        obj = object.__new__(cls)
        obj.m = m
        obj.blades = blades
        return obj

    @classmethod
    def scalar(cls, m, c=1):
        c = as_gr(c)
        return cls._wrap(m, {0: c} if c else {})

    @classmethod
    def e(cls, m, *indices):
        """The blade e_{i1} e_{i2} ... (indices may be unsorted or repeated)."""
        out = cls.scalar(m, 1)
        for j in indices:
            out = out * cls._wrap(m, {_mask((j,), m): ONE})
        return out

    def _same_m(self, other):
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.m, other)
        self._same_m(other)
        out = dict(self.blades)
        for k, c in other.blades.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return CliffordElement._wrap(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement._wrap(self.m, {k: -c for k, c in self.blades.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_gr(c)
        if not c:
            return CliffordElement._wrap(self.m, {})
        return CliffordElement._wrap(self.m, {k: v * c for k, v in self.blades.items()})

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        if isinstance(other, CliffordPolynomial):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def conj(self):
        """Clifford conjugation: anti-automorphism with conj(e_j) = -e_j."""
        return CliffordElement._wrap(
            self.m, {k: c * _grade_sign_conj(k) for k, c in self.blades.items()}
        )

    def grade(self, r):
        return CliffordElement._wrap(
            self.m, {k: c for k, c in self.blades.items() if bin(k).count("1") == r}
        )

    def scalar_part(self):
        return self.blades.get(0, GaussianRational(0))

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.m == other.m and self.blades == other.blades
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == CliffordElement.scalar(self.m, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.blades.items())))

    def __bool__(self):
        return bool(self.blades)

    def is_zero(self):
        return not self.blades

    def __str__(self):
        if not self.blades:
            return "0"
        parts = []
        for k in sorted(self.blades, key=lambda b: (bin(b).count("1"), _indices(b))):
            c = self.blades[k]
            name = "e" + "".join(str(j) for j in _indices(k)) if k else ""
            cs = str(c) if c.is_real() else f"({c})"
            if not name:
                parts.append(cs)
            elif c == 1 or c == -1:
                parts.append(name if c == 1 else "-" + name)
            else:
                parts.append(f"{cs}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CliffordElement(m={self.m}, {self})"

    def to_json(self):
        return [
            {"blade": _indices(k), **self.blades[k].to_json()}
            for k in sorted(self.blades, key=lambda b: (bin(b).count("1"), _indices(b)))
        ]

    @classmethod
    def from_json(cls, m, rows):
        return cls(m, {tuple(r["blade"]): GaussianRational.from_json(r) for r in rows})


def cl_mul(a, b):
    a._same_m(b)
    out: Dict[int, GaussianRational] = {}
    for ka, ca in a.blades.items():
        for kb, cb in b.blades.items():
            sign, k = blade_product(ka, kb)
            v = ca * cb
            if sign < 0:
                v = -v
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
    return CliffordElement._wrap(a.m, {k: c for k, c in out.items() if c})


PolyKey = Tuple[Tuple[int, ...], int]


class CliffordPolynomial:
    """Polynomial in x_1..x_m with Clifford-algebra coefficients."""

    __slots__ = ("m", "_c")

    def __init__(self, m, terms=None):
        if not 1 <= m <= MAX_M:
            raise ValueError(f"dimension m={m} outside 1..{MAX_M}")
        self.m = m
        flat: Dict[PolyKey, GaussianRational] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != m or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps} for m={m}")
            if not isinstance(coeff, CliffordElement):
                coeff = CliffordElement.scalar(m, coeff)
            for mask, c in coeff.blades.items():
                _acc(flat, (exps, mask), c)
        self._c = flat

    @classmethod
    def _wrap(cls, m, flat):
        obj = object.__new__(cls)
        obj.m = m
        obj._c = flat
        return obj

    @classmethod
    def zero(cls, m):
        return cls._wrap(m, {})

    @classmethod
    def constant(cls, m, c=1):
        if not isinstance(c, CliffordElement):
            c = CliffordElement.scalar(m, c)
        z = (0,) * m
        return cls._wrap(m, {(z, k): v for k, v in c.blades.items()})

    @classmethod
    def var(cls, m, j):
        """The scalar coordinate x_j."""
        e = [0] * m
        e[j - 1] = 1
        return cls._wrap(m, {(tuple(e), 0): ONE})

    @classmethod
    def vector_variable(cls, m, start=1):
        """sum_{j >= start} e_j x_j; start=2 gives the bold x of R^(m-1)."""
        flat = {}
        for j in range(start, m + 1):
            e = [0] * m
            e[j - 1] = 1
            flat[(tuple(e), 1 << (j - 1))] = ONE
        return cls._wrap(m, flat)

    @classmethod
    def norm_squared(cls, m):
        flat = {}
        for j in range(m):
            e = [0] * m
            e[j] = 2
            flat[(tuple(e), 0)] = ONE
        return cls._wrap(m, flat)

    @property
    def terms(self):
        grouped: Dict[Tuple[int, ...], Dict[int, GaussianRational]] = {}
        for (exps, mask), c in self._c.items():
            grouped.setdefault(exps, {})[mask] = c
        return {e: CliffordElement._wrap(self.m, b) for e, b in grouped.items()}

    def _same_m(self, other):
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other):
        if not isinstance(other, CliffordPolynomial):
            other = CliffordPolynomial.constant(self.m, other)
        self._same_m(other)
        out = dict(self._c)
        for k, c in other._c.items():
            _acc(out, k, c)
        return CliffordPolynomial._wrap(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordPolynomial._wrap(self.m, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_gr(c)
        if not c:
            return CliffordPolynomial.zero(self.m)
        return CliffordPolynomial._wrap(self.m, {k: v * c for k, v in self._c.items()})

    def __mul__(self, other):
        """Clifford product P*Q (noncommutative); constants multiply on the right."""
        if isinstance(other, CliffordElement):
            other = CliffordPolynomial.constant(self.m, other)
        if not isinstance(other, CliffordPolynomial):
            return self.scale(other)
        self._same_m(other)
        out: Dict[PolyKey, GaussianRational] = {}
        for (ea, ka), ca in self._c.items():
            for (eb, kb), cb in other._c.items():
                sign, k = blade_product(ka, kb)
                v = ca * cb
                if sign < 0:
                    v = -v
                key = (tuple(x + y for x, y in zip(ea, eb)), k)
                prev = out.get(key)
                out[key] = v if prev is None else prev + v
        return CliffordPolynomial._wrap(self.m, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, CliffordElement):
            return CliffordPolynomial.constant(self.m, other) * self
        return self.scale(other)

    def __pow__(self, k):
        out = CliffordPolynomial.constant(self.m, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, j):
        idx = j - 1
        out = {}
        for (exps, mask), c in self._c.items():
            e = exps[idx]
            if e:
                out[(exps[:idx] + (e - 1,) + exps[idx + 1:], mask)] = c * e
        return CliffordPolynomial._wrap(self.m, out)

    def conj(self):
        return CliffordPolynomial._wrap(
            self.m, {(e, k): c * _grade_sign_conj(k) for (e, k), c in self._c.items()}
        )

    def degrees(self):
        return sorted({sum(e) for e, _ in self._c})

    def __eq__(self, other):
        if isinstance(other, CliffordPolynomial):
            return self.m == other.m and self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self._c.items())))

    def __bool__(self):
        return bool(self._c)

    def is_zero(self):
        return not self._c

    def __len__(self):
        return len(self._c)

    def eval_at(self, point):
        point = [as_gr(v) for v in point]
        if len(point) != self.m:
            raise ValueError(f"expected {self.m} coordinates")
        out: Dict[int, GaussianRational] = {}
        for (exps, mask), c in self._c.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * x ** e
            _acc(out, mask, v)
        return CliffordElement._wrap(self.m, out)

    def __str__(self):
        if not self._c:
            return "0"
        names = [f"x{j}" for j in range(1, self.m + 1)]
        parts = []
        for exps, elem in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, exps) if e)
            parts.append(f"({elem})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"CliffordPolynomial(m={self.m}, {self})"

    def to_json(self):
        rows = []
        for exps, elem in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            rows.append({"ex": list(exps), "blades": elem.to_json()})
        return {"m": self.m, "terms": rows}

    @classmethod
    def from_json(cls, obj):
        m = int(obj["m"])
        return cls(m, {tuple(r["ex"]): CliffordElement.from_json(m, r["blades"]) for r in obj["terms"]})


def _acc(d, key, c):
    prev = d.get(key)
    if prev is None:
        if c:
            d[key] = c
    else:
        s = prev + c
        if s:
            d[key] = s
        else:
            del d[key]


def dirac_apply(P):
    """sum_j e_j d_{x_j} P, Clifford units acting from the left."""
    m = P.m
    out: Dict[PolyKey, GaussianRational] = {}
    for (exps, mask), c in P._c.items():
        for idx, e in enumerate(exps):
            if not e:
                continue
            sign, k = blade_product(1 << idx, mask)
            v = c * (e * sign)
            _acc(out, (exps[:idx] + (e - 1,) + exps[idx + 1:], k), v)
    return CliffordPolynomial._wrap(m, out)


def laplacian_apply(P, times=1):
    """Scalar Laplacian applied ``times`` times."""
    for _ in range(times):
        out: Dict[PolyKey, GaussianRational] = {}
        for (exps, mask), c in P._c.items():
            for idx, e in enumerate(exps):
                if e >= 2:
                    _acc(out, (exps[:idx] + (e - 2,) + exps[idx + 1:], mask), c * (e * (e - 1)))
        P = CliffordPolynomial._wrap(P.m, out)
        if P.is_zero():
            break
    return P


def euler_apply(P):
    """sum_j x_j d_{x_j}: multiplies each monomial by its degree."""
    return CliffordPolynomial._wrap(
        P.m, {(e, k): c * sum(e) for (e, k), c in P._c.items() if sum(e)}
    )


def e1bar(m):
    return CliffordElement.e(m, 1).conj()


def e1bar_x_power(k, m):
    """(conj(e_1) x)^k with x the vector variable of R^m."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    base = e1bar(m) * CliffordPolynomial.vector_variable(m)
    return base ** k


def raising_R_apply(P, alpha):
    """-|x|^2 d_{x_1} P + x_1 (2E + m - 1 + alpha) P + (bold x) e_1 P."""
    m = P.m
    alpha = Fraction(alpha)
    x1 = CliffordPolynomial.var(m, 1)
    shifted = euler_apply(P).scale(2) + P.scale(GaussianRational(m - 1 + alpha))
    bold_x_e1 = CliffordPolynomial.vector_variable(m, start=2) * CliffordElement.e(m, 1)
    return (
        -(CliffordPolynomial.norm_squared(m) * P.diff(1))
        + x1 * shifted
        + bold_x_e1 * P
    )


def classical_fueter(k, m):
    """Delta^(m/2 - 1) applied to (conj(e_1) x)^k, for even m."""
    if m % 2:
        raise ValueError(f"classical Fueter map needs even m, got {m}")
    if m < 2:
        raise ValueError("m must be >= 2")
    return laplacian_apply(e1bar_x_power(k, m), m // 2 - 1)


def gegenbauer_coefficients(degree, lam):
    """Coefficients [c_0..c_degree] of C_degree^lam(t), by the three-term recurrence.

    n C_n = 2 t (n + lam - 1) C_{n-1} - (n + 2 lam - 2) C_{n-2}.
    """
    lam = Fraction(lam)
    prev = [Fraction(1)]
    if degree == 0:
        return prev
    cur = [Fraction(0), 2 * lam]
    for n in range(2, degree + 1):
        nxt = [Fraction(0)] * (n + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * (n + lam - 1) * c / n
        for i, c in enumerate(prev):
            nxt[i] -= (n + 2 * lam - 2) * c / n
        prev, cur = cur, nxt
    return cur


def _axial_harmonic(k, m):
    # |x|^(k+1) C_{k+1}^(m/2-1)(x_1/|x|) as a genuine polynomial
    deg = k + 1
    coeffs = gegenbauer_coefficients(deg, Fraction(m, 2) - 1)
    r2 = CliffordPolynomial.norm_squared(m)
    x1 = CliffordPolynomial.var(m, 1)
    total = CliffordPolynomial.zero(m)
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if (deg - i) % 2:
            raise ArithmeticError("Gegenbauer polynomial has the wrong parity")
        total = total + ((x1 ** i) * (r2 ** ((deg - i) // 2))).scale(c)
    return total


def gegenbauer_monogenic(k, m):
    """Dirac operator applied to |x|^(k+1) C_{k+1}^(m/2-1)(x_1/|x|)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if m % 2 or m < 4:
        raise ValueError(f"need even m >= 4, got {m}")
    return dirac_apply(_axial_harmonic(k, m))


def fueter_gegenbauer_constant(k, m):
    """Scalar c with  classical_fueter(k + m - 2, m) == c * gegenbauer_monogenic(k, m) * conj(e_1).

    The Fueter image of z^(k+m-2) has degree k, matching the Gegenbauer
    monogenic of index k; its values are scalar + bivector, so the
    vector-valued Gegenbauer monogenic is turned by conj(e_1) on the right
    (right multiplication by a constant preserves left monogenicity).
    Returns None when the two are not proportional.
    """
    F = classical_fueter(k + m - 2, m)
    G = gegenbauer_monogenic(k, m) * e1bar(m)
    if G.is_zero():
        return GaussianRational(0) if F.is_zero() else None
    key, g0 = next(iter(G._c.items()))
    c = F._c.get(key, GaussianRational(0)) / g0
    return c if F == G.scale(c) else None


def dirac_power(P, r):
    for _ in range(r):
        if P.is_zero():
            break
        P = dirac_apply(P)
    return P


def random_classical_monogenic(m, degree, rng):
    """R^[m,0]-images of 1 and e_1, with random Clifford constants on the right.

    R^[m,0] preserves the kernel of the Dirac operator and right
    multiplication by a constant does too, so the result is monogenic.
    """
    a = CliffordPolynomial.constant(m, 1)
    b = CliffordPolynomial.constant(m, CliffordElement.e(m, 1))
    for _ in range(degree):
        a = raising_R_apply(a, 0)
        b = raising_R_apply(b, 0)
    c1 = CliffordElement(m, {rng.randrange(2 ** m): GaussianRational(rng.randint(1, 3), rng.randint(-2, 2))})
    c2 = CliffordElement(m, {rng.randrange(2 ** m): GaussianRational(rng.randint(-3, -1), rng.randint(-2, 2))})
    out = a * c1 + b * c2
    if not dirac_apply(out).is_zero():
        raise ArithmeticError(f"R^[{m},0] left the kernel at degree {degree}")
    return out


def classical_kernel_input(m, k, seed=0, max_degree=3):
    """sum_{a <= 2k} x^a M_a with M_a random monogenics: an element of ker(Dirac^(2k+1))."""
    rng = random.Random(f"classical:{m}:{k}:{seed}")
    x = CliffordPolynomial.vector_variable(m)
    P = CliffordPolynomial.zero(m)
    for a in range(2 * k + 1):
        P = P + (x ** a) * random_classical_monogenic(m, rng.randint(0, max_degree), rng)
    return P
