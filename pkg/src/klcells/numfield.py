"""Exact scalar arithmetic.

Three layers, all exact:

* ``MinPolyField`` / ``AlgebraicNumber``: the real field Q(2cos(pi/m)),
  represented as Q[x]/(m(x)) where m(x) is the minimal polynomial of
  2cos(pi/m).  Equality is decided coordinate-wise; the *sign* of an
  element is decided by refinable interval arithmetic around the
  distinguished real root, never by floating point.

* ``LaurentPoly``: sparse Laurent polynomials in one variable v with
  integer exponents.  Coefficients may be ints, Fractions or
  AlgebraicNumbers (duck-typed); no zero coefficients are stored.

* truncated power series helpers (used for Molien-style computations).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "MinPolyField",
    "AlgebraicNumber",
    "LaurentPoly",
    "NEG_INF",
    "QQ",
    "cyclotomic_polynomial",
    "real_cyclotomic_minpoly",
    "series_inverse",
    "series_mul",
]

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense lists, low degree first)

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod_exact(p, q):
    """Divide p by q in Z[x] assuming the division is exact and q is monic
    up to sign of its leading coefficient dividing everything."""
    p = list(p)
    q = list(q)
    out = [0] * (len(p) - len(q) + 1)
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        c = p[-1] // q[-1]
        out[shift] = c
        for i, b in enumerate(q):
            p[shift + i] -= c * b
        _poly_trim(p)
    if p:
        raise ArithmeticError("inexact polynomial division")
    return _poly_trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    p = [-1] + [0] * (n - 1) + [1]          # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divmod_exact(p, list(cyclotomic_polynomial(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def real_cyclotomic_minpoly(m: int) -> tuple:
    """Minimal polynomial over Q of 2cos(pi/m), monic with int coefficients.

    2cos(pi/m) = zeta + 1/zeta for zeta a primitive 2m-th root of unity;
    the minimal polynomial is obtained by folding the (palindromic)
    cyclotomic polynomial of order 2m through y^k + y^-k = D_k(x).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return (2, 1)                        # x + 2, root -2
    n = 2 * m
    phi = list(cyclotomic_polynomial(n))
    d = (len(phi) - 1) // 2                  # phi(2m)/2
    # Dickson polynomials D_k with D_k(y + 1/y) = y^k + y^-k
    dick = [[2], [0, 1]]
    for _ in range(2, d + 1):
        nxt = [0] * (len(dick[-1]) + 1)
        for i, c in enumerate(dick[-1]):
            nxt[i + 1] += c
        for i, c in enumerate(dick[-2]):
            nxt[i] -= c
        dick.append(_poly_trim(nxt))
    out = [0] * (d + 1)
    out[0] += phi[d]
    for k in range(1, d + 1):
        c = phi[d + k]
        if c:
            for i, b in enumerate(dick[k]):
                out[i] += c * b
    return tuple(_poly_trim(out))


class MinPolyField:
    """The real field Q(2cos(pi/m)) with its distinguished real root.

    Instances are interned per m; the rational field is ``QQ`` (m = 3,
    where 2cos(pi/3) = 1 so the field has degree 1).
    """

    _cache: dict = {}

    def __new__(cls, m: int):
        if m in cls._cache:
            return cls._cache[m]
        self = object.__new__(cls)
        self.m = m
        mp = real_cyclotomic_minpoly(m)
        self.minimal_polynomial = tuple(int(c) for c in mp)
        self.degree = len(mp) - 1
        # reduction row: x^degree = -(lower coefficients)
        self._red = tuple(Fraction(-c) for c in mp[:-1])
        # isolating interval for the root 2cos(pi/m), refinable
        if self.degree == 1:
            lo = hi = Fraction(-self.minimal_polynomial[0])
        else:
            r = 2.0 * math.cos(math.pi / m)
            lo = Fraction(r - 1e-9).limit_denominator(10**12)
            hi = Fraction(r + 1e-9).limit_denominator(10**12)
            while not (self._eval_sign(lo) * self._eval_sign(hi) < 0):
                lo -= Fraction(1, 10**9)
                hi += Fraction(1, 10**9)
        self._root_lo = lo
        self._root_hi = hi
        self.one = AlgebraicNumber(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))
        self.zero = AlgebraicNumber(self, (Fraction(0),) * self.degree)
        gen = [Fraction(0)] * self.degree
        if self.degree == 1:
            gen[0] = Fraction(self.minimal_polynomial[0], -1)
        else:
            gen[1] = Fraction(1)
        self.generator = AlgebraicNumber(self, tuple(gen))
        cls._cache[m] = self
        return self

    def _eval_sign(self, x: Fraction) -> int:
        acc = Fraction(0)
        for c in reversed(self.minimal_polynomial):
            acc = acc * x + c
        return (acc > 0) - (acc < 0)

    def refine_root(self):
        mid = (self._root_lo + self._root_hi) / 2
        s = self._eval_sign(mid)
        if s == 0:
            self._root_lo = self._root_hi = mid
        elif s == self._eval_sign(self._root_lo):
            self._root_lo = mid
        else:
            self._root_hi = mid

    def element(self, value) -> "AlgebraicNumber":
        """Coerce a rational (or AlgebraicNumber of a degree-1 field)."""
        if isinstance(value, AlgebraicNumber):
            if value.field is self:
                return value
            if value.is_rational():
                value = value.rational_value()
            else:
                raise TypeError(f"cannot coerce from {value.field} to {self}")
        v = Fraction(value)
        return AlgebraicNumber(self, (v,) + (Fraction(0),) * (self.degree - 1))

    def cos2pi(self, num: int, den: int) -> "AlgebraicNumber":
        """2cos(2*pi*num/den) as a field element, when expressible.

        Requires den | 2*m*num'... concretely 2cos(2pi k/o) = 2cos(pi j/m)
        with j = 2*k*m/o, which must be an integer.
        """
        j2 = 2 * num * self.m
        if j2 % den:
            raise ValueError(f"2cos(2pi*{num}/{den}) not expressible in Q(2cos(pi/{self.m}))")
        return self.dickson(j2 // den)

    def dickson(self, j: int) -> "AlgebraicNumber":
        """D_j(generator), i.e. 2cos(j*pi/m)."""
        j = abs(j)
        two = self.element(2)
        if j == 0:
            return two
        prev, cur = two, self.generator
        for _ in range(j - 1):
            prev, cur = cur, self.generator * cur - prev
        return cur

    def __repr__(self):
        return f"MinPolyField(m={self.m}, degree={self.degree})"


class AlgebraicNumber:
    """Element of a MinPolyField in the power basis of 2cos(pi/m)."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: MinPolyField, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        assert len(self.coeffs) == field.degree
        self._hash = None

    # -- coercion -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is self.field:
                return other
            if other.is_rational():
                return self.field.element(other.rational_value())
            if self.is_rational():
                return NotImplemented
            raise TypeError("mixed irrational fields")
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    # -- ring ops -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return AlgebraicNumber(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        red = self.field._red
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for i, r in enumerate(red):
                    prod[k - d + i] += c * r
        return AlgebraicNumber(self.field, tuple(prod[:d]))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        """Multiplicative inverse via extended Euclid in Q[x] mod m(x)."""
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero algebraic number")
        d = self.field.degree
        if d == 1:
            return AlgebraicNumber(self.field, (1 / self.coeffs[0],))
        # extended gcd of a(x) and m(x)
        a = list(self.coeffs)
        m = [Fraction(c) for c in self.field.minimal_polynomial]
        r0, r1 = m, _poly_trim(a)
        s0, s1 = [], [Fraction(1)]
        while True:
            if len(r1) == 1:
                inv = [c / r1[0] for c in s1]
                inv += [Fraction(0)] * (d - len(inv))
                return AlgebraicNumber(self.field, tuple(inv[:d]))
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_poly_sub(s0, _poly_mul_frac(q, s1))
            if not r1:
                raise ArithmeticError("minimal polynomial not irreducible?")

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- comparisons ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if isinstance(other, AlgebraicNumber):
            if other.field is self.field:
                return self.coeffs == other.coeffs
            if self.is_rational() and other.is_rational():
                return self.rational_value() == other.rational_value()
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.field.m, self.coeffs))
        return self._hash

    def sign(self) -> int:
        """Exact sign, via interval refinement on the distinguished root."""
        if not any(self.coeffs):
            return 0
        if all(c == 0 for c in self.coeffs[1:]):
            c = self.coeffs[0]
            return (c > 0) - (c < 0)
        f = self.field
        for _ in range(400):
            lo, hi = _interval_horner(self.coeffs, f._root_lo, f._root_hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            f.refine_root()
        raise ArithmeticError("sign undecided after 400 refinements")

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __bool__(self):
        return any(self.coeffs)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- queries --------------------------------------------------------
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is irrational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def integer_value(self) -> int:
        v = self.rational_value()
        if v.denominator != 1:
            raise ValueError(f"{self!r} is not an integer")
        return v.numerator

    def galois_conjugates(self):
        """All images of self under Gal of the field (self included)."""
        f = self.field
        if f.degree == 1:
            return [self]
        out = []
        for root in _field_real_roots(f):
            out.append(_eval_in_field(self.coeffs, root))
        return out

    def __float__(self):
        f = self.field
        r = (f._root_lo + f._root_hi) / 2
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return float(acc)

    def __repr__(self):
        if self.is_rational():
            return f"AN({self.coeffs[0]})"
        return f"AN({list(self.coeffs)} @ m={self.field.m})"


def _frac_poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while a and len(a) >= len(b):
        c = a[-1] / b[-1]
        q[len(a) - len(b)] = c
        for i, bb in enumerate(b):
            a[len(a) - len(b) + i] -= c * bb
        _poly_trim(a)
    return _poly_trim(q), a


def _frac_poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


def _poly_mul_frac(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def _interval_horner(coeffs, lo, hi):
    """Exact interval evaluation of sum coeffs[i] x^i over [lo, hi]."""
    alo = ahi = Fraction(0)
    for c in reversed(coeffs):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


@lru_cache(maxsize=None)
def _field_roots_cache(m: int):
    # all real roots of the minimal polynomial of 2cos(pi/m): 2cos(k pi/m)
    # for k coprime to 2m, 0 < k < m
    f = MinPolyField(m)
    ks = [k for k in range(1, m) if math.gcd(k, 2 * m) == 1]
    assert len(ks) == f.degree
    return tuple(ks)


def _field_real_roots(f: MinPolyField):
    """The Galois conjugates of the generator, as field elements: the
    conjugates of 2cos(pi/m) are 2cos(k pi/m) = D_k(gen)."""
    return [f.dickson(k) for k in _field_roots_cache(f.m)]


def _eval_in_field(coeffs, x):
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


QQ = MinPolyField(3)   # 2cos(pi/3) = 1: a degree-1 field, i.e. Q itself


# ---------------------------------------------------------------------------
# Laurent polynomials


def _is_zero_scalar(c):
    if isinstance(c, AlgebraicNumber):
        return not c
    return c == 0


class LaurentPoly:
    """Sparse Laurent polynomial sum a_g v^g, exponents int, no zero terms."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        else:
            self.c = {e: v for e, v in coeffs.items() if not _is_zero_scalar(v)}

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    @staticmethod
    def mono(exp: int, coeff=1):
        return LaurentPoly({exp: coeff})

    def is_zero(self):
        return not self.c

    def degree(self):
        return max(self.c) if self.c else NEG_INF

    def min_degree(self):
        return min(self.c) if self.c else NEG_INF

    def coefficient(self, exp: int):
        return self.c.get(exp, 0)

    def constant_term(self):
        return self.c.get(0, 0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            other = LaurentPoly({0: other})
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if _is_zero_scalar(w):
                out.pop(e, None)
            else:
                out[e] = w
        r = LaurentPoly()
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly()
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            if _is_zero_scalar(other):
                return LaurentPoly()
            r = LaurentPoly()
            r.c = {e: v * other for e, v in self.c.items()}
            return r
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if _is_zero_scalar(w):
                    out.pop(e, None)
                else:
                    out[e] = w
        r = LaurentPoly()
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.c) != 1:
                raise ValueError("can only invert monomials")
            ((e, v),) = self.c.items()
            if not (v == 1 or v == -1):
                raise ValueError("can only invert unit monomials")
            return LaurentPoly({e * n: v if n % 2 else 1})
        out = LaurentPoly.one()
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if set(self.c) != set(other.c):
            return False
        return all(_scalar_eq(v, other.c[e]) for e, v in self.c.items())

    def __hash__(self):
        return hash(frozenset((e, _hashable(v)) for e, v in self.c.items()))

    def bar(self):
        """The involution v^g -> v^-g."""
        r = LaurentPoly()
        r.c = {-e: v for e, v in self.c.items()}
        return r

    def subst_v_power(self, k: int):
        """v -> v^k (k nonzero integer)."""
        r = LaurentPoly()
        r.c = {e * k: v for e, v in self.c.items()}
        return r

    def subst_neg_v(self):
        """v -> -v."""
        r = LaurentPoly()
        r.c = {e: (v if e % 2 == 0 else -v) for e, v in self.c.items()}
        return r

    def eval_at_one(self):
        acc = 0
        for v in self.c.values():
            acc = v + acc
        return acc

    def negative_part(self):
        r = LaurentPoly()
        r.c = {e: v for e, v in self.c.items() if e < 0}
        return r

    def positive_part(self):
        r = LaurentPoly()
        r.c = {e: v for e, v in self.c.items() if e > 0}
        return r

    def in_negative_degrees(self):
        return all(e < 0 for e in self.c)

    def to_triples(self):
        """Canonical serialization: sorted (exponent, numerator, denominator)."""
        out = []
        for e in sorted(self.c):
            v = self.c[e]
            if isinstance(v, AlgebraicNumber):
                if not v.is_rational():
                    raise ValueError("triple serialization needs rational coefficients")
                v = v.rational_value()
            v = Fraction(v)
            out.append((e, str(v.numerator), str(v.denominator)))
        return out

    @staticmethod
    def from_triples(triples):
        c = {}
        for e, num, den in triples:
            v = Fraction(int(num), int(den))
            c[int(e)] = int(v) if v.denominator == 1 else v
        return LaurentPoly(c)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            if e == 0:
                parts.append(f"{v}")
            elif e == 1:
                parts.append(f"{v}*v" if v != 1 else "v")
            else:
                parts.append(f"{v}*v^{e}" if v != 1 else f"v^{e}")
        return " + ".join(parts)


def _scalar_eq(a, b):
    try:
        return bool(a == b)
    except TypeError:
        return False


def _hashable(v):
    return v


# ---------------------------------------------------------------------------
# truncated power series (lists of scalars, index = exponent)


def series_mul(a, b, order: int):
    out = [0] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if _is_zero_scalar(x):
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            if not _is_zero_scalar(y):
                out[i + j] = out[i + j] + x * y
    return out


def series_inverse(p, order: int):
    """q with p*q = 1 mod x^(order+1); p[0] must be invertible."""
    if not p or _is_zero_scalar(p[0]):
        raise ZeroDivisionError("series with zero constant term")
    c0 = p[0]
    if isinstance(c0, AlgebraicNumber):
        inv0 = c0.inverse()
    else:
        inv0 = Fraction(1, 1) / Fraction(c0)
    out = [inv0]
    for k in range(1, order + 1):
        acc = 0
        for i in range(1, min(k, len(p) - 1) + 1):
            if not _is_zero_scalar(p[i]):
                acc = acc + p[i] * out[k - i]
        out.append(-inv0 * acc if not _is_zero_scalar(acc) else 0 * inv0)
    return out
