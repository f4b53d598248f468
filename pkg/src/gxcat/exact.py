"""Exact real scalars for dimension bookkeeping.

Quantum dimensions are kept as quadratic surds (a + b*sqrt(m))/den with
integer numerators and squarefree m whenever the Perron-Frobenius data is
quadratic; everything else is carried as a float with an explicit error
bound.  Sums and products stay exact inside one quadratic field; mixing
incompatible surds demotes to a certified float.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["QuadReal", "CertReal", "as_scalar", "scalar_eq", "EQ_TOL"]

# tolerance used for certified-float equality tests
EQ_TOL = 1e-9


def squarefree_split(n):
    """Return (f, m) with n = f*f*m and m squarefree, for n >= 1."""
    f, m, d = 1, n, 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            f *= d
        d += 1
    return f, m


class QuadReal:
    """Exact element a + b*sqrt(m) of a real quadratic field (m squarefree >= 2).

    Rationals are stored with m == 1 and b == 0.
    """

    __slots__ = ("a", "b", "m")

    def __init__(self, a, b=0, m=1):
        a, b = Fraction(a), Fraction(b)
        if m < 1:
            raise ValueError("m must be >= 1")
        if b == 0:
            m = 1
        if m == 1:
            a, b = a + b, Fraction(0)
        self.a, self.b, self.m = a, b, m

    @staticmethod
    def root_of(p, q):
        """Positive root of x^2 = p*x + q (integers p, q), e.g. the golden ratio."""
        disc = p * p + 4 * q
        if disc < 0:
            raise ValueError("no real root")
        f, m = squarefree_split(disc)
        return QuadReal(Fraction(p, 2), Fraction(f, 2), m)

    @staticmethod
    def sqrt_int(n):
        f, m = squarefree_split(n)
        return QuadReal(0, f, m)

    def _compat(self, other):
        if not isinstance(other, QuadReal):
            return None
        if self.m == 1 or other.m == 1 or self.m == other.m:
            return max(self.m, other.m)
        return None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadReal(other)
        if isinstance(other, CertReal):
            return self.to_cert() + other
        m = self._compat(other)
        if m is None:
            return self.to_cert() + other.to_cert()
        return QuadReal(self.a + other.a, self.b + other.b, m)

    __radd__ = __add__

    def __neg__(self):
        return QuadReal(-self.a, -self.b, self.m)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadReal(other)
        return self + (-other)

    def __rsub__(self, other):
        return QuadReal(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadReal(other)
        if isinstance(other, CertReal):
            return self.to_cert() * other
        m = self._compat(other)
        if m is None:
            return self.to_cert() * other.to_cert()
        a = self.a * other.a + self.b * other.b * m
        b = self.a * other.b + self.b * other.a
        return QuadReal(a, b, m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadReal(self.a / other, self.b / other, self.m)
        if isinstance(other, QuadReal):
            # multiply by the conjugate
            norm = other.a * other.a - other.b * other.b * other.m
            if norm == 0:
                raise ZeroDivisionError
            conj = QuadReal(other.a, -other.b, other.m)
            res = self * conj
            return QuadReal(res.a / norm, res.b / norm, res.m)
        return self.to_cert() / other

    def sign(self):
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 m
        lhs, rhs = a * a, b * b * self.m
        big = (lhs > rhs) - (lhs < rhs)
        return big if a > 0 else -big

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadReal(other)
        if isinstance(other, QuadReal):
            if self._compat(other) is None:
                return False
            return self.a == other.a and self.b == other.b
        if isinstance(other, CertReal):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.m))

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadReal(other)
        if isinstance(other, QuadReal) and self._compat(other) is not None:
            return (self - other).sign() < 0
        return float(self) < float(other)

    def __le__(self, other):
        return self == other or self < other

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    def to_cert(self):
        return CertReal(float(self), abs(float(self)) * 1e-15 + 1e-300)

    @property
    def is_rational(self):
        return self.b == 0

    def to_json(self):
        den = self.a.denominator
        den = den * self.b.denominator // math.gcd(den, self.b.denominator)
        return {
            "a": int(self.a * den),
            "b": int(self.b * den),
            "m": int(self.m),
            "den": int(den),
        }

    def __repr__(self):
        if self.b == 0:
            return f"QuadReal({self.a})"
        return f"QuadReal({self.a} + {self.b}*sqrt({self.m}))"


class CertReal:
    """Float with an explicit absolute error bound."""

    __slots__ = ("value", "err")

    def __init__(self, value, err):
        self.value = float(value)
        self.err = float(err)

    def __add__(self, other):
        other = as_scalar(other).to_cert() if not isinstance(other, CertReal) else other
        return CertReal(self.value + other.value, self.err + other.err + 1e-300)

    __radd__ = __add__

    def __neg__(self):
        return CertReal(-self.value, self.err)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, CertReal) else as_scalar(other).to_cert()))

    def __mul__(self, other):
        other = as_scalar(other).to_cert() if not isinstance(other, CertReal) else other
        err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return CertReal(self.value * other.value, err + 1e-300)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other).to_cert() if not isinstance(other, CertReal) else other
        v = self.value / other.value
        err = (self.err + abs(v) * other.err) / abs(other.value)
        return CertReal(v, err + 1e-300)

    def __eq__(self, other):
        other_c = other if isinstance(other, CertReal) else as_scalar(other).to_cert()
        tol = max(EQ_TOL, self.err + other_c.err)
        return abs(self.value - other_c.value) <= tol

    def __hash__(self):  # pragma: no cover - CertReal is never dict-keyed
        return hash(round(self.value, 6))

    def __lt__(self, other):
        other_c = other if isinstance(other, CertReal) else as_scalar(other).to_cert()
        return self.value < other_c.value and not self == other_c

    def __float__(self):
        return self.value

    def to_cert(self):
        return self

    @property
    def is_rational(self):
        return False

    def to_json(self):
        return {"value": self.value, "err": self.err, "exact": False}

    def __repr__(self):
        return f"CertReal({self.value!r}, err={self.err:.2e})"


def as_scalar(x):
    """Coerce ints/Fractions/floats into the exact-scalar hierarchy."""
    if isinstance(x, (QuadReal, CertReal)):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadReal(x)
    if isinstance(x, float):
        if x == int(x):
            return QuadReal(int(x))
        return CertReal(x, abs(x) * 1e-12 + 1e-300)
    raise TypeError(f"cannot coerce {type(x)} to scalar")


def scalar_eq(x, y):
    """Equality across the QuadReal/CertReal mix (exact where possible)."""
    return as_scalar(x) == as_scalar(y)
