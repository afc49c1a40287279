"""Exact scalar arithmetic for the engine.

Every scalar in the engine lives in the cyclotomic field Q(z) with
z = zeta_8 a primitive 8th root of unity, z^4 = -1.  The field contains
the imaginary unit i = z^2 and sqrt(2) = z - z^3, which is all that the
frame phases exp(+-i*pi/4) ever require.  Elements are stored on the
basis (1, z, z^2, z^3) with Fraction components, so arithmetic is exact
and every element has a unique representative.

`Quad` is a single optional quadratic extension u + v*sqrt(r) over QZ8
(r a positive rational that is not a square in Q(sqrt 2)); it backs the
spot checks at specialization points whose square roots leave Q(zeta_8).
"""

from __future__ import annotations

import math
from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class QZ8:
    """Element of Q(zeta_8) on the basis (1, z, z^2, z^3), z^4 = -1."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (_fr(c0), _fr(c1), _fr(c2), _fr(c3))

    # -- constructors ------------------------------------------------

    @classmethod
    def rational(cls, x) -> "QZ8":
        return cls(_fr(x))

    @classmethod
    def i(cls) -> "QZ8":
        return cls(0, 0, 1, 0)

    @classmethod
    def zeta8(cls) -> "QZ8":
        return cls(0, 1, 0, 0)

    @classmethod
    def sqrt2(cls) -> "QZ8":
        return cls(0, 1, 0, -1)

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def is_rational(self) -> bool:
        return self.c[1] == 0 and self.c[2] == 0 and self.c[3] == 0

    def is_real(self) -> bool:
        # real subfield is Q(sqrt 2): c1 = -c3 and c2 = 0
        return self.c[2] == 0 and self.c[1] == -self.c[3]

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element: %s" % (self,))
        return self.c[0]

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "QZ8") -> "QZ8":
        a, b = self.c, other.c
        return QZ8(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    def __sub__(self, other: "QZ8") -> "QZ8":
        a, b = self.c, other.c
        return QZ8(a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])

    def __neg__(self) -> "QZ8":
        a = self.c
        return QZ8(-a[0], -a[1], -a[2], -a[3])

    def __mul__(self, other: "QZ8") -> "QZ8":
        a, b = self.c, other.c
        if a[1] == 0 and a[2] == 0 and a[3] == 0:
            if a[0] == 0:
                return _QZ8_ZERO
            return QZ8(a[0] * b[0], a[0] * b[1], a[0] * b[2], a[0] * b[3])
        if b[1] == 0 and b[2] == 0 and b[3] == 0:
            return QZ8(a[0] * b[0], a[1] * b[0], a[2] * b[0], a[3] * b[0])
        # convolution mod z^4 + 1
        c0 = a[0] * b[0] - a[1] * b[3] - a[2] * b[2] - a[3] * b[1]
        c1 = a[0] * b[1] + a[1] * b[0] - a[2] * b[3] - a[3] * b[2]
        c2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0] - a[3] * b[3]
        c3 = a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0]
        return QZ8(c0, c1, c2, c3)

    def scaled(self, q) -> "QZ8":
        q = _fr(q)
        a = self.c
        return QZ8(a[0] * q, a[1] * q, a[2] * q, a[3] * q)

    def _galois(self, k: int) -> "QZ8":
        """Apply z -> z^k for odd k (a field automorphism)."""
        out = [_F0, _F0, _F0, _F0]
        for n, cn in enumerate(self.c):
            if cn == 0:
                continue
            e = (n * k) % 8
            sign = 1
            if e >= 4:
                e -= 4
                sign = -1
            out[e] += sign * cn
        return QZ8(*out)

    def conj(self) -> "QZ8":
        """Complex conjugation, z -> z^-1."""
        return self._galois(7)

    def inverse(self) -> "QZ8":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_8)")
        if self.is_rational():
            return QZ8(1 / self.c[0])
        y = self._galois(3) * self._galois(5) * self._galois(7)
        n = self * y
        if not n.is_rational():
            raise AssertionError("field norm must be rational")
        return y.scaled(1 / n.c[0])

    def __truediv__(self, other: "QZ8") -> "QZ8":
        return self * other.inverse()

    # -- misc ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, QZ8) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return "QZ8(%s, %s, %s, %s)" % self.c

    def to_complex(self) -> complex:
        z = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
        return (
            complex(self.c[0])
            + complex(self.c[1]) * z
            + complex(self.c[2]) * z * z
            + complex(self.c[3]) * z * z * z
        )


_QZ8_ZERO = QZ8(0)

ZERO = _QZ8_ZERO
ONE = QZ8(1)
I = QZ8.i()
Z8 = QZ8.zeta8()
SQRT2 = QZ8.sqrt2()


def rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = _fr(q)
    if q < 0:
        raise ValueError("square root of a negative rational requested")
    if q == 0:
        return _F0
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def qz8_sqrt_of_rational(q: Fraction):
    """Square root of a nonnegative rational inside Q(zeta_8), or None.

    A nonnegative rational has a real square root in Q(zeta_8) exactly
    when it is q0^2 or 2*q0^2 for rational q0 (the real subfield is
    Q(sqrt 2)).
    """
    q = _fr(q)
    r = rational_sqrt(q)
    if r is not None:
        return QZ8.rational(r)
    r = rational_sqrt(q / 2)
    if r is not None:
        return SQRT2.scaled(r)
    return None


class Quad:
    """Element u + v*s of the quadratic extension QZ8(s), s^2 = r.

    r is a rational with no square root in Q(zeta_8), so the extension
    is a field; s is understood as the positive real root when r > 0.
    """

    __slots__ = ("u", "v", "r")

    def __init__(self, u: QZ8, v: QZ8, r: Fraction):
        r = _fr(r)
        if qz8_sqrt_of_rational(r) is not None:
            raise ValueError("s^2 = %s already has a root in Q(zeta_8)" % r)
        self.u = u
        self.v = v
        self.r = r

    @classmethod
    def of(cls, u, r) -> "Quad":
        return cls(u if isinstance(u, QZ8) else QZ8.rational(u), ZERO, r)

    @classmethod
    def root(cls, r) -> "Quad":
        return cls(ZERO, ONE, r)

    def _check(self, other: "Quad"):
        if self.r != other.r:
            raise ValueError("mixing distinct quadratic extensions")

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def __add__(self, other: "Quad") -> "Quad":
        self._check(other)
        return Quad(self.u + other.u, self.v + other.v, self.r)

    def __sub__(self, other: "Quad") -> "Quad":
        self._check(other)
        return Quad(self.u - other.u, self.v - other.v, self.r)

    def __neg__(self) -> "Quad":
        return Quad(-self.u, -self.v, self.r)

    def __mul__(self, other: "Quad") -> "Quad":
        self._check(other)
        rr = QZ8.rational(self.r)
        return Quad(
            self.u * other.u + rr * self.v * other.v,
            self.u * other.v + self.v * other.u,
            self.r,
        )

    def inverse(self) -> "Quad":
        n = self.u * self.u - QZ8.rational(self.r) * self.v * self.v
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero in quadratic extension")
        ninv = n.inverse()
        return Quad(self.u * ninv, -(self.v * ninv), self.r)

    def __truediv__(self, other: "Quad") -> "Quad":
        return self * other.inverse()

    def conj(self) -> "Quad":
        """Complex conjugation; s is real, so it is fixed."""
        return Quad(self.u.conj(), self.v.conj(), self.r)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quad)
            and self.r == other.r
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self) -> int:
        return hash((self.u, self.v, self.r))

    def __repr__(self) -> str:
        return "Quad(%r + %r*sqrt(%s))" % (self.u, self.v, self.r)
