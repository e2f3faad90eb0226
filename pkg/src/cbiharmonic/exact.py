"""Scaled square roots ``c * sqrt(s)`` over the rationals.

Every invariant of the hypersurface families is either rational in the
squared radius or a rational multiple of one square root that is fixed per
family (``sqrt(1 - r^2)/r``, ``sqrt(1 + r^2)/r``, ...).  ``Surd`` keeps such
values exact when the inputs are :class:`fractions.Fraction` and degrades to
plain floating point when they are floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["Surd", "as_exact", "is_exact", "rational_sqrt"]


def is_exact(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def as_exact(x):
    """Return ``x`` as a Fraction when it is an int/Fraction or a ``"p/q"`` string."""
    if isinstance(x, str):
        return Fraction(x)
    if is_exact(x):
        return Fraction(x)
    return x


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    sn, sd = math.isqrt(num), math.isqrt(den)
    if sn * sn == num and sd * sd == den:
        return Fraction(sn, sd)
    return None


class Surd:
    """The real number ``coeff * sqrt(radicand)`` with ``radicand >= 0``.

    Sums are only defined between surds whose radicands differ by a rational
    square factor; for exact inputs anything else raises ``ArithmeticError``
    (it would leave the field Q(sqrt(s))).  Float surds simply collapse to a
    float value.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff, radicand=1):
        if radicand < 0:
            raise ValueError(f"negative radicand {radicand!r}")
        if is_exact(coeff):
            coeff = Fraction(coeff)
        if is_exact(radicand):
            radicand = Fraction(radicand)
        if coeff == 0 or radicand == 0:
            coeff, radicand = coeff * 0, radicand * 0 + 1
        self.coeff = coeff
        self.radicand = radicand

    @classmethod
    def sqrt(cls, radicand):
        return cls(Fraction(1) if is_exact(radicand) else 1.0, radicand)

    # -- introspection -------------------------------------------------
    @property
    def exact(self) -> bool:
        return is_exact(self.coeff) and is_exact(self.radicand)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def rational(self):
        """The value as a rational, or None when it is irrational."""
        if self.coeff == 0:
            return Fraction(0) if self.exact else 0.0
        if self.exact:
            root = rational_sqrt(Fraction(self.radicand))
            return None if root is None else self.coeff * root
        return self.coeff * math.sqrt(self.radicand)

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(float(self.radicand))

    def __repr__(self) -> str:
        if self.radicand == 1:
            return f"Surd({self.coeff})"
        return f"Surd({self.coeff} * sqrt({self.radicand}))"

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _lift(x) -> Surd:
        return x if isinstance(x, Surd) else Surd(x, 1 if is_exact(x) else 1.0)

    def _aligned(self, other: Surd):
        """Return (c1, c2, s) with self = c1*sqrt(s), other = c2*sqrt(s), or None."""
        if self.coeff == 0:
            return self.coeff, other.coeff, other.radicand
        if other.coeff == 0 or self.radicand == other.radicand:
            return self.coeff, other.coeff, self.radicand
        if self.exact and other.exact:
            ratio = rational_sqrt(Fraction(other.radicand) / Fraction(self.radicand))
            if ratio is None:
                return None
            return self.coeff, other.coeff * ratio, self.radicand
        return None

    def __add__(self, other):
        other = self._lift(other)
        al = self._aligned(other)
        if al is None:
            if self.exact and other.exact:
                raise ArithmeticError(f"cannot add {self!r} and {other!r} exactly")
            return Surd(float(self) + float(other), 1.0)
        c1, c2, s = al
        return Surd(c1 + c2, s)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.coeff, self.radicand)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.radicand == other.radicand:
            return Surd(self.coeff * other.coeff * self.radicand, 1 if self.exact else 1.0)
        prod = self.radicand * other.radicand
        if is_exact(prod):
            root = rational_sqrt(Fraction(prod))
            if root is not None:
                return Surd(self.coeff * other.coeff * root, 1)
        return Surd(self.coeff * other.coeff, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            if other.coeff == 0:
                raise ZeroDivisionError("division by zero surd")
            # 1/(c sqrt(s)) = sqrt(s) / (c s)
            inv = Surd(1 / (other.coeff * other.radicand), other.radicand)
            return self * inv
        return Surd(self.coeff / other, self.radicand)

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, float, Fraction)):
            return NotImplemented
        other = self._lift(other)
        al = self._aligned(other)
        if al is None:
            if self.exact and other.exact:
                # different quadratic fields; equal only if both zero
                return self.coeff == 0 and other.coeff == 0
            return float(self) == float(other)
        return al[0] == al[1]

    def __hash__(self):
        return hash(float(self))

    def __abs__(self):
        return Surd(abs(self.coeff), self.radicand)
