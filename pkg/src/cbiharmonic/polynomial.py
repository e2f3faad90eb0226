"""Integer polynomials with certified real-root isolation.

Roots are isolated with Sturm sequences over :class:`fractions.Fraction`, so
every count and every bracketing interval is exact.  Rational roots are found
first by the rational root test and reported as exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

__all__ = [
    "ExactPolynomial",
    "RootInterval",
    "DEFAULT_WIDTH",
    "isolate_roots",
    "sturm_sequence",
    "count_roots",
    "cauchy_bound",
    "interpolate",
]

DEFAULT_WIDTH = Fraction(1, 2**40)


# -- dense polynomial helpers on lists of Fractions (ascending degree) ------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _eval(p, x):
    acc = Fraction(0) if isinstance(x, Fraction) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _divmod(a, b):
    a, b = [Fraction(c) for c in _trim(a)], _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] / b[-1]
        q[shift] = coef
        for i, c in enumerate(b):
            a[i + shift] -= coef * c
        a = _trim(a)
    return _trim(q), a


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _sign(x):
    return (x > 0) - (x < 0)


def sturm_sequence(p):
    """Sturm chain ``p, p', -rem(p, p'), ...`` of a coefficient list."""
    p = [Fraction(c) for c in _trim(p)]
    seq = [p, _deriv(p)]
    while seq[-1]:
        _, r = _divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(seq, x):
    signs = [_sign(_eval(s, x)) for s in seq]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the half-open ``(lo, hi]``."""
    seq = sturm_sequence(p)
    return _variations(seq, Fraction(lo)) - _variations(seq, Fraction(hi))


def cauchy_bound(p) -> Fraction:
    """Every real root of ``p`` satisfies ``|x| < 1 + max |a_i / a_n|``."""
    p = [Fraction(c) for c in _trim(p)]
    if len(p) < 2:
        return Fraction(1)
    lead = abs(p[-1])
    return 1 + max(abs(c) / lead for c in p[:-1])


def interpolate(xs, ys):
    """Exact Lagrange interpolation; returns ascending coefficients."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return _trim(coeffs)


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


# -- public types -----------------------------------------------------------


@dataclass(frozen=True)
class ExactPolynomial:
    """Integer-coefficient polynomial, ascending degree.

    ``scale`` is the positive integer the source rational polynomial was
    multiplied by to clear denominators; ``variable`` names the unknown.
    """

    coefficients: tuple
    scale: int = 1
    variable: str = "x"

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if any(Fraction(c) != Fraction(o) for c, o in zip(coeffs, self.coefficients)):
            raise ValueError("coefficients must be integers")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)
        if self.scale <= 0:
            raise ValueError("scale must be a positive integer")

    @classmethod
    def from_rational(cls, coeffs, variable="x"):
        """Clear denominators of rational coefficients (ascending)."""
        coeffs = [Fraction(c) for c in coeffs]
        lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in coeffs), 1)
        return cls(tuple(int(c * lcm) for c in coeffs), lcm, variable)

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def __call__(self, x):
        return _eval(self.coefficients, x)

    def content(self) -> int:
        return reduce(math.gcd, self.coefficients, 0)

    def primitive(self) -> ExactPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        g = self.content() or 1
        if self.leading < 0:
            g = -g
        return ExactPolynomial(tuple(c // g for c in self.coefficients), self.scale, self.variable)

    def derivative(self) -> ExactPolynomial:
        return ExactPolynomial(tuple(_deriv(self.coefficients)) or (0,), self.scale, self.variable)

    def compose_affine(self, a, b) -> ExactPolynomial:
        """The polynomial ``x -> p(a x + b)`` (integer a, b)."""
        acc = [Fraction(0)]
        for c in reversed(self.coefficients):
            shifted = [Fraction(0)] + [a * v for v in acc]
            for i, v in enumerate(acc):
                shifted[i] += b * v
            shifted[0] += c
            acc = shifted
        return ExactPolynomial(tuple(int(v) for v in _trim(acc)) or (0,), self.scale, self.variable)

    def positive_coefficients(self) -> bool:
        """All coefficients strictly positive: no root in ``[0, inf)``."""
        return all(c > 0 for c in self.coefficients)

    def rational_roots(self) -> list:
        """All distinct rational roots, ascending, via the rational root test."""
        if self.is_zero():
            raise ValueError("zero polynomial has every number as a root")
        coeffs = list(self.coefficients)
        roots = set()
        low = 0
        while coeffs[low] == 0:
            low += 1
        if low:
            roots.add(Fraction(0))
        trimmed = coeffs[low:]
        if len(trimmed) > 1:
            for p in _divisors(trimmed[0]):
                for q in _divisors(trimmed[-1]):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if _eval(trimmed, cand) == 0:
                            roots.add(cand)
        return sorted(roots)

    def multiplicity(self, x: Fraction) -> int:
        p = [Fraction(c) for c in self.coefficients]
        k = 0
        while p and _eval(p, x) == 0:
            k += 1
            p = _deriv(p)
        return k

    def squarefree(self) -> list:
        p = [Fraction(c) for c in self.coefficients]
        g = _gcd(p, _deriv(p))
        if len(g) <= 1:
            return p
        q, r = _divmod(p, g)
        assert not r
        return q

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            v = "" if i == 0 else (self.variable if i == 1 else f"{self.variable}^{i}")
            mag = abs(c)
            body = f"{mag}" if (mag != 1 or i == 0) else ""
            body = f"{body}{'*' if body and v else ''}{v}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])


@dataclass(frozen=True)
class RootInterval:
    """A certified isolating interval ``(lo, hi)`` containing exactly one root.

    For ``exact_root`` intervals ``lo == hi`` is the rational root itself.
    ``multiplicity`` is the root's multiplicity in the original polynomial.
    """

    lo: Fraction
    hi: Fraction
    exact_root: bool = False
    multiplicity: int = 1

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint)

    @property
    def value(self) -> Fraction:
        """The exact root, or the interval midpoint for irrational roots."""
        return self.lo if self.exact_root else self.midpoint

    def contains(self, x) -> bool:
        if self.exact_root:
            return x == self.lo
        return self.lo < x < self.hi

    def error_bound(self) -> Fraction:
        return Fraction(0) if self.exact_root else self.width / 2

    def refine(self, poly, width=DEFAULT_WIDTH) -> RootInterval:
        """Bisect until narrower than ``width``, keeping the sign change."""
        if self.exact_root:
            return self
        p = poly.squarefree() if isinstance(poly, ExactPolynomial) else poly
        lo, hi = self.lo, self.hi
        s_lo = _sign(_eval(p, lo))
        while hi - lo >= width:
            mid = (lo + hi) / 2
            s_mid = _sign(_eval(p, mid))
            if s_mid == 0:
                return RootInterval(mid, mid, True, self.multiplicity)
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        return RootInterval(lo, hi, False, self.multiplicity)


def isolate_roots(poly: ExactPolynomial, interval, width=DEFAULT_WIDTH) -> list:
    """All distinct real roots of ``poly`` in the open ``interval``.

    Each root comes back as a :class:`RootInterval`: exact for rational
    roots, otherwise a Sturm-certified bracket of width below ``width``.
    The list is sorted and the intervals are pairwise disjoint.
    """
    if poly.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    lo, hi = (Fraction(v) for v in interval)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    width = Fraction(width)

    out = []
    for x in poly.rational_roots():
        if lo < x < hi:
            out.append(RootInterval(x, x, True, poly.multiplicity(x)))

    # strip rational roots so the remaining roots are irrational and simple
    rest = poly.squarefree()
    for x in poly.rational_roots():
        rest, rem = _divmod(rest, [-x, Fraction(1)])
        assert not rem
    if len(rest) > 1:
        seq = sturm_sequence(rest)

        def n_roots(a, b):
            return _variations(seq, a) - _variations(seq, b)

        stack = [(lo, hi)]
        brackets = []
        while stack:
            a, b = stack.pop()
            n = n_roots(a, b)
            if _eval(rest, b) == 0:  # cannot happen for irrational roots, kept for safety
                n -= 1
            if n == 0:
                continue
            if n == 1:
                brackets.append((a, b))
                continue
            mid = (a + b) / 2
            stack.append((a, mid))
            stack.append((mid, b))
        for a, b in brackets:
            out.append(RootInterval(a, b, False, 1).refine(rest, width))
    out.sort(key=lambda iv: iv.lo)
    return out
