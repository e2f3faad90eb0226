"""Index and nullity of c-biharmonic hyperspheres of the unit sphere.

The Jacobi operator of the conformal bienergy preserves three families of
sections over ``S^m(r)``: normal sections ``alpha eta``, gradient fields
``grad alpha`` and divergence-free fields, each split into Laplace
eigenspaces.  On the small hypersphere the normal and gradient pieces of
level ``j`` couple into a 2x2 block; on the equator (``r = 1``) everything
is diagonal.  All signs are decided in exact rational arithmetic, and the
infinite tail of every stream is cut off at a level beyond the Cauchy bound
of the relevant polynomial in the Laplace eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .polynomial import cauchy_bound, interpolate

__all__ = [
    "EigenStream",
    "BlockSpectrum",
    "LevelEntry",
    "IndexNullityReport",
    "laplace_eigenvalue",
    "divfree_eigenvalue",
    "function_multiplicity",
    "divfree_multiplicity",
    "equator_normal_eigenvalue",
    "equator_tangent_eigenvalue",
    "hypersphere_block",
    "hypersphere_s0",
    "hypersphere_divfree_eigenvalue",
    "index_nullity_equator",
    "index_nullity_hypersphere",
    "CRITICAL_HYPERSPHERES",
]

NORMAL = "normal"
GRADIENT = "gradient"
DIVFREE = "divergence-free"
BLOCK = "block"

# the four c-biharmonic small hyperspheres, (m, r^2)
CRITICAL_HYPERSPHERES = ((1, Fraction(1, 2)), (2, Fraction(1, 3)), (3, Fraction(1, 2)), (4, Fraction(3, 4)))


def _sign(x):
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# spectra of S^m(r)
# ---------------------------------------------------------------------------


def laplace_eigenvalue(m: int, j: int, r_sq=1) -> Fraction:
    """``lambda_j = j (m + j - 1) / r^2`` on functions."""
    return Fraction(j * (m + j - 1)) / Fraction(r_sq)


def divfree_eigenvalue(m: int, k: int, r_sq=1) -> Fraction:
    """``mu_k = (k + 1)(k + m - 2) / r^2`` on divergence-free fields."""
    return Fraction((k + 1) * (k + m - 2)) / Fraction(r_sq)


def function_multiplicity(m: int, j: int) -> int:
    """Dimension of the degree-``j`` spherical harmonics on ``S^m``."""
    if j == 0:
        return 1
    if m == 1:
        return 2
    return (2 * j + m - 1) * factorial(j + m - 2) // (factorial(j) * factorial(m - 1))


def divfree_multiplicity(m: int, k: int) -> int:
    """Dimension of the ``mu_k`` eigenspace of divergence-free fields on ``S^m``.

    ``k (k+m-1)(2k+m-1)(k+m-3)! / ((m-2)! (k+1)!)`` for ``m >= 2``; on the
    circle the only divergence-free field is the rotation (``k = 1``).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if m == 1:
        return 1 if k == 1 else 0
    num = k * (k + m - 1) * (2 * k + m - 1) * factorial(k + m - 3)
    return num // (factorial(m - 2) * factorial(k + 1))


@dataclass(frozen=True)
class EigenStream:
    """One eigenspace of a section family: kind, level, Laplace eigenvalue and dimension."""

    kind: str
    level: int
    laplace_eigenvalue: Fraction
    multiplicity: int

    @classmethod
    def at(cls, kind, m, level, r_sq=1):
        if kind in (NORMAL, GRADIENT):
            if kind == GRADIENT and level < 1:
                raise ValueError("gradient levels start at j = 1")
            return cls(kind, level, laplace_eigenvalue(m, level, r_sq), function_multiplicity(m, level))
        if kind == DIVFREE:
            return cls(kind, level, divfree_eigenvalue(m, level, r_sq), divfree_multiplicity(m, level))
        raise ValueError(f"unknown stream kind {kind!r}")


# ---------------------------------------------------------------------------
# equator
# ---------------------------------------------------------------------------


def equator_normal_eigenvalue(m: int, lam) -> Fraction:
    """``gamma = (lambda - m)(lambda + (2m^2 - 11m + 6)/3)``."""
    lam = Fraction(lam)
    return (lam - m) * (lam + Fraction(2 * m * m - 11 * m + 6, 3))


def equator_tangent_eigenvalue(m: int, mu) -> Fraction:
    """``(mu - 2m + 2)(mu + (2m^2 - 14m + 12)/3)``."""
    mu = Fraction(mu)
    return (mu - 2 * m + 2) * (mu + Fraction(2 * m * m - 14 * m + 12, 3))


# ---------------------------------------------------------------------------
# small hypersphere
# ---------------------------------------------------------------------------


def _kc(m, R, conformal):
    return Fraction(2 * (m - 1) * (m - 3), 3) / R if conformal else Fraction(0)


def _a(m, R, lam, conformal=True):
    K = _kc(m, R, conformal)
    x = m * (1 - R) / R + lam
    return x * x + 2 * (2 * lam - 3 * m * m) * (1 - R) / R - 2 * m * lam + m * m + K * (x - m)


def _b(m, R, lam, conformal=True):
    K = _kc(m, R, conformal)
    y = (2 - R - m) / R + lam
    return (
        y * y
        + (1 - m) * (1 - m + 2 * lam)
        + ((1 - R) * (4 * lam - m * m) - (2 - R - m) * (2 * m - 2)) / R
        + K * (y - m + 1)
    )


def _d_sq(m, R, lam, conformal=True):
    K = _kc(m, R, conformal)
    bracket = ((m + 1) * R - 2) / R - 2 * lam + 3 * m - 1 - K
    return 4 * (1 - R) / R * bracket * bracket * lam


def _check_r_sq(R):
    R = Fraction(R)
    if not 0 < R <= 1:
        raise ValueError(f"r^2 must lie in (0, 1], got {R}")
    return R


@dataclass(frozen=True)
class BlockSpectrum:
    """The 2x2 block ``[[a, d], [d, b]]`` of level ``j`` (``d`` kept as ``d^2``).

    For ``j = 0`` only ``a`` (the ``S_0`` coefficient) is present and
    ``b``/``d_sq`` are None.
    """

    m: int
    r_sq: Fraction
    j: int
    a: Fraction
    b: Fraction | None
    d_sq: Fraction | None
    negative_count: int = field(init=False)
    zero_count: int = field(init=False)

    def __post_init__(self):
        if self.b is None:
            s = _sign(self.a)
            neg, zero = int(s < 0), int(s == 0)
        else:
            tr, det = self.trace, self.det
            if det < 0:
                neg, zero = 1, 0
            elif det > 0:
                neg, zero = (2, 0) if tr < 0 else (0, 0)
            elif tr > 0:
                neg, zero = 0, 1
            elif tr < 0:
                neg, zero = 1, 1
            else:
                if not (self.a == 0 and self.b == 0 and self.d_sq == 0):  # pragma: no cover
                    raise ArithmeticError(f"trace = det = 0 with nonzero block at j={self.j}")
                neg, zero = 0, 2
        object.__setattr__(self, "negative_count", neg)
        object.__setattr__(self, "zero_count", zero)

    @property
    def trace(self):
        return self.a if self.b is None else self.a + self.b

    @property
    def det(self):
        return self.a if self.b is None else self.a * self.b - self.d_sq


def hypersphere_s0(m: int, r_sq) -> Fraction:
    """Coefficient of ``J_2^c`` on constant normal sections ``a eta``."""
    R = _check_r_sq(r_sq)
    return Fraction(m) / (R * R) * (
        8 * m * R * R - 4 * (Fraction(m * m, 3) + Fraction(2 * m, 3) + 1) * R + Fraction(2 * m * m, 3)
        - Fraction(5 * m, 3) + 2
    )


def hypersphere_block(m: int, r_sq, j: int, conformal: bool = True) -> BlockSpectrum:
    """Block of ``J_2^c`` (or ``J_2`` when ``conformal=False``) on level ``j``."""
    R = _check_r_sq(r_sq)
    if j < 0:
        raise ValueError("j must be >= 0")
    lam = laplace_eigenvalue(m, j, R)
    if j == 0:
        return BlockSpectrum(m, R, 0, _a(m, R, lam, conformal), None, None)
    return BlockSpectrum(m, R, j, _a(m, R, lam, conformal), _b(m, R, lam, conformal), _d_sq(m, R, lam, conformal))


def hypersphere_divfree_eigenvalue(m: int, r_sq, mu, conformal: bool = True) -> Fraction:
    """Eigenvalue of ``J_2^c`` on a divergence-free field with ``Delta_H V = mu V``."""
    R = _check_r_sq(r_sq)
    mu = Fraction(mu)
    K = _kc(m, R, conformal)
    z = (2 - R - m) / R + mu
    return z * z + 2 * (1 - m) * z - m * m * (1 - R) / R + (1 - m) ** 2 + K * (z + 1 - m)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelEntry:
    """One scanned level: stream, Laplace eigenvalue, Jacobi eigenvalue data and signs."""

    stream: str
    level: int
    laplace_eigenvalue: Fraction
    multiplicity: int
    values: tuple
    negative: int
    zero: int


@dataclass
class IndexNullityReport:
    m: int
    r_sq: Fraction
    index: int
    nullity: int
    breakdown: list
    truncation: dict
    variational: bool
    conformal: bool = True

    def entries(self, stream):
        return [e for e in self.breakdown if e.stream == stream]


def _first_level_beyond(bound, eig, start):
    """Smallest level ``>= start`` whose eigenvalue exceeds ``bound``."""
    level = start
    while eig(level) <= bound:
        level += 1
    return level


def _poly_in(f, degree):
    """Exact coefficients of ``f`` as a polynomial in its argument."""
    xs = [Fraction(i) for i in range(degree + 1)]
    return interpolate(xs, [f(x) for x in xs])


def _certify(polys, eig, start):
    """Truncation level past which every polynomial in ``polys`` is positive."""
    bound = max(cauchy_bound(p) for p in polys)
    level = _first_level_beyond(bound, eig, start)
    for p in polys:
        if not (p[-1] > 0 and sum(c * eig(level) ** i for i, c in enumerate(p)) > 0):  # pragma: no cover
            raise ArithmeticError("truncation certificate failed")
    return level, bound


def _tally(entries):
    index = sum(e.negative * e.multiplicity for e in entries)
    nullity = sum(e.zero * e.multiplicity for e in entries)
    return index, nullity


def _divfree_levels(m, k_star):
    return [1] if m == 1 else list(range(1, k_star + 1))


def index_nullity_equator(m: int) -> IndexNullityReport:
    """Index and nullity of the totally geodesic ``S^m`` in ``S^{m+1}``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    lam = lambda j: laplace_eigenvalue(m, j)  # noqa: E731
    mu = lambda k: divfree_eigenvalue(m, k)  # noqa: E731
    gamma_p = _poly_in(lambda x: equator_normal_eigenvalue(m, x), 2)
    tan_p = _poly_in(lambda x: equator_tangent_eigenvalue(m, x), 2)
    j_star, j_bound = _certify([gamma_p, tan_p], lam, 1)
    k_star, k_bound = _certify([tan_p], mu, 1)

    entries = []
    for j in range(0, j_star + 1):
        g = equator_normal_eigenvalue(m, lam(j))
        entries.append(LevelEntry(NORMAL, j, lam(j), function_multiplicity(m, j), (g,), int(g < 0), int(g == 0)))
    for j in range(1, j_star + 1):
        t = equator_tangent_eigenvalue(m, lam(j))
        entries.append(LevelEntry(GRADIENT, j, lam(j), function_multiplicity(m, j), (t,), int(t < 0), int(t == 0)))
    k_levels = _divfree_levels(m, k_star)
    for k in k_levels:
        t = equator_tangent_eigenvalue(m, mu(k))
        entries.append(LevelEntry(DIVFREE, k, mu(k), divfree_multiplicity(m, k), (t,), int(t < 0), int(t == 0)))
    index, nullity = _tally(entries)
    trunc = {
        "J*": j_star,
        "K*": k_levels[-1],
        "lambda_bound": j_bound,
        "mu_bound": k_bound,
        "polynomials": {"normal": gamma_p, "tangent": tan_p},
    }
    return IndexNullityReport(m, Fraction(1), index, nullity, entries, trunc, True)


def is_critical(m: int, r_sq) -> bool:
    """True when ``S^m(r)`` is c-biharmonic (``r = 1`` or ``6 m r^2 = 2m^2 - 5m + 6``)."""
    R = Fraction(r_sq)
    return R == 1 or 6 * m * R == 2 * m * m - 5 * m + 6


def index_nullity_hypersphere(m: int, r_sq, conformal: bool = True) -> IndexNullityReport:
    """Index and nullity of ``S^m(r)`` in ``S^{m+1}`` from the block decomposition.

    Reports for radii that are not c-biharmonic carry ``variational=False``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    R = _check_r_sq(r_sq)
    lam = lambda j: laplace_eigenvalue(m, j, R)  # noqa: E731
    mu = lambda k: divfree_eigenvalue(m, k, R)  # noqa: E731
    trace_p = _poly_in(lambda x: _a(m, R, x, conformal) + _b(m, R, x, conformal), 2)
    det_p = _poly_in(
        lambda x: _a(m, R, x, conformal) * _b(m, R, x, conformal) - _d_sq(m, R, x, conformal), 4
    )
    div_p = _poly_in(lambda x: hypersphere_divfree_eigenvalue(m, R, x, conformal), 2)
    j_star, j_bound = _certify([trace_p, det_p], lam, 1)
    k_star, k_bound = _certify([div_p], mu, 1)

    entries = []
    for j in range(0, j_star + 1):
        blk = hypersphere_block(m, R, j, conformal)
        entries.append(
            LevelEntry(BLOCK, j, lam(j), function_multiplicity(m, j), (blk,), blk.negative_count, blk.zero_count)
        )
    k_levels = _divfree_levels(m, k_star)
    for k in k_levels:
        v = hypersphere_divfree_eigenvalue(m, R, mu(k), conformal)
        entries.append(LevelEntry(DIVFREE, k, mu(k), divfree_multiplicity(m, k), (v,), int(v < 0), int(v == 0)))
    index, nullity = _tally(entries)
    trunc = {
        "J*": j_star,
        "K*": k_levels[-1],
        "lambda_bound": j_bound,
        "mu_bound": k_bound,
        "polynomials": {"trace": trace_p, "det": det_p, "divergence-free": div_p},
    }
    return IndexNullityReport(m, R, index, nullity, entries, trunc, is_critical(m, R), conformal)
