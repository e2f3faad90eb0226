"""Explicit CMC hypersurfaces of space forms and their conformal bitension.

Each family is an immutable dataclass carrying its parameters.  Radii enter
only through their squares (``r_sq``), so rational parameters give exact
results; every odd power of a radius is folded into a single
:class:`~cbiharmonic.exact.Surd` per family.

Residuals are reported as the coefficient of the unit normal ``eta`` chosen
for each family:

=====================  ==========================================
family                 normal
=====================  ==========================================
SphereInSphere         ``((sqrt(1-r^2)/r) x, -r)``
CliffordTorus          ``((r2/r1) x1, -(r1/r2) x2)``
HypEquidistant         ``(sqrt(1+r^2), r/sqrt(1+r^2) (x2..x_{m+2}))``
Horosphere             ``(x1..xm, x_{m+1} - 1/a, x_{m+1} + a - 1/a)``
HypGeodesicSphere      ``sqrt(1+r^2)/r (x1..x_{m+1}, r^2/sqrt(1+r^2))``
HypProduct             ``(sqrt(1+r^2)/r x1, r/sqrt(1+r^2) x2)``
Euclidean families     inward normal (principal curvature ``-1/r``)
=====================  ==========================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Surd, as_exact, is_exact

__all__ = [
    "DomainError",
    "HypersurfaceFamily",
    "SphereInSphere",
    "CliffordTorus",
    "HypEquidistant",
    "Horosphere",
    "HypGeodesicSphere",
    "HypProduct",
    "EuclideanHyperplane",
    "EuclideanSphere",
    "EuclideanCylinder",
    "GeometricData",
    "ResidualReport",
    "DEFAULT_TOL",
    "geometric_data",
    "cmc_residual",
    "residual",
    "radius_validity",
    "sphere_volume",
    "energy_curve",
    "energy_curve_critical_t_sq",
]

DEFAULT_TOL = 1e-10


class DomainError(ValueError):
    """A family parameter lies outside its admissible range."""


def _one(x):
    return Fraction(1) if is_exact(x) else 1.0


def _require_int(name, value, lo, hi=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < lo or (hi is not None and value > hi):
        bound = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
        raise DomainError(f"{name} must be {bound}, got {value}")


# ---------------------------------------------------------------------------
# geometric data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeometricData:
    """Inputs of the CMC reduction for one hypersurface.

    ``principal_curvatures`` and ``ric_eigenvalues`` are parallel lists of
    ``(value, multiplicity)`` over the common eigenspaces of ``A`` and ``Ric``.
    """

    m: int
    ambient_curvature: int
    principal_curvatures: tuple
    ric_eigenvalues: tuple
    mean_curvature: Surd = field(init=False)
    shape_norm_sq: object = field(init=False)
    scal: object = field(init=False)
    a_dot_ric: Surd = field(init=False)

    def __post_init__(self):
        mults = [n for _, n in self.ric_eigenvalues]
        if sum(mults) != self.m:
            raise ValueError(f"Ricci multiplicities sum to {sum(mults)}, expected m={self.m}")
        if [n for _, n in self.principal_curvatures] != mults:
            raise ValueError("principal curvatures and Ricci eigenvalues must share eigenspaces")
        kappa = [Surd._lift(k) for k, _ in self.principal_curvatures]
        trace = sum((k * n for k, (_, n) in zip(kappa, self.principal_curvatures)), Surd(0))
        f = trace / self.m
        a2 = sum((k * k * n for k, (_, n) in zip(kappa, self.principal_curvatures)), Surd(0))
        scal = sum(q * n for q, n in self.ric_eigenvalues)
        adr = sum(
            (k * q * n for k, (q, n) in zip(kappa, self.ric_eigenvalues)),
            Surd(0),
        )
        object.__setattr__(self, "mean_curvature", f)
        object.__setattr__(self, "shape_norm_sq", a2.rational())
        object.__setattr__(self, "scal", scal)
        object.__setattr__(self, "a_dot_ric", adr)


def cmc_residual(data: GeometricData, m: int | None = None) -> Surd:
    """Normal part of the c-biharmonic equation of a CMC hypersurface.

    Returns ``m f (-|A|^2 + m c - 2/3 Scal) + 2 <A, Ric>``.  This is ``m``
    times the normal coefficient of ``(1/m) tau_2^c``, i.e. it coincides with
    the coefficient of ``eta`` in ``tau_2^c`` itself.  The tangential part
    vanishes for every family here because ``f`` and ``Scal`` are constant.
    """
    m = data.m if m is None else m
    if m != data.m:
        raise ValueError(f"dimension mismatch: data has m={data.m}, got m={m}")
    third = Fraction(2, 3) if is_exact(data.scal) else 2.0 / 3.0
    bracket = -data.shape_norm_sq + m * data.ambient_curvature - third * data.scal
    return data.mean_curvature * (m * bracket) + 2 * data.a_dot_ric


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


class HypersurfaceFamily:
    """Base class of the explicit families.

    Subclasses implement ``geometric_data`` and ``closed_form``; the latter
    returns the closed-form ``(tau, tau_2, tau_2^c)`` coefficients.
    """

    ambient_curvature = 0
    totally_geodesic = False

    def geometric_data(self) -> GeometricData:
        raise NotImplementedError

    def closed_form(self) -> tuple[Surd, Surd, Surd]:
        raise NotImplementedError

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self._params() if not isinstance(v, int))

    def _params(self):
        return ()


def _generic_tension(data: GeometricData):
    m, c = data.m, data.ambient_curvature
    tau = data.mean_curvature * m
    tau2 = data.mean_curvature * (m * (m * c - data.shape_norm_sq))
    return tau, tau2


@dataclass(frozen=True)
class SphereInSphere(HypersurfaceFamily):
    """Small hypersphere ``S^m(r)`` in ``S^{m+1}``, ``0 < r <= 1``."""

    m: int
    r_sq: object
    ambient_curvature = 1

    def __post_init__(self):
        _require_int("m", self.m, 1)
        object.__setattr__(self, "r_sq", as_exact(self.r_sq))
        if not 0 < self.r_sq <= 1:
            raise DomainError(f"SphereInSphere needs 0 < r^2 <= 1, got r^2={self.r_sq}")

    @classmethod
    def from_radius(cls, m, r):
        r = as_exact(r)
        return cls(m, r * r)

    @property
    def totally_geodesic(self):
        return self.r_sq == 1

    def _params(self):
        return (self.r_sq,)

    def _s(self):
        # sqrt(1 - r^2)/r
        return Surd.sqrt((1 - self.r_sq) / self.r_sq)

    def geometric_data(self):
        m, R = self.m, self.r_sq
        return GeometricData(m, 1, ((-self._s(), m),), (((m - 1) / R, m),))

    def closed_form(self):
        m, R, s = self.m, self.r_sq, self._s()
        tau = s * (-m)
        tau2 = s * (m * m * (1 - 2 * R) / R)
        tau2c = s * (m * (-6 * m * R + 2 * m * m - 5 * m + 6) / (3 * R))
        return tau, tau2, tau2c


@dataclass(frozen=True)
class CliffordTorus(HypersurfaceFamily):
    """Generalized Clifford torus ``S^{m1}(r1) x S^{m2}(r2)`` in ``S^{m+1}``.

    Parametrized by ``t = r1^2`` in (0, 1); ``r2^2 = 1 - t``.
    """

    m1: int
    m2: int
    t: object
    ambient_curvature = 1

    def __post_init__(self):
        _require_int("m1", self.m1, 1)
        _require_int("m2", self.m2, 1)
        object.__setattr__(self, "t", as_exact(self.t))
        if not 0 < self.t < 1:
            raise DomainError(f"CliffordTorus needs 0 < r1^2 < 1, got r1^2={self.t}")

    @classmethod
    def from_radius(cls, m1, m2, r1):
        r1 = as_exact(r1)
        return cls(m1, m2, r1 * r1)

    @property
    def m(self):
        return self.m1 + self.m2

    @property
    def r1(self):
        return math.sqrt(self.t)

    @property
    def r2(self):
        return math.sqrt(1 - self.t)

    def _params(self):
        return (self.t,)

    def _s(self):
        # r2/r1
        return Surd.sqrt((1 - self.t) / self.t)

    def geometric_data(self):
        m1, m2, T = self.m1, self.m2, self.t
        s = self._s()
        k1 = -s
        k2 = s * (T / (1 - T))  # r1/r2
        return GeometricData(
            self.m, 1, ((k1, m1), (k2, m2)), (((m1 - 1) / T, m1), ((m2 - 1) / (1 - T), m2))
        )

    def closed_form(self):
        m1, m2, T = self.m1, self.m2, self.t
        s = self._s()
        r2_over_r1 = s
        r1_over_r2 = s * (T / (1 - T))
        h = r2_over_r1 * m1 - r1_over_r2 * m2
        tau = -h
        tau2 = h * ((1 - T) / T - 1) * m1 + h * (T / (1 - T) - 1) * m2
        two_thirds = Fraction(2, 3) if is_exact(T) else 2.0 / 3.0
        bracket = (1 - 2 * T) * (m1 / T - m2 / (1 - T)) + two_thirds * (
            (m1 - 1) * (m1 - 3) / T + (m2 - 1) * (m2 - 3) / (1 - T)
        )
        inv_r1r2 = s / (1 - T)  # 1/(r1 r2) = (r2/r1) / r2^2
        tau2c = h * bracket - inv_r1r2 * (2 * (m1 - m2))
        return tau, tau2, tau2c


@dataclass(frozen=True)
class HypEquidistant(HypersurfaceFamily):
    """Equidistant hypersurface ``{x^1 = r}`` of ``H^{m+1}``, ``r >= 0``."""

    m: int
    r_sq: object
    ambient_curvature = -1

    def __post_init__(self):
        _require_int("m", self.m, 2)
        object.__setattr__(self, "r_sq", as_exact(self.r_sq))
        if self.r_sq < 0:
            raise DomainError(f"HypEquidistant needs r >= 0, got r^2={self.r_sq}")

    @classmethod
    def from_radius(cls, m, r):
        r = as_exact(r)
        if r < 0:
            raise DomainError(f"HypEquidistant needs r >= 0, got r={r}")
        return cls(m, r * r)

    @property
    def totally_geodesic(self):
        return self.r_sq == 0

    def _params(self):
        return (self.r_sq,)

    def _s(self):
        # r / sqrt(1 + r^2)
        return Surd.sqrt(self.r_sq / (1 + self.r_sq))

    def geometric_data(self):
        m, R = self.m, self.r_sq
        return GeometricData(m, -1, ((-self._s(), m),), ((-(m - 1) / (1 + R), m),))

    def closed_form(self):
        m, R, s = self.m, self.r_sq, self._s()
        tau = s * (-m)
        tau2 = s * (m * m * (1 + 2 * R) / (1 + R))
        tau2c = s * (m * (6 * m * R - 2 * m * m + 11 * m - 6) / (3 * (1 + R)))
        return tau, tau2, tau2c


@dataclass(frozen=True)
class Horosphere(HypersurfaceFamily):
    """Horosphere ``{x^{m+2} = x^{m+1} + a}`` of ``H^{m+1}``, ``a > 0``."""

    m: int
    a: object = 1
    ambient_curvature = -1

    def __post_init__(self):
        _require_int("m", self.m, 2)
        object.__setattr__(self, "a", as_exact(self.a))
        if not self.a > 0:
            raise DomainError(f"Horosphere needs a > 0, got a={self.a}")

    def _params(self):
        return (self.a,)

    @property
    def exact(self):
        return True

    def geometric_data(self):
        m = self.m
        return GeometricData(m, -1, ((Fraction(-1), m),), ((Fraction(0), m),))

    def closed_form(self):
        m = self.m
        return Surd(Fraction(-m)), Surd(Fraction(2 * m * m)), Surd(Fraction(2 * m * m))


@dataclass(frozen=True)
class HypGeodesicSphere(HypersurfaceFamily):
    """Geodesic sphere ``{sum_{i<=m+1} (x^i)^2 = r^2}`` of ``H^{m+1}``."""

    m: int
    r_sq: object
    ambient_curvature = -1

    def __post_init__(self):
        _require_int("m", self.m, 2)
        object.__setattr__(self, "r_sq", as_exact(self.r_sq))
        if not self.r_sq > 0:
            raise DomainError(f"HypGeodesicSphere needs r > 0, got r^2={self.r_sq}")

    @classmethod
    def from_radius(cls, m, r):
        r = as_exact(r)
        return cls(m, r * r)

    def _params(self):
        return (self.r_sq,)

    def _s(self):
        # sqrt(1 + r^2)/r
        return Surd.sqrt((1 + self.r_sq) / self.r_sq)

    def geometric_data(self):
        m, R = self.m, self.r_sq
        return GeometricData(m, -1, ((-self._s(), m),), (((m - 1) / R, m),))

    def closed_form(self):
        m, R, s = self.m, self.r_sq, self._s()
        tau = s * (-m)
        tau2 = s * (m * m * (1 + 2 * R) / R)
        tau2c = s * (m * (6 * m * R + 2 * m * m - 5 * m + 6) / (3 * R))
        return tau, tau2, tau2c


@dataclass(frozen=True)
class HypProduct(HypersurfaceFamily):
    """``S^k(r) x H^{m-k}(-1/(1+r^2))`` in ``H^{m+1}``, ``0 <= k <= m-1``."""

    m: int
    k: int
    r_sq: object
    ambient_curvature = -1

    def __post_init__(self):
        _require_int("m", self.m, 2)
        _require_int("k", self.k, 0, self.m - 1)
        object.__setattr__(self, "r_sq", as_exact(self.r_sq))
        if not self.r_sq > 0:
            raise DomainError(f"HypProduct needs r > 0, got r^2={self.r_sq}")

    @classmethod
    def from_radius(cls, m, k, r):
        r = as_exact(r)
        return cls(m, k, r * r)

    def _params(self):
        return (self.r_sq,)

    def _s(self):
        # sqrt(1 + r^2)/r
        return Surd.sqrt((1 + self.r_sq) / self.r_sq)

    def geometric_data(self):
        m, k, R = self.m, self.k, self.r_sq
        s = self._s()
        k_sphere = -s
        k_hyp = -(s * (R / (1 + R)))  # -r/sqrt(1+r^2)
        pcs = ((k_sphere, k), (k_hyp, m - k))
        ric = (((k - 1) / R, k), (-(m - k - 1) / (1 + R), m - k))
        if k == 0:
            pcs, ric = pcs[1:], ric[1:]
        return GeometricData(m, -1, pcs, ric)

    def closed_form(self):
        m, k, R, s = self.m, self.k, self.r_sq, self._s()
        # (k + r^2 m) / (r sqrt(1+r^2)) = s (k + R m) / (1 + R)
        lead = s * ((k + R * m) / (1 + R))
        tau = -lead
        tau2 = lead * (k * (1 + R) / R + (m - k) * R / (1 + R) + m)
        numerator = (
            6 * m * m * R**3
            + (-2 * m**3 + 11 * m * m - 6 * m + 4 * k * (m * m - m + 3)) * R * R
            + 2 * k * (k * (3 * m - 5) - m * m + 3 * m + 6) * R
            + 2 * k**3 - 5 * k * k + 6 * k
        )
        # 1/(3 r^3 (1+r^2)^{3/2}) = s / (3 R (1+R)^2)
        tau2c = s * (numerator / (3 * R * (1 + R) ** 2))
        return tau, tau2, tau2c


@dataclass(frozen=True)
class EuclideanHyperplane(HypersurfaceFamily):
    m: int
    totally_geodesic = True

    def __post_init__(self):
        _require_int("m", self.m, 1)

    @property
    def exact(self):
        return True

    def geometric_data(self):
        return GeometricData(self.m, 0, ((Fraction(0), self.m),), ((Fraction(0), self.m),))

    def closed_form(self):
        zero = Surd(Fraction(0))
        return zero, zero, zero


@dataclass(frozen=True)
class EuclideanSphere(HypersurfaceFamily):
    """Round sphere ``S^m(r)`` in ``R^{m+1}``.

    This family has no separate closed form, so ``closed_form`` goes
    through the CMC reduction.
    """

    m: int
    r_sq: object

    def __post_init__(self):
        _require_int("m", self.m, 1)
        object.__setattr__(self, "r_sq", as_exact(self.r_sq))
        if not self.r_sq > 0:
            raise DomainError(f"EuclideanSphere needs r > 0, got r^2={self.r_sq}")

    def _params(self):
        return (self.r_sq,)

    def geometric_data(self):
        m, R = self.m, self.r_sq
        return GeometricData(m, 0, ((-Surd.sqrt(1 / R), m),), (((m - 1) / R, m),))

    def closed_form(self):
        data = self.geometric_data()
        return (*_generic_tension(data), cmc_residual(data))


@dataclass(frozen=True)
class EuclideanCylinder(HypersurfaceFamily):
    """Cylinder ``S^k(r) x R^{m-k}`` in ``R^{m+1}``; closed form via the CMC reduction."""

    m: int
    k: int
    r_sq: object

    def __post_init__(self):
        _require_int("m", self.m, 2)
        _require_int("k", self.k, 1, self.m - 1)
        object.__setattr__(self, "r_sq", as_exact(self.r_sq))
        if not self.r_sq > 0:
            raise DomainError(f"EuclideanCylinder needs r > 0, got r^2={self.r_sq}")

    def _params(self):
        return (self.r_sq,)

    def geometric_data(self):
        m, k, R = self.m, self.k, self.r_sq
        zero = R * 0
        return GeometricData(
            m,
            0,
            ((-Surd.sqrt(1 / R), k), (zero, m - k)),
            (((k - 1) / R, k), (zero, m - k)),
        )

    def closed_form(self):
        data = self.geometric_data()
        return (*_generic_tension(data), cmc_residual(data))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    """Coefficients of ``eta`` in ``tau``, ``tau_2`` and ``tau_2^c``.

    ``tolerance`` is ``None`` when the decision was made in exact arithmetic.
    """

    tension_coeff: Surd
    bitension_coeff: Surd
    c_bitension_coeff: Surd
    is_c_biharmonic: bool
    exact: bool
    tolerance: float | None = None

    def as_floats(self):
        return (float(self.tension_coeff), float(self.bitension_coeff), float(self.c_bitension_coeff))


def geometric_data(family: HypersurfaceFamily) -> GeometricData:
    return family.geometric_data()


def residual(family: HypersurfaceFamily, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Closed-form ``(tau, tau_2, tau_2^c)`` of ``family``."""
    tau, tau2, tau2c = family.closed_form()
    exact = tau2c.exact and family.exact
    if exact:
        return ResidualReport(tau, tau2, tau2c, tau2c.is_zero(), True, None)
    return ResidualReport(tau, tau2, tau2c, abs(float(tau2c)) <= tol, False, tol)


def radius_validity(m: int, c, r) -> bool:
    """Necessary condition for a non-minimal c-biharmonic ``S^m(r)`` in ``N(c)``.

    True iff ``c > (2/3) (m-1)(m-3) / (m r^2)``.  ``r`` may be given exactly as
    a Fraction; the comparison is then exact.
    """
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    c, r = as_exact(c), as_exact(r)
    if is_exact(r) and is_exact(c):
        return c > Fraction(2 * (m - 1) * (m - 3), 3 * m) / (r * r)
    return c > 2.0 * (m - 1) * (m - 3) / (3.0 * m * r * r)


def sphere_volume(m: int) -> float:
    """Volume of the unit sphere ``S^m``: ``2 pi^{(m+1)/2} / Gamma((m+1)/2)``."""
    return 2.0 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


def energy_curve(m: int, t):
    """Bienergy and conformal bienergy of ``x -> (sqrt(1-t^2) x, t)``.

    Returns ``(h_m(t), h_m^c(t))``; ``t`` may be a scalar or numpy array.
    """
    if isinstance(t, (int, float)) and not -1 < t < 1:
        raise DomainError(f"energy curve needs |t| < 1, got t={t}")
    w = sphere_volume(m)
    t2 = t * t
    h = 0.5 * m * m * w * (1 - t2) * t2
    h_c = 0.5 * m * m * w * (1 - t2) * (t2 + 2.0 * (m - 1) * (m - 3) / (3.0 * m))
    return h, h_c


def energy_curve_critical_t_sq(m: int) -> Fraction | None:
    """Nonzero critical value ``t*^2`` of ``h_m^c``, or None when outside (0, 1).

    ``dh/dt = m^2 w t (1 - K - 2 t^2)`` with ``K = 2(m-1)(m-3)/(3m)``.
    """
    K = Fraction(2 * (m - 1) * (m - 3), 3 * m)
    t_sq = (1 - K) / 2
    return t_sq if 0 < t_sq < 1 else None
