"""Conformal bienergy of rotationally symmetric maps, and its conformal invariance.

Domain metrics are warped products ``g = dr^2 + alpha(r)^2 g_{S^q}`` on
``S^q x I`` (``m = q + 1``); targets are ``dzeta^2 + beta(zeta)^2 g_{S^q}``
and maps are ``(theta, r) -> (theta, zeta(r))``.  A conformal change
``e^{2 rho(r)} g`` is again a warped product in the arclength
``s = int e^rho dr`` with profile ``e^rho alpha``, so the conformally changed
energy is evaluated with the same routine after a change of variable.  The
integrals stay in the original coordinate ``r`` with ``ds = e^rho dr``.

Sign convention: ``Delta f = -Tr Hess f`` (nonnegative spectrum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import solve_ivp

from .hypersurfaces import sphere_volume

__all__ = [
    "Profile",
    "PROFILES",
    "profile",
    "polynomial_profile",
    "constant_profile",
    "WarpedProfile",
    "RotSymMap",
    "QuadratureSpec",
    "SingularityError",
    "QuadratureError",
    "IntegrationError",
    "warped_scal",
    "warped_ric",
    "rotsym_tension",
    "tension_fd",
    "c_bienergy_rotsym",
    "bienergy_rotsym",
    "conformal_invariance_check",
    "conformal_scal_crosscheck",
    "conformal_ric_crosscheck",
    "beta_residual",
    "first_integral",
    "integrate_eq_beta",
    "solve_conformal_profile",
    "Config",
    "preset_suite",
]


class SingularityError(ValueError):
    """Evaluation at a zero of the warping function."""


class QuadratureError(ArithmeticError):
    """The panel-doubling self-check failed."""


class IntegrationError(RuntimeError):
    """The ODE solver failed; ``last`` holds the last valid ``(r, zeta)``."""

    def __init__(self, message, last):
        super().__init__(f"{message} (last valid point r={last[0]!r}, zeta={last[1]!r})")
        self.last = last


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """A smooth function with its first three derivatives (vectorized)."""

    name: str
    f: object
    d1: object
    d2: object
    d3: object = None

    def __call__(self, x):
        return self.f(x)

    def derivs(self, x, n=2):
        return tuple(g(x) for g in (self.f, self.d1, self.d2, self.d3)[: n + 1])


def _scaled(kind, d):
    if kind == "sin":
        return Profile(
            f"sin({d})",
            lambda x: np.sin(d * x) / d,
            lambda x: np.cos(d * x),
            lambda x: -d * np.sin(d * x),
            lambda x: -d * d * np.cos(d * x),
        )
    if kind == "sinh":
        return Profile(
            f"sinh({d})",
            lambda x: np.sinh(d * x) / d,
            lambda x: np.cosh(d * x),
            lambda x: d * np.sinh(d * x),
            lambda x: d * d * np.cosh(d * x),
        )
    raise ValueError(kind)


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def _one(x):
    return np.ones_like(np.asarray(x, dtype=float))


PROFILES = {
    "sin": Profile("sin", np.sin, np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x)),
    "sinh": Profile("sinh", np.sinh, np.cosh, np.sinh, np.cosh),
    "id": Profile("id", lambda x: np.asarray(x, dtype=float), _one, _zero, _zero),
}


def polynomial_profile(coeffs, name=None) -> Profile:
    """Profile from ascending polynomial coefficients."""
    p = Polynomial(coeffs)
    ds = [p, p.deriv(1), p.deriv(2), p.deriv(3)]
    return Profile(name or f"poly{tuple(coeffs)}", *ds)


def constant_profile(c) -> Profile:
    return Profile(f"const({c})", lambda x: c * _one(x), _zero, _zero, _zero)


def profile(name, *coeffs) -> Profile:
    """Look up a preset by name: ``sin``, ``sinh``, ``id``, ``poly`` (with coefficients),
    or ``sin``/``sinh`` with one scale ``d`` giving ``(1/d) sin(d x)``."""
    if name == "poly":
        return polynomial_profile(coeffs)
    if coeffs:
        return _scaled(name, coeffs[0])
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)} or 'poly'") from None


def _cos_bump(c, lo, hi):
    """``c cos(pi (r - lo)/(hi - lo))``: derivative vanishes at both ends."""
    w = math.pi / (hi - lo)
    return Profile(
        f"{c}*cos(pi(r-{lo:g})/{hi - lo:g})",
        lambda r: c * np.cos(w * (r - lo)),
        lambda r: -c * w * np.sin(w * (r - lo)),
        lambda r: -c * w * w * np.cos(w * (r - lo)),
        lambda r: c * w**3 * np.sin(w * (r - lo)),
    )


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WarpedProfile:
    """``dr^2 + alpha(r)^2 g_{S^q}`` on ``interval``, optionally times ``e^{2 rho(r)}``."""

    alpha: Profile
    q: int
    interval: tuple
    rho: Profile | None = None

    @property
    def m(self):
        return self.q + 1

    def conformal(self, rho: Profile) -> WarpedProfile:
        return WarpedProfile(self.alpha, self.q, self.interval, rho)

    def frame(self, r):
        """``(A, dA/ds, d2A/ds2, ds/dr, rho', rho'')`` of the (changed) profile at ``r``."""
        a, a1, a2 = self.alpha.derivs(r)
        if np.any(a == 0):
            raise SingularityError(f"alpha vanishes at r={r}")
        if self.rho is None:
            z = _zero(r)
            return a, a1, a2, _one(r), z, z
        p, p1, p2 = self.rho.derivs(r)
        e = np.exp(p)
        return e * a, p1 * a + a1, (p2 * a + p1 * a1 + a2) / e, e, p1, p2


def _curvatures(q, A, As, Ass):
    ric_rad = -q * Ass / A
    ric_fib = -Ass / A + (q - 1) * (1 - As * As) / (A * A)
    return ric_rad, ric_fib, ric_rad + q * ric_fib


def warped_ric(wp: WarpedProfile, r):
    """Ricci eigenvalues ``(radial, fiber)`` of the (conformally changed) warped metric at ``r``."""
    A, As, Ass, *_ = wp.frame(np.asarray(r, dtype=float))
    rad, fib, _ = _curvatures(wp.q, A, As, Ass)
    return rad, fib


def warped_scal(wp: WarpedProfile, r):
    A, As, Ass, *_ = wp.frame(np.asarray(r, dtype=float))
    return _curvatures(wp.q, A, As, Ass)[2]


@dataclass(frozen=True)
class RotSymMap:
    """``zeta`` as a function of the domain coordinate ``r`` and the target profile ``beta``.

    ``conformal`` declares ``zeta' = beta(zeta)/alpha`` for the stated domain.
    """

    zeta: Profile
    beta: Profile
    conformal: bool = False
    name: str = ""

    def conformality_defect(self, alpha: Profile, r):
        return self.zeta.d1(r) * alpha(r) - self.beta(self.zeta(r))


def _map_terms(wp, phi, r):
    A, As, Ass, ds, p1, _ = wp.frame(r)
    q = wp.q
    z, z1, z2 = phi.zeta.derivs(r)
    b, b1 = phi.beta.f(z), phi.beta.d1(z)
    zs = z1 / ds
    zss = (z2 - p1 * z1) / (ds * ds)
    tau = zss + q * (As / A) * zs - q * b * b1 / (A * A)
    fib = q * b * b / (A * A)
    return A, As, Ass, ds, tau, zs * zs, fib


def rotsym_tension(wp: WarpedProfile, phi: RotSymMap, r):
    """Radial component of the tension field at ``r``; the sphere component is zero."""
    return _map_terms(wp, phi, np.asarray(r, dtype=float))[4]


def tension_fd(wp: WarpedProfile, phi: RotSymMap, r, h=1e-5):
    """Finite-difference Euler-Lagrange tension of ``1/2 int (zeta'^2 + q beta^2/alpha^2) alpha^q``.

    Independent of :func:`rotsym_tension`: only ``zeta'`` and ``alpha`` values are used.
    """
    if wp.rho is not None:
        raise ValueError("the finite-difference oracle works in the unchanged metric")
    q = wp.q
    flux = lambda x: wp.alpha(x) ** q * phi.zeta.d1(x)  # noqa: E731
    r = np.asarray(r, dtype=float)
    div = (flux(r + h) - flux(r - h)) / (2 * h) / wp.alpha(r) ** q
    z = phi.zeta(r)
    # d/dzeta of beta^2/2 by central difference as well
    dpot = (phi.beta(z + h) ** 2 - phi.beta(z - h) ** 2) / (4 * h)
    return div - q * dpot / wp.alpha(r) ** 2


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule with pole truncation.

    Ends where ``alpha`` vanishes are cut at distance ``eps``; the cut is
    extrapolated away with one Richardson step (error ``O(eps^{q+1})``).
    """

    order: int = 20
    panels: int = 64
    eps: float = 1e-4
    self_check_tol: float = 1e-10
    richardson: bool = True
    self_check: bool = True

    def nodes(self, lo, hi, panels=None):
        x, w = np.polynomial.legendre.leggauss(self.order)
        n = panels or self.panels
        edges = np.linspace(lo, hi, n + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def _integrate(density, lo, hi, spec, panels=None):
    x, w = spec.nodes(lo, hi, panels)
    return float(np.dot(w, density(x)))


def _pole_ends(wp: WarpedProfile):
    lo, hi = wp.interval
    if wp.q == 0:
        return False, False
    return bool(abs(wp.alpha(lo)) < 1e-12), bool(abs(wp.alpha(hi)) < 1e-12)


def _energy(wp, density, spec: QuadratureSpec):
    lo, hi = wp.interval
    cut_lo, cut_hi = _pole_ends(wp)

    def trunc(eps, panels=None):
        a = lo + eps if cut_lo else lo
        b = hi - eps if cut_hi else hi
        return _integrate(density, a, b, spec, panels)

    if not (cut_lo or cut_hi):
        value = trunc(0.0)
        check = trunc(0.0, 2 * spec.panels)
    else:
        e1, e2 = trunc(spec.eps), trunc(2 * spec.eps)
        p = wp.q + 1
        value = e1 + (e1 - e2) / (2**p - 1) if spec.richardson else e1
        check_e = trunc(spec.eps, 2 * spec.panels)
        check = check_e + (value - e1)
    if spec.self_check:
        diff = abs(check - value)
        if diff > spec.self_check_tol * max(1.0, abs(value)):
            raise QuadratureError(
                f"panel doubling changed the energy by {diff:.3e} (value {value:.12g}, "
                f"order {spec.order}, panels {spec.panels})"
            )
    return value


def c_bienergy_rotsym(wp: WarpedProfile, phi: RotSymMap, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``E_2^c = 1/2 int (|tau|^2 + 2/3 Scal |dphi|^2 - 2 Tr <dphi Ric, dphi>)``."""
    q, wq = wp.q, sphere_volume(wp.q)

    def density(r):
        A, As, Ass, ds, tau, rad, fib = _map_terms(wp, phi, r)
        ric_rad, ric_fib, scal = _curvatures(q, A, As, Ass)
        grad = rad + fib
        trace = ric_rad * rad + ric_fib * fib
        return 0.5 * (tau * tau + (2.0 / 3.0) * scal * grad - 2.0 * trace) * wq * A**q * ds

    return _energy(wp, density, spec)


def bienergy_rotsym(wp: WarpedProfile, phi: RotSymMap, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``E_2 = 1/2 int |tau|^2``."""
    q, wq = wp.q, sphere_volume(wp.q)

    def density(r):
        A, _, _, ds, tau, _, _ = _map_terms(wp, phi, r)
        return 0.5 * tau * tau * wq * A**q * ds

    return _energy(wp, density, spec)


def conformal_invariance_check(wp: WarpedProfile, phi: RotSymMap, rho: Profile,
                               spec: QuadratureSpec = QuadratureSpec()):
    """``(E_original, E_conformal, relative_deviation)`` for ``g -> e^{2 rho} g``."""
    e0 = c_bienergy_rotsym(wp, phi, spec)
    e1 = c_bienergy_rotsym(wp.conformal(rho), phi, spec)
    scale = max(abs(e0), abs(e1))
    return e0, e1, (abs(e1 - e0) / scale if scale else 0.0)


def _laplacian_rho(wp, r):
    a, a1, _ = wp.alpha.derivs(r)
    _, p1, p2 = wp.rho.derivs(r)
    return -(p2 + wp.q * (a1 / a) * p1), p1, p2


def conformal_scal_crosscheck(wp: WarpedProfile, rho: Profile, r):
    """Scalar curvature of ``e^{2 rho} g`` from the conformal-change formula and from the warped profile."""
    r = np.asarray(r, dtype=float)
    base = WarpedProfile(wp.alpha, wp.q, wp.interval)
    changed = base.conformal(rho)
    m = wp.m
    lap, p1, _ = _laplacian_rho(changed, r)
    via_formula = np.exp(-2 * rho(r)) * (warped_scal(base, r) + (m - 1) * (2 * lap - (m - 2) * p1 * p1))
    return via_formula, warped_scal(changed, r)


def conformal_ric_crosscheck(wp: WarpedProfile, rho: Profile, r):
    """Ricci eigenvalues of ``e^{2 rho} g``: ``((radial, fiber) via formula, (radial, fiber) via profile)``."""
    r = np.asarray(r, dtype=float)
    base = WarpedProfile(wp.alpha, wp.q, wp.interval)
    changed = base.conformal(rho)
    m = wp.m
    a, a1, _ = wp.alpha.derivs(r)
    lap, p1, p2 = _laplacian_rho(changed, r)
    rad, fib = warped_ric(base, r)
    e = np.exp(-2 * rho(r))
    iso = lap - (m - 2) * p1 * p1
    rad_f = e * (rad - (m - 2) * (p2 - p1 * p1) + iso)
    fib_f = e * (fib - (m - 2) * (a1 / a) * p1 + iso)
    return (rad_f, fib_f), warped_ric(changed, r)


# ---------------------------------------------------------------------------
# the constant-scalar-curvature ODE for beta and conformal profiles
# ---------------------------------------------------------------------------


def beta_residual(beta: Profile, zeta):
    """``2 b'^3 - 2 b' - b b' b'' - b^2 b'''``: zero iff ``dzeta^2 + beta^2 g_{S^3}`` has constant Scal."""
    b, b1, b2, b3 = beta.derivs(zeta, 3)
    return 2 * b1**3 - 2 * b1 - b * b1 * b2 - b * b * b3


def first_integral(beta: Profile, zeta):
    """``beta^2 (1 - beta'^2 + beta beta'')``, constant along solutions."""
    b, b1, b2 = beta.derivs(zeta)
    return b * b * (1 - b1 * b1 + b * b2)


def integrate_eq_beta(y0, span, rtol=1e-12, atol=1e-12):
    """Integrate the residual equation as a first-order system in ``(beta, beta', beta'')``.

    Returns the ``solve_ivp`` solution with dense output.
    """

    def rhs(_, y):
        b, b1, b2 = y
        return [b1, b2, (2 * b1**3 - 2 * b1 - b * b1 * b2) / (b * b)]

    sol = solve_ivp(rhs, span, y0, method="DOP853", rtol=rtol, atol=atol, dense_output=True)
    if sol.status != 0:
        raise IntegrationError(sol.message, (sol.t[-1], sol.y[0, -1]))
    return sol


_DOMAINS = {"euclidean": PROFILES["id"], "sphere": PROFILES["sin"]}


def solve_conformal_profile(beta: Profile, domain: str, zeta0: float, r0: float, r_range,
                            sign: int = 1, rtol=1e-12, atol=1e-14) -> RotSymMap:
    """Solve ``zeta' = sign * beta(zeta)/alpha(r)``, ``zeta(r0) = zeta0``, over ``r_range``.

    ``alpha`` is ``r`` (``euclidean``) or ``sin r`` (``sphere``).  The solution
    is integrated from ``r0`` towards both ends; ``zeta''`` is evaluated from
    the equation itself.
    """
    try:
        alpha = _DOMAINS[domain]
    except KeyError:
        raise ValueError(f"domain must be one of {sorted(_DOMAINS)}") from None
    lo, hi = r_range
    if not lo <= r0 <= hi:
        raise ValueError("r0 must lie in r_range")

    def rhs(r, z):
        return sign * beta(z) / alpha(r)

    pieces = []
    for end in (lo, hi):
        if end == r0:
            continue
        sol = solve_ivp(rhs, (r0, end), [zeta0], method="DOP853", rtol=rtol, atol=atol, dense_output=True)
        if sol.status != 0 or not np.isfinite(sol.y[0, -1]):
            good = np.isfinite(sol.y[0])
            raise IntegrationError(sol.message or "solution left the domain",
                                   (float(sol.t[good][-1]), float(sol.y[0][good][-1])))
        pieces.append((min(r0, end), max(r0, end), sol.sol))

    def z(r):
        r = np.asarray(r, dtype=float)
        if np.any((r < lo) | (r > hi)):
            raise ValueError(f"solution only covers [{lo}, {hi}]")
        out = np.empty_like(r)
        for a, b, f in pieces:
            sel = (r >= a) & (r <= b)
            if np.any(sel):
                out[sel] = f(r[sel])[0]
        return out

    def z1(r):
        return sign * beta(z(r)) / alpha(r)

    def z2(r):
        zr = z(r)
        a, a1 = alpha(r), alpha.d1(r)
        return sign * (beta.d1(zr) * z1(r) / a - beta(zr) * a1 / (a * a))

    name = f"conformal[{beta.name}, {domain}, zeta({r0:g})={zeta0:g}]"
    return RotSymMap(Profile(name, z, z1, z2), beta, conformal=True, name=name)


# ---------------------------------------------------------------------------
# preset suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Config:
    name: str
    domain: WarpedProfile
    phi: RotSymMap
    rho: Profile

    def with_q(self, q):
        d = self.domain
        return Config(self.name, WarpedProfile(d.alpha, q, d.interval, d.rho), self.phi, self.rho)


def _closed_zeta(name, f, f1, f2):
    return Profile(name, f, f1, f2)


def _stereo_sphere(C):
    # zeta = 2 arctan(C tan(r/2)) solves zeta' = sin(zeta)/sin(r)
    def f(r):
        return 2 * np.arctan(C * np.tan(r / 2))

    def f1(r):
        return np.sin(f(r)) / np.sin(r)

    def f2(r):
        z = f(r)
        return (np.cos(z) * f1(r) * np.sin(r) - np.sin(z) * np.cos(r)) / np.sin(r) ** 2

    return _closed_zeta(f"2atan({C}tan(r/2))", f, f1, f2)


def preset_suite(q: int = 3) -> list:
    """Configurations ``(alpha, beta, zeta, rho)`` for the invariance checks.

    Every ``rho`` has zero derivative at the interval ends, so the compact
    (closed or doubled) picture applies and no boundary terms arise.
    """
    pi = math.pi
    sin, sinh, ident = PROFILES["sin"], PROFILES["sinh"], PROFILES["id"]
    sphere = WarpedProfile(sin, q, (0.0, pi))
    out = []

    ident_map = RotSymMap(Profile("r", ident.f, ident.d1, ident.d2), sin, True, "identity")
    out.append(Config("identity of S^m", sphere, ident_map, _cos_bump(0.3, 0.0, pi)))

    out.append(Config("conformal S^m -> S^m, C=2", sphere,
                      RotSymMap(_stereo_sphere(2.0), sin, True, "2atan(2tan(r/2))"), _cos_bump(0.3, 0.0, pi)))

    wobble = Profile(
        "r + 0.1 sin 2r",
        lambda r: r + 0.1 * np.sin(2 * r),
        lambda r: 1 + 0.2 * np.cos(2 * r),
        lambda r: -0.4 * np.sin(2 * r),
    )
    out.append(Config("non-conformal S^m -> S^m", sphere, RotSymMap(wobble, sin, False, "wobble"),
                      Profile("0.2cos2r", lambda r: 0.2 * np.cos(2 * r), lambda r: -0.4 * np.sin(2 * r),
                              lambda r: -0.8 * np.cos(2 * r))))

    ball = WarpedProfile(ident, q, (0.0, 1.0))
    to_sphere = Profile(
        "2atan(r)",
        lambda r: 2 * np.arctan(r),
        lambda r: 2 / (1 + r * r),
        lambda r: -4 * r / (1 + r * r) ** 2,
    )
    out.append(Config("flat ball -> S^m", ball, RotSymMap(to_sphere, sin, True, "2atan(r)"), _cos_bump(0.25, 0.0, 1.0)))

    # tanh(zeta/2) = C tan(r/2): conformal S^m piece -> H^m
    C, hi = 0.5, 2.0
    def zh(r):
        return 2 * np.arctanh(C * np.tan(r / 2))

    def zh1(r):
        return np.sinh(zh(r)) / np.sin(r)

    def zh2(r):
        z = zh(r)
        return (np.cosh(z) * zh1(r) * np.sin(r) - np.sinh(z) * np.cos(r)) / np.sin(r) ** 2

    out.append(Config("cap of S^m -> H^m", WarpedProfile(sin, q, (0.0, hi)),
                      RotSymMap(Profile("2atanh(tan(r/2)/2)", zh, zh1, zh2), sinh, True, "to H"),
                      _cos_bump(0.2, 0.0, hi)))

    # zeta = C tan(r/2): conformal S^m piece -> R^m
    C2, hi2 = 1.5, 2.2
    to_flat = Profile(
        "1.5tan(r/2)",
        lambda r: C2 * np.tan(r / 2),
        lambda r: 0.5 * C2 / np.cos(r / 2) ** 2,
        lambda r: 0.5 * C2 * np.sin(r / 2) / np.cos(r / 2) ** 3,
    )
    out.append(Config("cap of S^m -> R^m", WarpedProfile(sin, q, (0.0, hi2)),
                      RotSymMap(to_flat, ident, True, "to R"), _cos_bump(-0.3, 0.0, hi2)))

    poly = polynomial_profile([0.0, 1.0, 0.0, -0.1], "r - 0.1 r^3")
    out.append(Config("polynomial warp -> S^m", WarpedProfile(poly, q, (0.0, 1.5)),
                      RotSymMap(to_sphere, sin, False, "2atan(r)"), _cos_bump(0.2, 0.0, 1.5)))
    return out
