"""Complete classification of the c-biharmonic members of each family.

Every family's c-biharmonic condition reduces to a polynomial in a squared
radius once the nonzero surd prefactor of its residual is divided out.  The
polynomials are built with integer coefficients, their roots are isolated
with Sturm sequences, and every reported root is substituted back into
:func:`cbiharmonic.hypersurfaces.residual`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .hypersurfaces import (
    DEFAULT_TOL,
    CliffordTorus,
    HypEquidistant,
    HypProduct,
    SphereInSphere,
    radius_validity,
    residual,
)
from .polynomial import DEFAULT_WIDTH, ExactPolynomial, RootInterval, cauchy_bound, count_roots, isolate_roots

__all__ = [
    "Solution",
    "ClassificationResult",
    "hypersphere_condition",
    "clifford_condition",
    "equidistant_condition",
    "geodesic_sphere_cofactor",
    "horosphere_cofactor",
    "product_condition",
    "classify_hyperspheres",
    "classify_clifford",
    "clifford_equal_radius_scan",
    "classify_hyperbolic",
    "HYPERBOLIC_FAMILIES",
]

HYPERBOLIC_FAMILIES = ("equidistant", "horosphere", "geodesic-sphere", "product")


@dataclass(frozen=True)
class Solution:
    """One c-biharmonic member of a family.

    ``variable`` names the unknown (``r_sq`` or ``t = r1^2``); ``root`` is its
    exact value or certified bracket.  ``residual`` is the c-bitension
    coefficient at ``root.value`` and ``residual_bound`` bounds it over the
    bracket (both 0 for exact roots).
    """

    family: str
    params: dict
    variable: str
    root: RootInterval
    residual: float
    residual_bound: float
    geodesic: bool = False
    note: str = ""

    @property
    def value(self) -> Fraction:
        return self.root.value

    def sort_key(self):
        return (self.family, tuple(self.params.values()), self.root.lo)


@dataclass
class ClassificationResult:
    family: str
    scanned: dict
    solutions: list = field(default_factory=list)
    certificates: list = field(default_factory=list)

    def sorted(self):
        self.solutions.sort(key=Solution.sort_key)
        return self

    def non_geodesic(self):
        return [s for s in self.solutions if not s.geodesic]


# ---------------------------------------------------------------------------
# conditions
# ---------------------------------------------------------------------------


def hypersphere_condition(m: int) -> ExactPolynomial:
    """``6m R - (2m^2 - 5m + 6)`` in ``R = r^2`` (non-geodesic branch)."""
    return ExactPolynomial((-(2 * m * m - 5 * m + 6), 6 * m), variable="r_sq")


def clifford_condition(m1: int, m2: int) -> ExactPolynomial:
    """The cubic ``a3 T^3 + a2 T^2 + a1 T + a0`` in ``T = r1^2``."""
    a0 = -2 * m1**3 + 5 * m1**2 - 6 * m1
    a1 = 2 * m1 * (6 + 2 * m1**2 + m1 * (m2 - 2) - m2 * (m2 - 3))
    a2 = -m1 * (m1 + 2) * (2 * m1 + 3) + 6 * m2 - 2 * m1 * m2 * (m1 + 9) + (2 * m1 - 11) * m2**2 + 2 * m2**3
    a3 = 6 * (m1 + m2) ** 2
    return ExactPolynomial((a0, a1, a2, a3), variable="t")


def equidistant_condition(m: int) -> ExactPolynomial:
    """``6m R - (2m^2 - 11m + 6)``; the factor ``m r`` carries the r = 0 branch."""
    return ExactPolynomial((-(2 * m * m - 11 * m + 6), 6 * m), variable="r_sq")


def geodesic_sphere_cofactor(m: int) -> ExactPolynomial:
    """``6m R + 2m^2 - 5m + 6``, the rational cofactor of the residual."""
    return ExactPolynomial((2 * m * m - 5 * m + 6, 6 * m), variable="r_sq")


def horosphere_cofactor(m: int) -> ExactPolynomial:
    """The constant residual ``2 m^2``."""
    return ExactPolynomial((2 * m * m,), variable="a")


def product_condition(m: int, k: int) -> ExactPolynomial:
    """Cubic in ``R = r^2`` whose positive roots are the c-biharmonic radii."""
    return ExactPolynomial(
        (
            2 * k**3 - 5 * k * k + 6 * k,
            2 * k * (k * (3 * m - 5) - m * m + 3 * m + 6),
            -2 * m**3 + 11 * m * m - 6 * m + 4 * k * (m * m - m + 3),
            6 * m * m,
        ),
        variable="r_sq",
    )


# ---------------------------------------------------------------------------
# back-substitution
# ---------------------------------------------------------------------------


def _c_residual(make, x) -> float:
    return abs(float(residual(make(x)).c_bitension_coeff))


def _solution(family, params, variable, root, make, poly, tol=DEFAULT_TOL, width=DEFAULT_WIDTH):
    if root.exact_root:
        rep = residual(make(root.lo))
        if not rep.is_c_biharmonic:
            raise ArithmeticError(f"{family} {params}: exact root {root.lo} fails back-substitution")
        return Solution(family, params, variable, root, 0.0, 0.0)
    # tighten until the residual over the whole bracket is below tol
    for _ in range(64):
        bound = max(_c_residual(make, root.lo), _c_residual(make, root.hi))
        if bound < tol:
            break
        root = root.refine(poly, root.width / 2**8)
    else:  # pragma: no cover
        raise ArithmeticError(f"{family} {params}: residual did not drop below {tol}")
    return Solution(family, params, variable, root, _c_residual(make, root.value), bound)


# ---------------------------------------------------------------------------
# spheres
# ---------------------------------------------------------------------------


def classify_hyperspheres(m_max: int, width=DEFAULT_WIDTH) -> ClassificationResult:
    """All c-biharmonic ``S^m(r)`` in ``S^{m+1}``, ``m = 1..m_max``."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    out = ClassificationResult("hypersphere", {"m": [1, m_max], "r_sq": ["0", "1"]})
    for m in range(1, m_max + 1):
        one = RootInterval(Fraction(1), Fraction(1), True, 1)
        out.solutions.append(
            Solution("hypersphere", {"m": m}, "r_sq", one, 0.0, 0.0, geodesic=True, note="totally geodesic")
        )
        poly = hypersphere_condition(m)
        (root,) = poly.rational_roots()
        # the necessary radius bound prunes every m >= 5 independently
        admissible = 0 < root < 1 and radius_validity(m, 1, root)
        assert admissible == (0 < root < 1)
        if admissible:
            out.solutions.append(
                _solution("hypersphere", {"m": m}, "r_sq", RootInterval(root, root, True, 1),
                          lambda R, m=m: SphereInSphere(m, R), poly)
            )
        else:
            out.certificates.append(
                {"m": m, "kind": "root outside (0,1)", "root": root, "polynomial": poly.coefficients}
            )
    return out.sorted()


def _clifford_pair(m1, m2, width):
    poly = clifford_condition(m1, m2)
    roots = isolate_roots(poly, (0, 1), width)
    make = lambda T, m1=m1, m2=m2: CliffordTorus(m1, m2, T)  # noqa: E731
    sols = [_solution("clifford", {"m1": m1, "m2": m2}, "t", r, make, poly, width=width) for r in roots]
    cert = {
        "m1": m1,
        "m2": m2,
        "polynomial": poly.coefficients,
        "sturm_count": count_roots(poly.squarefree(), 0, 1) - (1 if poly(1) == 0 else 0),
        "sign_at_0": -1 if poly(0) < 0 else 1,
        "sign_at_1": 1 if poly(1) > 0 else -1,
    }
    return sols, cert


def clifford_equal_radius_scan(cap: int = 30) -> list:
    """Unordered ``{m1, m2}``, ``m1 != m2``, ``m1 + m2 <= cap`` that are c-biharmonic at ``r1^2 = 1/2``."""
    half = Fraction(1, 2)
    hits = []
    for m1 in range(1, cap):
        for m2 in range(m1 + 1, cap - m1 + 1):
            if clifford_condition(m1, m2)(half) == 0:
                assert residual(CliffordTorus(m1, m2, half)).is_c_biharmonic
                hits.append((m1, m2))
    return hits


def classify_clifford(m_max: int | None = None, equal_radius_cap: int = 30, pairs=None,
                      width=DEFAULT_WIDTH) -> ClassificationResult:
    """Roots in (0, 1) of the Clifford cubic for every ``m1 <= m2``, ``m1 + m2 <= m_max``.

    ``(m2, m1)`` is the same torus with ``T -> 1 - T`` and is not listed
    separately.  ``pairs`` overrides the enumeration with explicit pairs.
    """
    if pairs is None:
        if m_max is None or m_max < 2:
            raise ValueError("m_max must be >= 2")
        pairs = [(m1, m - m1) for m in range(2, m_max + 1) for m1 in range(1, m // 2 + 1)]
    out = ClassificationResult("clifford", {"pairs": [list(p) for p in pairs]})
    for m1, m2 in pairs:
        sols, cert = _clifford_pair(m1, m2, width)
        cert["exists"] = len(sols) >= 1
        out.solutions.extend(sols)
        out.certificates.append(cert)
    if equal_radius_cap:
        out.scanned["equal_radius_cap"] = equal_radius_cap
        out.certificates.append(
            {
                "kind": "equal radius scan",
                "cap": equal_radius_cap,
                "hits": clifford_equal_radius_scan(equal_radius_cap),
                "beyond_cap": "unverified",
            }
        )
    return out.sorted()


# ---------------------------------------------------------------------------
# hyperbolic families
# ---------------------------------------------------------------------------


def _positive_roots(poly, width):
    """All roots in ``(0, inf)``: the Cauchy bound caps the scanned interval."""
    return isolate_roots(poly, (0, cauchy_bound(poly.coefficients) + 1), width)


def classify_hyperbolic(family: str, m_values, k_values=None, width=DEFAULT_WIDTH) -> ClassificationResult:
    """Classification of one hyperbolic family for each ``m`` in ``m_values``.

    For ``product`` the default ``k_values`` is ``1..m-1``; ``k = 0`` is the
    equidistant family and can be requested explicitly.
    """
    if family not in HYPERBOLIC_FAMILIES:
        raise ValueError(f"unknown hyperbolic family {family!r}; choose from {HYPERBOLIC_FAMILIES}")
    m_values = list(m_values)
    if any(m < 2 for m in m_values):
        raise ValueError("hyperbolic families need m >= 2")
    out = ClassificationResult(family, {"m": m_values})
    for m in m_values:
        if family == "equidistant":
            zero = RootInterval(Fraction(0), Fraction(0), True, 1)
            out.solutions.append(
                Solution(family, {"m": m}, "r_sq", zero, 0.0, 0.0, geodesic=True, note="totally geodesic")
            )
            poly = equidistant_condition(m)
            (root,) = poly.rational_roots()
            if root > 0:
                out.solutions.append(
                    _solution(family, {"m": m}, "r_sq", RootInterval(root, root, True, 1),
                              lambda R, m=m: HypEquidistant(m, R), poly)
                )
            else:
                out.certificates.append({"m": m, "kind": "root not positive", "root": root})
        elif family in ("horosphere", "geodesic-sphere"):
            poly = horosphere_cofactor(m) if family == "horosphere" else geodesic_sphere_cofactor(m)
            if not poly.positive_coefficients():  # pragma: no cover
                raise ArithmeticError(f"{family} m={m}: positivity certificate failed")
            out.certificates.append(
                {"m": m, "kind": "positive coefficients", "polynomial": poly.coefficients, "variable": poly.variable}
            )
        else:
            ks = range(1, m) if k_values is None else [k for k in k_values if 0 <= k <= m - 1]
            for k in ks:
                poly = product_condition(m, k)
                if k == 0:
                    # R^2 (6m^2 R - m(2m^2 - 11m + 6)): drop the double root at R = 0
                    poly = ExactPolynomial(poly.coefficients[2:], poly.scale, poly.variable)
                roots = _positive_roots(poly, width)
                make = lambda R, m=m, k=k: HypProduct(m, k, R)  # noqa: E731
                for r in roots:
                    out.solutions.append(_solution(family, {"m": m, "k": k}, "r_sq", r, make, poly, width=width))
                out.certificates.append(
                    {"m": m, "k": k, "kind": "sturm", "polynomial": poly.coefficients,
                     "interval": [0, cauchy_bound(poly.coefficients) + 1], "roots": len(roots)}
                )
    return out.sorted()
