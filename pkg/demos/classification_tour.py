"""Which hypersurfaces of space forms are c-biharmonic?

Walks through the explicit families: small hyperspheres, Clifford tori and
the four hyperbolic families, printing certified solutions.
"""

from fractions import Fraction

from cbiharmonic.classification import (
    classify_clifford,
    classify_hyperbolic,
    classify_hyperspheres,
    clifford_condition,
)
from cbiharmonic.hypersurfaces import SphereInSphere, residual, radius_validity


def show(sol):
    root = sol.root
    if root.exact_root:
        return f"{sol.variable} = {root.value}"
    return f"{sol.variable} in [{float(root.lo):.12f}, {float(root.hi):.12f}]  (|residual| <= {sol.residual_bound:.1e})"


print("small hyperspheres S^m(r) in S^(m+1)")
for s in classify_hyperspheres(8).non_geodesic():
    print(f"  m={s.params['m']}: {show(s)}")
print("  necessary radius condition at r = 99/100, m = 4..7:", [radius_validity(m, 1, Fraction(99, 100)) for m in range(4, 8)])

rep = residual(SphereInSphere(4, Fraction(1, 2)))
print(f"  tau_2^c of S^4(1/sqrt 2) = {float(rep.c_bitension_coeff):.6f} (not zero)")

print("\nClifford tori S^m1(r1) x S^m2(r2), t = r1^2")
for s in classify_clifford(5, equal_radius_cap=0).solutions:
    print(f"  ({s.params['m1']},{s.params['m2']}): {show(s)}")
print("  cubic for (1,2):", clifford_condition(1, 2).primitive())

print("\nhyperbolic space")
for s in classify_hyperbolic("equidistant", range(2, 10)).non_geodesic():
    print(f"  equidistant m={s.params['m']}: {show(s)}")
for fam in ("horosphere", "geodesic-sphere"):
    print(f"  {fam}: no solutions, residual cofactors have positive coefficients")
for s in classify_hyperbolic("product", range(2, 11), [1]).solutions:
    print(f"  product m={s.params['m']} k={s.params['k']}: {show(s)}")
