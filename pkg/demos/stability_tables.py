"""Index and nullity of the c-biharmonic hyperspheres.

Prints the equator table for m = 1..12 and the per-level breakdown of the
small hypersphere S^4(sqrt(3)/2).
"""

from fractions import Fraction

from cbiharmonic.stability import BLOCK, DIVFREE, index_nullity_equator, index_nullity_hypersphere

print(" m  index  nullity  J*  K*")
for m in range(1, 13):
    rep = index_nullity_equator(m)
    print(f"{m:2d}  {rep.index:5d}  {rep.nullity:7d}  {rep.truncation['J*']:2d}  {rep.truncation['K*']:2d}")

rep = index_nullity_hypersphere(4, Fraction(3, 4))
print(f"\nS^4(sqrt(3)/2): index {rep.index}, nullity {rep.nullity}")
for e in rep.entries(BLOCK)[:4]:
    blk = e.values[0]
    if blk.b is None:
        print(f"  j=0  S0 = {blk.a}")
    else:
        print(f"  j={e.level}  a={blk.a}  b={blk.b}  d^2={blk.d_sq}  neg={e.negative} zero={e.zero} x{e.multiplicity}")
for e in rep.entries(DIVFREE)[:3]:
    print(f"  divergence-free k={e.level}  eigenvalue {e.values[0]}  x{e.multiplicity}")
