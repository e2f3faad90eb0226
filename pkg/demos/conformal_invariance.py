"""The conformal bienergy is conformally invariant only in dimension four.

Evaluates E_2^c on rotationally symmetric maps before and after a conformal
change e^(2 rho) of the domain metric, for domain dimensions 3, 4 and 5.
"""

import math

import numpy as np

from cbiharmonic import conformal as cf

for q in (2, 3, 4):
    print(f"domain dimension m = {q + 1}")
    for c in cf.preset_suite(q):
        e0, e1, dev = cf.conformal_invariance_check(c.domain, c.phi, c.rho)
        print(f"  {c.name:28s} E={e0:14.8f}  E~={e1:14.8f}  rel. dev {dev:.2e}")

# a conformal map found by integrating zeta' = sin(zeta)/sin(r)
phi = cf.solve_conformal_profile(cf.PROFILES["sin"], "sphere", 2 * math.atan(2 * math.tan(0.5)), 1.0, (0.05, 3.0))
r = np.linspace(0.05, 3.0, 7)
print("\nsolved profile vs 2 atan(2 tan(r/2)):", np.max(np.abs(phi.zeta(r) - 2 * np.arctan(2 * np.tan(r / 2)))))
