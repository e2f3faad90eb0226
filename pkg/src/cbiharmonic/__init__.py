"""Conformal biharmonic hypersurfaces of space forms.

Closed-form residuals, exact classification, Jacobi-operator stability of
c-biharmonic hyperspheres, and numerical checks of the conformal
invariance of the conformal bienergy in dimension four.
"""

__version__ = "0.1.0"

from .exact import Surd
from .hypersurfaces import (
    CliffordTorus,
    DomainError,
    EuclideanCylinder,
    EuclideanHyperplane,
    EuclideanSphere,
    GeometricData,
    Horosphere,
    HypEquidistant,
    HypGeodesicSphere,
    HypProduct,
    ResidualReport,
    SphereInSphere,
    cmc_residual,
    energy_curve,
    geometric_data,
    radius_validity,
    residual,
)
from .polynomial import ExactPolynomial, RootInterval, isolate_roots
from .classification import (
    classify_clifford,
    classify_hyperbolic,
    classify_hyperspheres,
    clifford_condition,
    hypersphere_condition,
)
from .stability import (
    hypersphere_block,
    hypersphere_divfree_eigenvalue,
    index_nullity_equator,
    index_nullity_hypersphere,
)
