import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cbiharmonic.classification import (
    classify_clifford,
    classify_hyperbolic,
    classify_hyperspheres,
    clifford_condition,
    clifford_equal_radius_scan,
    equidistant_condition,
    hypersphere_condition,
    product_condition,
)
from cbiharmonic.hypersurfaces import CliffordTorus, HypProduct, residual
from cbiharmonic.polynomial import count_roots, isolate_roots

CRITICAL_SPHERES = {(1, Fraction(1, 2)), (2, Fraction(1, 3)), (3, Fraction(1, 2)), (4, Fraction(3, 4))}


def test_hypersphere_examples():
    res = classify_hyperspheres(4)
    got = {(s.params["m"], s.value) for s in res.non_geodesic()}
    assert got == CRITICAL_SPHERES
    assert {s.params["m"] for s in res.solutions if s.geodesic} == {1, 2, 3, 4}
    assert all(s.value == 1 for s in res.solutions if s.geodesic)


def test_hypersphere_nothing_above_four():
    res = classify_hyperspheres(30)
    assert {(s.params["m"], s.value) for s in res.non_geodesic()} == CRITICAL_SPHERES


def test_hypersphere_condition_root():
    assert hypersphere_condition(4).rational_roots() == [Fraction(3, 4)]


def test_clifford_one_two():
    res = classify_clifford(pairs=[(1, 2)])
    (sol,) = res.solutions
    assert not sol.root.exact_root and sol.root.width < Fraction(1, 10**10)
    assert sol.residual_bound < 1e-10
    cert = res.certificates[0]
    assert res.certificates[-1]["hits"] == [(1, 4), (3, 4)]
    assert cert["sturm_count"] == 1 and cert["sign_at_0"] == -1 and cert["sign_at_1"] == 1
    # oracle: numpy eigenvalue roots of the (1,2) cubic
    real = [x.real for x in np.roots([54, -63, 20, -3]) if abs(x.imag) < 1e-9 and 0 < x.real < 1]
    assert real == pytest.approx([float(sol.value)], abs=1e-12)


def test_clifford_equal_dimensions():
    res = classify_clifford(pairs=[(2, 2)])
    vals = sorted(s.value for s in res.solutions)
    assert vals[1] == Fraction(1, 2)
    np.testing.assert_allclose([float(vals[0]), float(vals[2])],
                               [(1 - 1 / math.sqrt(3)) / 2, (1 + 1 / math.sqrt(3)) / 2], atol=1e-12)


def test_clifford_primitive_cubics():
    assert clifford_condition(1, 2).primitive().coefficients == (-3, 20, -63, 54)
    assert clifford_condition(1, 3).primitive().coefficients == (-1, 6, -28, 32)


def test_equal_radius_scan():
    assert clifford_equal_radius_scan(30) == [(1, 4), (3, 4)]


def test_equal_radius_scan_independent():
    # oracle: exact closed form at T = 1/2, independent of the cubic
    hits = []
    for m1 in range(1, 30):
        for m2 in range(m1 + 1, 31 - m1):
            if residual(CliffordTorus(m1, m2, Fraction(1, 2))).is_c_biharmonic:
                hits.append((m1, m2))
    assert hits == [(1, 4), (3, 4)]


def test_cubic_from_display():
    # oracle: the closed-form tau_2^c times 3 r1^3 r2^3 is minus the cubic
    T, m1, m2 = sp.symbols("T m1 m2", positive=True)
    r1, r2 = sp.sqrt(T), sp.sqrt(1 - T)
    disp = (r2 / r1 * m1 - r1 / r2 * m2) * ((r2**2 - r1**2) * (m1 / r1**2 - m2 / r2**2)
                                             + sp.Rational(2, 3) * ((m1 - 1) * (m1 - 3) / r1**2
                                                                     + (m2 - 1) * (m2 - 3) / r2**2)) \
        - 2 / (r1 * r2) * (m1 - m2)
    for a, b in [(1, 2), (2, 5), (3, 3), (6, 1)]:
        cubic = sum(c * T**i for i, c in enumerate(clifford_condition(a, b).coefficients))
        assert sp.simplify(sp.expand(disp.subs({m1: a, m2: b}) * 3 * r1**3 * r2**3) + cubic) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 15), st.integers(1, 15))
def test_clifford_swap_symmetry(m1, m2):
    # T -> 1 - T exchanges the factors and negates the cubic
    p = clifford_condition(m1, m2)
    q = clifford_condition(m2, m1).compose_affine(-1, 1)
    assert p.coefficients == tuple(-c for c in q.coefficients)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 15), st.integers(1, 15))
def test_clifford_sign_anchors(m1, m2):
    p = clifford_condition(m1, m2)
    assert p(Fraction(0)) < 0 and p(Fraction(1)) > 0
    assert count_roots(p.coefficients, 0, 1) % 2 == 1


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_clifford_back_substitution(m):
    for s in classify_clifford(m).solutions:
        m1, m2 = s.params["m1"], s.params["m2"]
        assert m1 <= m2 and m1 + m2 <= m
        if s.root.exact_root:
            assert residual(CliffordTorus(m1, m2, s.value)).is_c_biharmonic
        else:
            assert s.residual_bound < 1e-10
            assert abs(float(residual(CliffordTorus(m1, m2, float(s.value))).c_bitension_coeff)) < 1e-10


def test_uniqueness_m1_one():
    for m2 in range(1, 51):
        assert count_roots(clifford_condition(1, m2).coefficients, 0, 1) == 1


def test_equidistant():
    res = classify_hyperbolic("equidistant", range(2, 13))
    got = {s.params["m"]: s.value for s in res.non_geodesic()}
    assert set(got) == set(range(5, 13))
    for m, v in got.items():
        assert v == Fraction(2 * m * m - 11 * m + 6, 6 * m)
    assert got[5] == Fraction(1, 30) and got[8] == Fraction(23, 24)
    assert equidistant_condition(4).rational_roots()[0] < 0


@pytest.mark.parametrize("family", ["horosphere", "geodesic-sphere"])
def test_positivity_certificates(family):
    res = classify_hyperbolic(family, range(2, 21))
    assert res.solutions == []
    assert len(res.certificates) == 19
    assert all(all(c > 0 for c in cert["polynomial"]) for cert in res.certificates)


def test_product_small_m_empty():
    assert classify_hyperbolic("product", range(2, 8)).solutions == []


def test_product_eight():
    res = classify_hyperbolic("product", [8], [1])
    assert len(res.solutions) == 2
    np.testing.assert_allclose([float(s.value) for s in res.solutions], [0.0789, 0.4738], atol=1e-4)
    for s in res.solutions:
        assert s.residual_bound < 1e-10
        assert abs(float(residual(HypProduct(8, 1, float(s.value))).c_bitension_coeff)) < 1e-9


def test_product_large_m_small_root():
    res = classify_hyperbolic("product", range(9, 21), [1])
    for m in range(9, 21):
        roots = [s.value for s in res.solutions if s.params["m"] == m]
        assert any(0 < r < Fraction(1, 2) for r in roots)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 14))
def test_product_k0_reduction(m):
    # k = 0 drops R^2 and leaves the equidistant condition
    p = product_condition(m, 0)
    assert p.coefficients[:2] == (0, 0)
    q = equidistant_condition(m)
    assert tuple(p.coefficients[2:]) == tuple(m * c for c in q.coefficients)
    res = classify_hyperbolic("product", [m], [0])
    eq = [s.value for s in classify_hyperbolic("equidistant", [m]).non_geodesic()]
    assert [s.value for s in res.solutions] == eq


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 14), st.integers(1, 13))
def test_product_roots_agree_with_numpy(m, k):
    if k >= m:
        return
    p = product_condition(m, k)
    ours = [float(r.value) for r in isolate_roots(p, (0, 10**6))]
    ref = sorted(x.real for x in np.roots(p.coefficients[::-1]) if abs(x.imag) < 1e-9 and x.real > 0)
    np.testing.assert_allclose(ours, ref, rtol=1e-8)


def test_unknown_family():
    with pytest.raises(ValueError):
        classify_hyperbolic("cylinder", [3])
    with pytest.raises(ValueError):
        classify_hyperbolic("product", [1])
