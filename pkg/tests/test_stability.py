from fractions import Fraction
from math import comb

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cbiharmonic.stability import (
    BLOCK,
    DIVFREE,
    GRADIENT,
    NORMAL,
    CRITICAL_HYPERSPHERES,
    BlockSpectrum,
    EigenStream,
    divfree_eigenvalue,
    divfree_multiplicity,
    equator_normal_eigenvalue,
    equator_tangent_eigenvalue,
    function_multiplicity,
    hypersphere_block,
    hypersphere_divfree_eigenvalue,
    hypersphere_s0,
    index_nullity_equator,
    index_nullity_hypersphere,
    is_critical,
    laplace_eigenvalue,
)

fracs = st.fractions(min_value=-30, max_value=30, max_denominator=20)


def _harmonic_dim(m, j):
    # oracle: harmonic polynomials of degree j in m+1 variables
    if j < 0:
        return 0
    return comb(m + j, m) - (comb(m + j - 2, m) if j >= 2 else 0)


@settings(max_examples=60)
@given(st.integers(1, 15), st.integers(0, 15))
def test_function_multiplicity(m, j):
    assert function_multiplicity(m, j) == _harmonic_dim(m, j)


@settings(max_examples=60)
@given(st.integers(2, 15), st.integers(1, 15))
def test_divfree_multiplicity_branching(m, k):
    # oracle: H_k (x) R^{m+1} = H_{k+1} + H_{k-1} + (co-closed 1-forms of level k)
    want = _harmonic_dim(m, k) * (m + 1) - _harmonic_dim(m, k + 1) - _harmonic_dim(m, k - 1)
    assert divfree_multiplicity(m, k) == want


def test_divfree_multiplicity_anchors():
    assert [divfree_multiplicity(2, k) for k in range(1, 5)] == [3, 5, 7, 9]
    assert [divfree_multiplicity(3, k) for k in range(1, 5)] == [6, 16, 30, 48]
    assert all(divfree_multiplicity(m, 1) == m * (m + 1) // 2 for m in range(2, 12))
    assert [divfree_multiplicity(1, k) for k in (1, 2, 3)] == [1, 0, 0]
    with pytest.raises(ValueError):
        divfree_multiplicity(3, 0)


def test_killing_eigenvalue():
    for m in range(2, 10):
        assert divfree_eigenvalue(m, 1) == 2 * (m - 1)
        assert laplace_eigenvalue(m, 1, Fraction(1, 4)) == 4 * m


def test_streams():
    s = EigenStream.at(GRADIENT, 3, 2)
    assert (s.laplace_eigenvalue, s.multiplicity) == (8, 9)
    with pytest.raises(ValueError):
        EigenStream.at(GRADIENT, 3, 0)
    with pytest.raises(ValueError):
        EigenStream.at("curl", 3, 1)


# -- equator ------------------------------------------------------------------


def _equator_expected(m):
    index = 0 if m <= 4 else m + 2
    nullity = (m + 1) * (m + 4) // 2 if m in (2, 4) else (m + 1) * (m + 2) // 2
    return index, nullity


@pytest.mark.parametrize("m", range(1, 13))
def test_equator(m):
    rep = index_nullity_equator(m)
    assert (rep.index, rep.nullity) == _equator_expected(m)
    assert rep.truncation["J*"] >= 1 and rep.truncation["lambda_bound"] > 0
    assert rep.variational


@pytest.mark.parametrize("m", [1, 3, 6])
def test_equator_truncation_sound(m):
    # levels past J* and K* are all positive
    rep = index_nullity_equator(m)
    for j in range(rep.truncation["J*"] + 1, rep.truncation["J*"] + 30):
        lam = laplace_eigenvalue(m, j)
        assert equator_normal_eigenvalue(m, lam) > 0 and equator_tangent_eigenvalue(m, lam) > 0
    for k in range(rep.truncation["K*"] + 1, rep.truncation["K*"] + 30):
        assert m == 1 or equator_tangent_eigenvalue(m, divfree_eigenvalue(m, k)) > 0


def test_equator_examples():
    assert (index_nullity_equator(6).index, index_nullity_equator(6).nullity) == (8, 28)
    assert (index_nullity_equator(1).index, index_nullity_equator(1).nullity) == (0, 3)


# -- small hyperspheres -----------------------------------------------------------


@pytest.mark.parametrize("m,R,nullity", [(1, Fraction(1, 2), 3), (2, Fraction(1, 3), 6),
                                         (3, Fraction(1, 2), 10), (4, Fraction(3, 4), 20)])
def test_hyperspheres(m, R, nullity):
    rep = index_nullity_hypersphere(m, R)
    assert (rep.index, rep.nullity) == (1, nullity)
    assert rep.variational
    assert {"J*", "K*", "lambda_bound", "mu_bound", "polynomials"} <= set(rep.truncation)


def test_s0_values():
    assert hypersphere_s0(4, Fraction(3, 4)) == Fraction(-64, 3)
    assert hypersphere_s0(1, Fraction(1, 2)) == -4
    for m, R in CRITICAL_HYPERSPHERES:
        assert hypersphere_block(m, R, 0).a == hypersphere_s0(m, R)


def test_m4_level_one_block_vanishes():
    blk = hypersphere_block(4, Fraction(3, 4), 1)
    assert blk.a == blk.b == blk.d_sq == 0
    assert (blk.negative_count, blk.zero_count) == (0, 2)
    rep = index_nullity_hypersphere(4, Fraction(3, 4))
    level1 = [e for e in rep.entries(BLOCK) if e.level == 1][0]
    assert level1.zero * level1.multiplicity == 10


def test_m2_level_one_block():
    blk = hypersphere_block(2, Fraction(1, 3), 1)
    assert blk.trace == 112 and blk.det == 0


def test_divfree_displays():
    # oracle: closed factorisations of the divergence-free eigenvalue at two critical radii
    mu = sp.symbols("mu")
    for (m, R), want in [((4, Fraction(3, 4)), sp.Rational(1, 3) * (mu - 8) * (3 * mu - 8)),
                         ((2, Fraction(1, 3)), mu * (mu - 6))]:
        for x in range(-5, 40, 3):
            assert hypersphere_divfree_eigenvalue(m, R, x) == Fraction(str(want.subs(mu, x)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), fracs)
def test_reduces_to_equator(m, lam):
    # at R = 1 the block decouples into the equator eigenvalues
    blk_a = hypersphere_block(m, 1, 1)
    assert blk_a.d_sq == 0
    from cbiharmonic import stability as stab

    assert stab._a(m, Fraction(1), lam, True) == equator_normal_eigenvalue(m, lam)
    assert stab._b(m, Fraction(1), lam, True) == equator_tangent_eigenvalue(m, lam)
    assert stab._d_sq(m, Fraction(1), lam, True) == 0
    assert hypersphere_divfree_eigenvalue(m, 1, lam) == equator_tangent_eigenvalue(m, lam)


@settings(max_examples=200, deadline=None)
@given(fracs, fracs, st.fractions(min_value=0, max_value=100, max_denominator=20))
def test_block_sign_counts(a, b, d_sq):
    # oracle: numpy eigenvalues of the symmetric 2x2 block
    blk = BlockSpectrum(3, Fraction(1, 2), 1, a, b, d_sq)
    ev = np.linalg.eigvalsh(np.array([[float(a), float(d_sq) ** 0.5], [float(d_sq) ** 0.5, float(b)]]))
    tol = 1e-9 * (1 + abs(ev).max())
    if blk.zero_count == 0 and np.all(np.abs(ev) > tol):
        assert blk.negative_count == int(np.sum(ev < 0))
    assert blk.negative_count + blk.zero_count <= 2


def test_hypersphere_truncation_sound():
    for m, R in CRITICAL_HYPERSPHERES:
        rep = index_nullity_hypersphere(m, R)
        for j in range(rep.truncation["J*"] + 1, rep.truncation["J*"] + 20):
            blk = hypersphere_block(m, R, j)
            assert blk.trace > 0 and blk.det > 0


def test_non_variational_flag():
    assert not is_critical(3, Fraction(1, 3))
    rep = index_nullity_hypersphere(3, Fraction(1, 3))
    assert not rep.variational


def test_bienergy_operator_option():
    rep = index_nullity_hypersphere(4, Fraction(3, 4), conformal=False)
    assert not rep.conformal


def test_radius_domain():
    with pytest.raises(ValueError):
        index_nullity_hypersphere(2, 2)
    with pytest.raises(ValueError):
        hypersphere_block(2, Fraction(1, 3), -1)
