import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from blade_angles.algebra import scalar_product
from blade_angles.angles import complementary_angle, projection_factor
from blade_angles.bivector import angle_bivector_from_data, exp_angle_bivector, rotor_transport
from blade_angles.blades import blade_from_vectors
from blade_angles.principal import principal_data

finite = st.floats(-4.0, 4.0, allow_nan=False, allow_infinity=False)


@st.composite
def blade_pairs(draw, same_grade=False, max_n=6):
    n = draw(st.integers(2, max_n))
    p = draw(st.integers(1, n))
    q = p if same_grade else draw(st.integers(1, n))
    a = np.array(draw(st.lists(finite, min_size=p * n, max_size=p * n))).reshape(p, n)
    b = np.array(draw(st.lists(finite, min_size=q * n, max_size=q * n))).reshape(q, n)
    # keep the frames well conditioned so the blades are honest
    for m in (a, b):
        s = np.linalg.svd(m, compute_uv=False)
        assume(s[-1] > 0.1 and s[0] / s[-1] < 100)
    return blade_from_vectors(a), blade_from_vectors(b)


@settings(max_examples=60, deadline=None)
@given(blade_pairs(same_grade=True))
def test_product_equals_norms_times_exp(pair):
    a, b = pair
    pd = principal_data(a, b)
    phi = angle_bivector_from_data(pd, oriented=True)
    lhs = ~a.mv * b.mv
    rhs = exp_angle_bivector(phi) * (a.norm * b.norm)
    assert (lhs - rhs).norm() <= 1e-9 * a.norm * b.norm


@settings(max_examples=60, deadline=None)
@given(blade_pairs())
def test_angles_are_sorted_and_bounded(pair):
    a, b = pair
    pd = principal_data(a, b)
    assert len(pd.thetas) == min(a.grade, b.grade)
    # ascending up to round-off between numerically equal angles
    assert np.all(np.diff(pd.thetas) >= -1e-12)
    assert np.all(pd.thetas >= 0) and np.all(pd.thetas <= math.pi / 2 + 1e-15)
    np.testing.assert_allclose(np.cos(pd.thetas) ** 2 + np.sin(pd.thetas) ** 2, 1.0)


@settings(max_examples=60, deadline=None)
@given(blade_pairs())
def test_principal_angles_are_symmetric(pair):
    a, b = pair
    np.testing.assert_allclose(principal_data(a, b).thetas, principal_data(b, a).thetas, atol=1e-9)
    v, w = a.subspace(), b.subspace()
    assert abs(complementary_angle(v, w) - complementary_angle(w, v)) < 1e-9
    if a.grade == b.grade:
        assert abs(projection_factor(v, w) - projection_factor(w, v)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(blade_pairs(same_grade=True))
def test_projection_factor_is_normalized_scalar_product(pair):
    a, b = pair
    pf = projection_factor(a.subspace(), b.subspace())
    s = scalar_product(~a.mv, b.mv) / (a.norm * b.norm)
    assert abs(pf - abs(s)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(blade_pairs(same_grade=True, max_n=5))
def test_rotor_transport_lands_on_target_subspace(pair):
    a, b = pair
    assume(a.grade < a.algebra.n)
    pd = principal_data(a, b)
    moved = rotor_transport(a.unit(), angle_bivector_from_data(pd, oriented=True))
    assert (moved.mv - b.unit().mv).norm() < 1e-8
