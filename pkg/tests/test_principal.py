import math

import numpy as np
import pytest

from golden import SQ5, SQ10, opposed_areas, plane_in_four_space, tilted_planes
from blade_angles.algebra import algebra, scalar_product
from blade_angles.blades import Subspace, blade_from_frame, blade_from_vectors
from blade_angles.errors import DimensionMismatchError, ZeroBladeError
from blade_angles.principal import (
    partially_orthogonal,
    po_decompose,
    principal_angles,
    principal_data,
    principal_data_from_bases,
    relative_orientation,
    svd_small,
)
from blade_angles.sampling import random_blade


def _numpy_angles(a, b):
    """Reference angles from LAPACK singular values of the cross-Gram matrix."""
    s = np.linalg.svd(a.factors @ b.factors.T, compute_uv=False)
    return np.sort(np.arccos(np.clip(s, -1.0, 1.0)))


@pytest.mark.parametrize("shape", [(1, 1), (1, 4), (4, 1), (3, 3), (2, 5), (5, 2), (4, 4)])
def test_svd_small_matches_lapack(shape):
    rng = np.random.default_rng(sum(shape))
    for _ in range(20):
        m = rng.standard_normal(shape)
        u, s, v = svd_small(m)
        k = min(shape)
        np.testing.assert_allclose(s, np.linalg.svd(m, compute_uv=False), atol=1e-13)
        np.testing.assert_allclose(u[:, :k] @ np.diag(s) @ v[:, :k].T, m, atol=1e-13)
        np.testing.assert_allclose(u.T @ u, np.eye(shape[0]), atol=1e-13)
        np.testing.assert_allclose(v.T @ v, np.eye(shape[1]), atol=1e-13)


def test_svd_small_rank_deficient():
    m = np.outer([1.0, 2.0, 3.0], [1.0, -1.0])
    u, s, v = svd_small(m)
    assert s[1] == 0.0
    np.testing.assert_allclose(u.T @ u, np.eye(3), atol=1e-14)
    np.testing.assert_allclose(u[:, :2] @ np.diag(s) @ v[:, :2].T, m, atol=1e-13)


def test_known_angles_of_tilted_planes():
    c = tilted_planes()
    pd = principal_data(c.a, c.b)
    # cosines 2/sqrt5 and 1/sqrt10 in ascending-angle order
    np.testing.assert_allclose(pd.cosines, [2 / SQ5, 1 / SQ10], atol=1e-15)
    assert pd.d == 0 and pd.D == 2 and pd.eps_ab == 1
    assert pd.eq1_residual() < 1e-15


def test_known_angles_with_intersection_and_right_angle():
    c = plane_in_four_space()
    pd = principal_data(c.a, c.b)
    np.testing.assert_allclose(pd.thetas, [math.pi / 6, math.pi / 2], atol=1e-15)
    assert pd.d == 0 and pd.D == 1 and pd.right_count == 1
    c = opposed_areas()
    pd = principal_data(c.a, c.b)
    assert pd.d == 1 and pd.eps_ab == -1
    np.testing.assert_allclose(pd.thetas, [0.0, math.acos(0.6)], atol=1e-15)


@pytest.mark.parametrize("seed", range(8))
def test_random_pairs_against_lapack_and_rank_oracle(seed):
    rng = np.random.default_rng(seed)
    for _ in range(25):
        n = int(rng.integers(2, 8))
        p, q = int(rng.integers(1, n + 1)), int(rng.integers(1, n + 1))
        a, b = random_blade(rng, p, n), random_blade(rng, q, n)
        pd = principal_data(a, b)
        np.testing.assert_allclose(pd.thetas, _numpy_angles(a, b), atol=1e-7)
        assert pd.eq1_residual() < 1e-12
        # null angles count the intersection: dim(V cap W) = p + q - rank[V; W]
        rank = np.linalg.matrix_rank(np.vstack([a.factors, b.factors]), tol=1e-8)
        assert pd.d == p + q - rank
        # the bases reproduce the blades with the recorded signs
        assert (pd.E() * (pd.eps_a * a.norm) - a.mv).norm() < 1e-10 * a.norm
        assert (pd.F() * (pd.eps_b * b.norm) - b.mv).norm() < 1e-10 * b.norm


def test_sign_of_scalar_product_matches_eps():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        p = int(rng.integers(1, n + 1))
        a, b = random_blade(rng, p, n), random_blade(rng, p, n)
        pd = principal_data(a, b)
        s = scalar_product(~a.mv, b.mv)
        assert pd.eps_ab == (1 if s > 0 else -1)
        assert relative_orientation(pd, a, b) == (pd.eps_ab, True)


def test_orthoprincipal_vectors_and_planes():
    c = tilted_planes()
    pd = principal_data(c.a, c.b)
    g1, g2 = c.named["g1"], c.named["g2"]
    # e_i perp is the normalized part of e_i orthogonal to [B]
    np.testing.assert_allclose(np.abs(pd.e_perp @ np.array([g2, g1]).T), np.eye(2), atol=1e-15)
    for i in range(2):
        plane = pd.plane(i)
        assert (plane * plane + 1).norm() < 1e-14


def test_indeterminate_orientation_is_reported():
    # a vector orthogonal to the other line
    a = blade_from_vectors([[1.0, 0.0]])
    b = blade_from_vectors([[0.0, 1.0]])
    pd = principal_data(a, b)
    assert not pd.orientation_determinate
    assert relative_orientation(pd, a, b) == (pd.eps_ab, False)


def test_from_bases_sorts_and_validates():
    c = tilted_planes()
    pd = principal_data_from_bases(c.a, c.b, c.e_basis, c.f_basis)
    np.testing.assert_allclose(pd.cosines, [2 / SQ5, 1 / SQ10], atol=1e-15)
    with pytest.raises(ValueError):
        principal_data_from_bases(c.a, c.b, c.e_basis, c.f_basis[::-1])
    with pytest.raises(ValueError):
        principal_data_from_bases(c.a, c.b, c.e_basis * 2, c.f_basis)


def test_swapped_and_flipped_views():
    c = plane_in_four_space()
    pd = principal_data_from_bases(c.a, c.b, c.e_basis, c.f_basis)
    sw = pd.swapped()
    assert sw.p == 4 and sw.q == 2 and sw.eq1_residual() < 1e-15
    flipped = pd.with_flipped_f(1)
    assert flipped.eps_b == -pd.eps_b
    with pytest.raises(ValueError):
        pd.with_flipped_f(0)


def test_principal_angles_and_partial_orthogonality():
    x = Subspace.from_vectors([[1, 0, 0, 0], [0, 1, 0, 0]])
    y = Subspace.from_vectors([[1, 0, 1, 0], [0, 0, 0, 1]])
    np.testing.assert_allclose(principal_angles(x, y), [math.pi / 4, math.pi / 2], atol=1e-15)
    assert partially_orthogonal(x, y)
    assert not partially_orthogonal(x, Subspace.from_vectors([[1, 0, 1, 0], [0, 1, 0, 1]]))
    assert partially_orthogonal(x, Subspace.from_vectors([[1, 1, 0, 0]]))
    assert not partially_orthogonal(Subspace(np.zeros((0, 4)), 4), y)
    with pytest.raises(DimensionMismatchError):
        principal_angles(x, Subspace.from_vectors([[1, 0, 0]]))


def test_po_decomposition_rebuilds_larger_blade():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = random_blade(rng, 2, 6), random_blade(rng, 4, 6)
        pd = principal_data(a, b)
        po = po_decompose(a, b, pd)
        assert (po.b_proj.mv * po.b_perp.mv - b.mv).norm() < 1e-10 * b.norm
        # the orthogonal part is orthogonal to A
        np.testing.assert_allclose(po.b_perp.factors @ a.factors.T, 0.0, atol=1e-10)


def test_errors():
    alg3 = algebra(3)
    a = blade_from_vectors([[1.0, 0.0, 0.0]])
    with pytest.raises(ZeroBladeError):
        principal_data(a, blade_from_frame(Subspace.from_vectors([[0, 1, 0]]), 1.0).scaled(0.0))
    with pytest.raises(DimensionMismatchError):
        principal_data(a, blade_from_vectors([[1.0, 0.0]]))
    assert alg3.n == 3
