"""Principal angles, associated principal bases and PO decompositions.

Principal data come from the SVD of the cross-Gram matrix of two
orthonormal frames.  Angles are recovered with ``atan2(sin, cos)`` where
the sine is the norm of the component of ``e_i`` orthogonal to the other
subspace; this keeps small angles accurate where ``arccos`` would not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .algebra import DEFAULT_TOL, Multivector, Tolerance, algebra, scalar_product, vectors_product
from .blades import Blade, Subspace, blade_from_frame, complete_basis
from .errors import DimensionMismatchError, ZeroBladeError

# Angles below ANGLE_ZERO count as 0, within ANGLE_RIGHT of pi/2 as pi/2.
ANGLE_ZERO = 1e-8
ANGLE_RIGHT = 1e-8
HALF_PI = math.pi / 2

_JACOBI_MAX_SWEEPS = 60


def svd_small(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One-sided (Hestenes) Jacobi SVD of a small p x q matrix.

    Returns ``(U, sigma, V)`` with ``U`` p x p and ``V`` q x q orthogonal
    and ``sigma`` the min(p, q) singular values in descending order, so
    that ``m == U[:, :k] @ diag(sigma) @ V[:, :k].T``.
    """
    m = np.atleast_2d(np.asarray(m, dtype=float))
    p, q = m.shape
    if p < q:
        V, sigma, U = svd_small(m.T)
        return U, sigma, V
    k = q
    a = m.copy()
    v = np.eye(q)
    for _ in range(_JACOBI_MAX_SWEEPS):
        rotated = False
        for i in range(q - 1):
            for j in range(i + 1, q):
                alpha = float(a[:, i] @ a[:, i])
                beta = float(a[:, j] @ a[:, j])
                gamma = float(a[:, i] @ a[:, j])
                if gamma == 0.0 or abs(gamma) <= 1e-16 * math.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                ai, aj = a[:, i].copy(), a[:, j].copy()
                a[:, i], a[:, j] = c * ai - s * aj, s * ai + c * aj
                vi, vj = v[:, i].copy(), v[:, j].copy()
                v[:, i], v[:, j] = c * vi - s * vj, s * vi + c * vj
        if not rotated:
            break
    sigma = np.linalg.norm(a, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, a, v = sigma[order], a[:, order], v[:, order]
    top = sigma[0] if k else 0.0
    cols = []
    for j in range(k):
        if sigma[j] > 1e-14 * max(top, 1e-300) and sigma[j] > 1e-300:
            cols.append(a[:, j] / sigma[j])
        else:
            sigma[j] = 0.0
            break
    nonzero = len(cols)
    rest = complete_basis(np.array(cols).reshape(-1, p), p)
    u = np.vstack([np.array(cols).reshape(-1, p), rest]).T
    sigma[nonzero:] = 0.0
    return u, sigma, v


@dataclass(frozen=True, eq=False)
class PrincipalData:
    """Principal angles and associated principal bases of two blades.

    ``e_basis`` (p x n) and ``f_basis`` (q x n) hold principal vectors as
    rows, satisfying ``e_i . f_j = delta_ij cos(theta_i)``.  ``e_perp`` and
    ``f_perp`` hold the orthoprincipal vectors for ``i < m`` (zero rows for
    null angles).  Signs satisfy ``A = eps_a ||A|| e_1...e_p`` and
    ``B = eps_b ||B|| f_1...f_q``.  Indices ``d`` and ``D`` are counts
    (1-based in the usual notation).
    """

    thetas: np.ndarray
    e_basis: np.ndarray
    f_basis: np.ndarray
    e_perp: np.ndarray
    f_perp: np.ndarray
    eps_a: int
    eps_b: int
    a_norm: float
    b_norm: float
    orientation_determinate: bool

    @property
    def n(self) -> int:
        return self.e_basis.shape[1]

    @property
    def p(self) -> int:
        return self.e_basis.shape[0]

    @property
    def q(self) -> int:
        return self.f_basis.shape[0]

    @property
    def m(self) -> int:
        return len(self.thetas)

    @property
    def eps_ab(self) -> int:
        return self.eps_a * self.eps_b

    @property
    def cosines(self) -> np.ndarray:
        return np.cos(self.thetas)

    @property
    def sines(self) -> np.ndarray:
        return np.sin(self.thetas)

    @property
    def zero_mask(self) -> np.ndarray:
        return self.thetas < ANGLE_ZERO

    @property
    def right_mask(self) -> np.ndarray:
        return np.abs(self.thetas - HALF_PI) < ANGLE_RIGHT

    @property
    def d(self) -> int:
        """Number of null principal angles, i.e. dim of the intersection."""
        return int(np.count_nonzero(self.zero_mask))

    @property
    def D(self) -> int:
        """Largest (1-based) index whose angle is not pi/2; 0 if none."""
        idx = np.flatnonzero(~self.right_mask)
        return int(idx[-1]) + 1 if idx.size else 0

    @property
    def right_count(self) -> int:
        return int(np.count_nonzero(self.right_mask))

    def E(self) -> Multivector:
        return vectors_product(self.e_basis, algebra(self.n))

    def F(self) -> Multivector:
        return vectors_product(self.f_basis, algebra(self.n))

    def plane(self, i: int) -> Multivector:
        """Principal bivector ``I_i = e_i_perp f_i`` (0-based ``i``; zero if null)."""
        alg = algebra(self.n)
        if self.zero_mask[i]:
            return alg.zero()
        return vectors_product([self.e_perp[i], self.f_basis[i]], alg)

    def eq1_residual(self) -> float:
        """``max |e_i . f_j - delta_ij cos(theta_i)|``."""
        gram = self.e_basis @ self.f_basis.T
        target = np.zeros_like(gram)
        target[np.arange(self.m), np.arange(self.m)] = self.cosines
        return float(np.max(np.abs(gram - target))) if gram.size else 0.0

    def swapped(self) -> "PrincipalData":
        """The same principal bases with the roles of A and B exchanged."""
        return PrincipalData(
            thetas=self.thetas,
            e_basis=self.f_basis,
            f_basis=self.e_basis,
            e_perp=self.f_perp,
            f_perp=self.e_perp,
            eps_a=self.eps_b,
            eps_b=self.eps_a,
            a_norm=self.b_norm,
            b_norm=self.a_norm,
            orientation_determinate=self.orientation_determinate,
        )

    def with_flipped_f(self, i: int) -> "PrincipalData":
        """Alternative principal basis with ``f_i`` negated (0-based ``i``).

        Only valid when ``f_i`` is unpaired (``i >= m``) or its angle is a
        right angle; ``eps_b`` flips accordingly.
        """
        if i < self.m and not self.right_mask[i]:
            raise ValueError(f"f_{i + 1} is paired with a non-right angle; flipping it breaks e_i . f_i = cos(theta_i)")
        f = np.array(self.f_basis)
        f[i] = -f[i]
        fp = np.array(self.f_perp)
        if i < self.m:
            fp[i] = -fp[i]
        return replace(self, f_basis=f, f_perp=fp, eps_b=-self.eps_b)


def _sign(x: float) -> int:
    return -1 if x < 0 else 1


def _orthoprincipal(vecs: np.ndarray, other: np.ndarray, count: int, zero: np.ndarray) -> np.ndarray:
    out = np.zeros((count, vecs.shape[1]))
    for i in range(count):
        if zero[i]:
            continue
        r = vecs[i] - other.T @ (other @ vecs[i])
        out[i] = r / np.linalg.norm(r)
    return out


def _angles(e: np.ndarray, f: np.ndarray, count: int) -> np.ndarray:
    thetas = np.empty(count)
    for i in range(count):
        c = float(e[i] @ f[i])
        s = float(np.linalg.norm(e[i] - f.T @ (f @ e[i])))
        thetas[i] = math.atan2(s, max(c, 0.0))
    return thetas


def _frames(a: Blade, b: Blade):
    if a.is_zero or b.is_zero:
        raise ZeroBladeError("principal data need nonzero blades")
    if a.algebra != b.algebra:
        raise DimensionMismatchError("blades live in different algebras")
    return np.asarray(a.factors, dtype=float), np.asarray(b.factors, dtype=float)


def _finish(a: Blade, b: Blade, e: np.ndarray, f: np.ndarray, thetas: np.ndarray, tol: Tolerance) -> PrincipalData:
    n = a.algebra.n
    alg = algebra(n)
    m = len(thetas)
    zero = thetas < ANGLE_ZERO
    e_perp = _orthoprincipal(e, f, m, zero)
    f_perp = _orthoprincipal(f, e, m, zero)
    eps_a = _sign(scalar_product(~vectors_product(e, alg), a.mv))
    eps_b = _sign(scalar_product(~vectors_product(f, alg), b.mv))
    s = scalar_product(~a.mv, b.mv)
    determinate = abs(s) > tol.structural * a.norm * b.norm
    e.flags.writeable = False
    f.flags.writeable = False
    return PrincipalData(thetas, e, f, e_perp, f_perp, eps_a, eps_b, a.norm, b.norm, bool(determinate))


def principal_data(a: Blade, b: Blade, tol: Tolerance = DEFAULT_TOL) -> PrincipalData:
    """Principal angles and bases of [a] and [b] via the cross-Gram SVD.

    Sign rule: ``eps_b`` is made +1 by flipping the last f when it is free
    (unpaired or at a right angle) or else by flipping the last (e, f)
    pair; then ``eps_a`` is made +1 by flipping the last e if it is
    unpaired.  Extra vectors beyond ``m`` come from the SVD completion.
    """
    ea, fb = _frames(a, b)
    p, q = ea.shape[0], fb.shape[0]
    m = min(p, q)
    if m == 0:
        thetas = np.zeros(0)
        return _finish(a, b, ea.copy(), fb.copy(), thetas, tol)
    u, sigma, v = svd_small(ea @ fb.T)
    e = u.T @ ea
    f = v.T @ fb
    thetas = _angles(e, f, m)
    # sign fixing: keep e_i . f_i = cos(theta_i) intact while pushing eps_a, eps_b to +1
    alg = a.algebra
    eps_b = _sign(scalar_product(~vectors_product(f, alg), b.mv))
    if eps_b < 0:
        j = q - 1
        if j >= m or abs(thetas[j] - HALF_PI) < ANGLE_RIGHT:
            f[j] = -f[j]
        else:
            f[j] = -f[j]
            e[j] = -e[j]
    eps_a = _sign(scalar_product(~vectors_product(e, alg), a.mv))
    if eps_a < 0 and p > m:
        e[p - 1] = -e[p - 1]
    return _finish(a, b, e, f, thetas, tol)


def principal_data_from_bases(
    a: Blade, b: Blade, e_basis, f_basis, tol: Tolerance = DEFAULT_TOL
) -> PrincipalData:
    """Principal data built from caller-chosen associated principal bases.

    The bases must be orthonormal, span [a] and [b], and satisfy
    ``e_i . f_j = delta_ij cos(theta_i)`` with nonnegative cosines.  Pairs
    are reordered to ascending angle if needed.
    """
    ea, fb = _frames(a, b)
    e = np.array(e_basis, dtype=float).reshape(-1, a.algebra.n)
    f = np.array(f_basis, dtype=float).reshape(-1, a.algebra.n)
    if e.shape[0] != ea.shape[0] or f.shape[0] != fb.shape[0]:
        raise DimensionMismatchError("basis sizes do not match blade grades")
    eps = 1e-9
    for basis, frame, name in ((e, ea, "e"), (f, fb, "f")):
        if np.max(np.abs(basis @ basis.T - np.eye(len(basis)))) > eps:
            raise ValueError(f"{name}-basis is not orthonormal")
        if len(basis) and np.max(np.abs(basis - basis @ frame.T @ frame)) > eps:
            raise ValueError(f"{name}-basis does not span the blade's subspace")
    m = min(len(e), len(f))
    gram = e @ f.T
    diag = np.diag(gram)[:m].copy()
    off = gram.copy()
    off[np.arange(m), np.arange(m)] = 0.0
    if off.size and np.max(np.abs(off)) > eps:
        raise ValueError("bases are not associated: off-diagonal e_i . f_j nonzero")
    if np.any(diag < -eps):
        raise ValueError("bases are not associated: negative e_i . f_i")
    order = np.argsort(-diag, kind="stable")
    e[:m] = e[:m][order]
    f[:m] = f[:m][order]
    thetas = _angles(e, f, m)
    return _finish(a, b, e, f, thetas, tol)


def principal_angles(v: Subspace, w: Subspace) -> np.ndarray:
    """Ascending principal angles of two subspaces (radians)."""
    if v.n != w.n:
        raise DimensionMismatchError("subspaces live in different dimensions")
    m = min(v.dim, w.dim)
    if m == 0:
        return np.zeros(0)
    u, sigma, vv = svd_small(v.frame @ w.frame.T)
    return _angles(u.T @ v.frame, vv.T @ w.frame, m)


def relative_orientation(pd: PrincipalData, a: Blade, b: Blade, tol: Tolerance = DEFAULT_TOL) -> tuple[int, bool]:
    """``(eps_ab, determinate)``.

    When ``~A * B`` is clearly nonzero its sign is returned (and it must
    agree with the principal bases); otherwise the basis-dependent value
    from ``pd`` is returned with ``determinate=False``.
    """
    s = scalar_product(~a.mv, b.mv)
    if abs(s) > tol.structural * a.norm * b.norm:
        sign = _sign(s)
        if sign != pd.eps_ab:
            raise RuntimeError("principal bases disagree with the sign of ~A * B")
        return sign, True
    return pd.eps_ab, False


def partially_orthogonal(v: Subspace, w: Subspace) -> bool:
    """Whether V holds a nonzero vector orthogonal to all of W."""
    if v.dim == 0:
        return False
    if v.dim > w.dim:
        return True
    thetas = principal_angles(v, w)
    return bool(abs(thetas[-1] - HALF_PI) < ANGLE_RIGHT)


@dataclass(frozen=True, eq=False)
class PODecomposition:
    """``B = B_P B_perp`` with respect to another blade A."""

    b_proj: Blade
    b_perp: Blade
    w_proj: Subspace
    w_perp: Subspace


def po_decompose(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> PODecomposition:
    """Projective / orthogonal subblades of ``b`` relative to ``a``.

    ``pd`` must be principal data of (a, b) when given, so that the
    decomposition shares its principal bases.
    """
    if pd is None:
        pd = principal_data(a, b, tol)
    n = pd.n
    m = pd.m
    w_proj = Subspace(pd.f_basis[:m], n)
    w_perp = Subspace(pd.f_basis[m:], n)
    b_proj = blade_from_frame(w_proj, pd.eps_b * pd.b_norm)
    b_perp = blade_from_frame(w_perp, 1.0)
    return PODecomposition(b_proj, b_perp, w_proj, w_perp)
