"""Certified blades, orthonormal subspace frames and conversions between them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Algebra,
    Multivector,
    Tolerance,
    algebra,
    left_contraction,
    outer_product,
    scalar_product,
    vectors_product,
    vectors_to_blade,
)
from .errors import (
    DimensionMismatchError,
    GradeError,
    NotABladeError,
    RankDeficientError,
    ZeroBladeError,
)


def orthonormalize(vectors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Rows of the result are orthonormal and span the same space as the
    input rows.  Raises RankDeficientError when a pivot falls below
    ``tol.structural`` relative to the largest input norm.
    """
    vecs = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vecs.size == 0:
        return vecs.reshape(0, vecs.shape[-1] if vecs.ndim == 2 else 0)
    scale = max(float(np.max(np.linalg.norm(vecs, axis=1))), 1e-300)
    out = []
    for i, v in enumerate(vecs):
        w = v.copy()
        for _ in range(2):
            for u in out:
                w -= np.dot(u, w) * u
        nrm = np.linalg.norm(w)
        if nrm <= tol.structural * scale:
            raise RankDeficientError(f"frame is rank deficient at vector {i} (pivot {nrm:.3g})")
        out.append(w / nrm)
    return np.array(out)


def complete_basis(frame: np.ndarray, n: int) -> np.ndarray:
    """Orthonormal rows spanning the orthogonal complement of ``frame`` in R^n.

    Canonical basis vectors are fed through Gram-Schmidt in index order,
    so the completion is deterministic.
    """
    frame = np.asarray(frame, dtype=float).reshape(-1, n)
    basis = [row for row in frame]
    extra = []
    for i in range(n):
        if len(basis) == n:
            break
        w = np.eye(n)[i]
        for _ in range(2):
            for u in basis:
                w = w - np.dot(u, w) * u
        nrm = np.linalg.norm(w)
        if nrm > 1e-6:
            w = w / nrm
            basis.append(w)
            extra.append(w)
    return np.array(extra).reshape(-1, n)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of R^n given by an orthonormal frame (rows)."""

    frame: np.ndarray
    n: int

    def __post_init__(self):
        frame = np.array(self.frame, dtype=float).reshape(-1, self.n)
        frame.flags.writeable = False
        object.__setattr__(self, "frame", frame)

    @classmethod
    def from_vectors(cls, vectors, n: int | None = None, tol: Tolerance = DEFAULT_TOL) -> "Subspace":
        vecs = np.asarray(vectors, dtype=float)
        if vecs.size == 0:
            if n is None:
                raise DimensionMismatchError("empty frame needs an explicit ambient dimension")
            return cls(np.zeros((0, n)), n)
        vecs = np.atleast_2d(vecs)
        if n is not None and vecs.shape[1] != n:
            raise DimensionMismatchError(f"vectors have length {vecs.shape[1]}, expected {n}")
        if vecs.shape[0] > vecs.shape[1]:
            raise RankDeficientError(f"{vecs.shape[0]} vectors cannot be independent in R^{vecs.shape[1]}")
        return cls(orthonormalize(vecs, tol), vecs.shape[1])

    @property
    def dim(self) -> int:
        return self.frame.shape[0]

    def projector(self) -> np.ndarray:
        return self.frame.T @ self.frame

    def project(self, v) -> np.ndarray:
        return self.frame.T @ (self.frame @ np.asarray(v, dtype=float))

    def complement(self) -> "Subspace":
        return Subspace(complete_basis(self.frame, self.n), self.n)

    def contains(self, other: "Subspace", eps: float = 1e-9) -> bool:
        """True when every vector of ``other`` lies in this subspace."""
        if other.dim == 0:
            return True
        resid = other.frame - other.frame @ self.projector()
        return float(np.max(np.abs(resid))) <= eps

    def same_as(self, other: "Subspace", eps: float = 1e-9) -> bool:
        return self.dim == other.dim and self.contains(other, eps) and other.contains(self, eps)


@dataclass(frozen=True, eq=False)
class Blade:
    """A multivector certified simple.

    ``mv == scale * (factors[0] ^ ... ^ factors[-1])`` with orthonormal
    factors, so ``abs(scale) == norm``.  The zero blade has empty factors.
    """

    mv: Multivector
    grade: int
    norm: float
    factors: np.ndarray
    scale: float

    @property
    def algebra(self) -> Algebra:
        return self.mv.algebra

    @property
    def is_zero(self) -> bool:
        return self.norm == 0.0

    def subspace(self) -> Subspace:
        """The subspace [B] (zero-dimensional for scalars and the zero blade)."""
        n = self.algebra.n
        if self.is_zero or self.grade == 0:
            return Subspace(np.zeros((0, n)), n)
        return Subspace(self.factors, n)

    def unit(self) -> "Blade":
        if self.is_zero:
            raise ZeroBladeError("the zero blade has no unit version")
        return Blade(self.mv / self.norm, self.grade, 1.0, self.factors, float(np.sign(self.scale)))

    def scaled(self, c: float) -> "Blade":
        if c == 0.0:
            return zero_blade(self.algebra, self.grade)
        return Blade(self.mv * c, self.grade, self.norm * abs(c), self.factors, self.scale * c)

    def __neg__(self) -> "Blade":
        return self.scaled(-1.0)


def zero_blade(alg: Algebra, grade: int) -> Blade:
    return Blade(alg.zero(), grade, 0.0, np.zeros((0, alg.n)), 0.0)


def blade_from_frame(s: Subspace, scale: float = 1.0) -> Blade:
    """``scale`` times the geometric product of the frame vectors."""
    if scale == 0.0:
        raise ZeroBladeError("blade_from_frame needs a nonzero scale")
    alg = algebra(s.n)
    mv = vectors_product(s.frame, alg) * float(scale)
    return Blade(mv, s.dim, abs(float(scale)), np.array(s.frame), float(scale))


def blade_from_vectors(vectors, n: int | None = None, tol: Tolerance = DEFAULT_TOL) -> Blade:
    """Blade ``v_1 ^ ... ^ v_p`` of arbitrary (independent) vectors."""
    vecs = np.atleast_2d(np.asarray(vectors, dtype=float))
    n = vecs.shape[1] if n is None else n
    alg = algebra(n)
    mv = vectors_to_blade(vecs, alg)
    frame = orthonormalize(vecs, tol)
    unit = vectors_product(frame, alg)
    s = scalar_product(~unit, mv)
    return Blade(mv, vecs.shape[0], abs(s), frame, s)


def is_simple(m: Multivector, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Contraction test: ``(v _| M) ^ M == 0`` for every basis vector ``v``."""
    alg = m.algebra
    bound = tol.structural * max(m.norm_sq(), 1e-300)
    for i in range(alg.n):
        v = alg.vector(np.eye(alg.n)[i])
        if outer_product(left_contraction(v, m), m).norm() > bound:
            return False
    return True


def certify_blade(m: Multivector, tol: Tolerance = DEFAULT_TOL) -> Blade:
    """Factor a homogeneous multivector as ``scale * f_1 ... f_p``.

    The pivot is the basis blade with the largest |coefficient| (lowest
    bitmask on ties).  Contracting ``m`` by that blade with one factor
    removed gives p vectors of [m]; they are orthonormalized and the
    reconstruction residual decides simplicity.
    """
    alg = m.algebra
    nrm = m.norm()
    present = m.grades_present(tol.structural)
    if len(present) > 1:
        raise GradeError(f"not homogeneous: grades {present} present")
    if nrm == 0.0:
        return zero_blade(alg, 0)
    p = present[0]
    if p == 0:
        s = m.scalar_part()
        return Blade(alg.scalar(s), 0, abs(s), np.zeros((0, alg.n)), s)
    pivot = int(np.argmax(np.abs(m.coeffs)))
    idx = [i for i in range(alg.n) if pivot >> i & 1]
    spanning = []
    for drop in idx:
        rest = [i + 1 for i in idx if i != drop]
        contractor = alg.basis_blade(*rest)
        spanning.append(left_contraction(contractor, m).vector_part())
    try:
        factors = orthonormalize(spanning, tol)
    except RankDeficientError as exc:
        raise NotABladeError(f"factor extraction failed: {exc}") from exc
    unit = vectors_product(factors, alg)
    s = scalar_product(~unit, m)
    if (m - unit * s).norm() > tol.structural * nrm:
        raise NotABladeError("multivector is not simple (reconstruction residual too large)")
    return Blade(unit * s, p, abs(s), factors, s)


def project_blade(b: Blade, w: Subspace) -> Multivector:
    """Orthogonal projection onto ^W, applied factorwise."""
    alg = b.algebra
    if w.n != alg.n:
        raise DimensionMismatchError("project_blade: ambient dimensions differ")
    if b.is_zero:
        return alg.zero()
    projected = [w.project(f) for f in b.factors]
    return vectors_to_blade(projected, alg) * b.scale


def blade_inverse(b: Blade) -> Blade:
    """``~B / ||B||^2``."""
    if b.is_zero:
        raise ZeroBladeError("the zero blade is not invertible")
    sign = -1.0 if (b.grade * (b.grade - 1) // 2) % 2 else 1.0
    c = sign / b.norm**2
    return Blade(b.mv * c, b.grade, b.norm * abs(c), b.factors, b.scale * c)
