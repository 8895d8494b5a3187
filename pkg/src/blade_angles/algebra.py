"""Dense Clifford algebra of Euclidean R^n.

A multivector is stored as a length-``2**n`` coefficient vector indexed by
basis-blade bitmask: bit ``i`` set means the factor ``e_{i+1}`` is present,
and factors always appear in increasing index order.  The sign of a product
of two basis blades is obtained by counting transpositions, computed on the
fly with popcounts; nothing is tabulated per algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    GradeError,
    NonConvergenceError,
    NotABladeError,
)

MAX_DIM = 14
MAX_SERIES_TERMS = 200


@dataclass(frozen=True)
class Tolerance:
    """Tolerances used by structural predicates and identity checks.

    ``structural`` governs simplicity / orthogonality tests and
    ``identity`` is the residual bound for identity checks and the power
    series truncation rule.
    """

    structural: float = 1e-10
    identity: float = 1e-9

    def __post_init__(self):
        for name in ("structural", "identity"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-3):
                raise ValueError(f"{name} tolerance must lie in (0, 1e-3), got {value!r}")


DEFAULT_TOL = Tolerance()


class Algebra:
    """The geometric algebra of R^n with an orthonormal basis e_1..e_n."""

    def __init__(self, n: int):
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise TypeError(f"dimension must be an integer, got {type(n).__name__}")
        if not 1 <= n <= MAX_DIM:
            raise DimensionMismatchError(f"dimension must be in 1..{MAX_DIM}, got {n}")
        self.n = int(n)
        self.size = 1 << self.n
        self.grades = np.bitwise_count(np.arange(self.size, dtype=np.int64)).astype(np.int64)
        self.grades.flags.writeable = False

    def __eq__(self, other):
        return isinstance(other, Algebra) and other.n == self.n

    def __hash__(self):
        return hash(("Algebra", self.n))

    def __repr__(self):
        return f"Algebra({self.n})"

    # -- constructors -------------------------------------------------
    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.size))

    def scalar(self, value: float) -> "Multivector":
        coeffs = np.zeros(self.size)
        coeffs[0] = value
        return Multivector(self, coeffs)

    def vector(self, coords: Sequence[float]) -> "Multivector":
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.n,):
            raise DimensionMismatchError(f"vector needs {self.n} coordinates, got shape {coords.shape}")
        coeffs = np.zeros(self.size)
        coeffs[1 << np.arange(self.n)] = coords
        return Multivector(self, coeffs)

    def basis_blade(self, *indices: int) -> "Multivector":
        """Product ``e_{i1} e_{i2} ...`` of basis vectors (1-based indices)."""
        result = self.scalar(1.0)
        for i in indices:
            if not 1 <= i <= self.n:
                raise GradeError(f"basis index {i} outside 1..{self.n}")
            result = result * self.vector(np.eye(self.n)[i - 1])
        return result

    def pseudoscalar(self) -> "Multivector":
        return self.basis_blade(*range(1, self.n + 1))

    def label(self, mask: int) -> str:
        if mask == 0:
            return "1"
        idx = [str(i + 1) for i in range(self.n) if mask >> i & 1]
        return "e" + ("".join(idx) if self.n < 10 else "_".join(idx))


@lru_cache(maxsize=None)
def algebra(n: int) -> Algebra:
    """Shared :class:`Algebra` instance for dimension ``n``."""
    return Algebra(n)


class Multivector:
    """Immutable dense multivector.

    Arithmetic operators: ``+``, ``-``, ``*`` (geometric product, or scaling
    by a real), ``/`` (by a real), ``^`` (outer product), ``~`` (reversion).
    Equality is tolerance based, see :meth:`isclose`.
    """

    __slots__ = ("algebra", "coeffs")
    __hash__ = None

    def __init__(self, algebra: Algebra, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.shape != (algebra.size,):
            raise DimensionMismatchError(
                f"expected {algebra.size} coefficients for n={algebra.n}, got shape {arr.shape}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- arithmetic ---------------------------------------------------
    def _same(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise DimensionMismatchError(f"algebra mismatch: n={self.algebra.n} vs n={other.algebra.n}")

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._same(other)
            return other
        if isinstance(other, (int, float, np.integer, np.floating)):
            return self.algebra.scalar(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Multivector(self.algebra, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Multivector(self.algebra, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Multivector(self.algebra, -self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Multivector(self.algebra, self.coeffs * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Multivector(self.algebra, self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Multivector(self.algebra, self.coeffs / float(other))
        return NotImplemented

    def __xor__(self, other):
        return outer_product(self, other)

    def __invert__(self):
        return reverse(self)

    # -- inspection ---------------------------------------------------
    def __getitem__(self, mask: int) -> float:
        return float(self.coeffs[mask])

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def vector_part(self) -> np.ndarray:
        return np.array(self.coeffs[1 << np.arange(self.algebra.n)])

    def norm_sq(self) -> float:
        return float(np.dot(self.coeffs, self.coeffs))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def grade_norms(self) -> np.ndarray:
        """Norm of each grade component, index = grade."""
        sq = np.bincount(self.algebra.grades, weights=self.coeffs**2, minlength=self.algebra.n + 1)
        return np.sqrt(sq)

    def grades_present(self, rel: float = 1e-12) -> list[int]:
        """Grades whose component norm exceeds ``rel`` times the total norm."""
        norms = self.grade_norms()
        total = self.norm()
        if total == 0.0:
            return []
        return [k for k, v in enumerate(norms) if v > rel * total]

    def is_homogeneous(self, rel: float = 1e-12) -> bool:
        return len(self.grades_present(rel)) <= 1

    def isclose(self, other, eps: float = DEFAULT_TOL.identity) -> bool:
        """``||a - b|| <= eps * max(1, ||a||, ||b||)``."""
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        scale = max(1.0, self.norm(), other.norm())
        return float(np.linalg.norm(self.coeffs - other.coeffs)) <= eps * scale

    def __eq__(self, other):
        if not isinstance(other, (Multivector, int, float, np.integer, np.floating)):
            return NotImplemented
        try:
            return self.isclose(other)
        except DimensionMismatchError:
            return False

    def terms(self, eps: float = 0.0) -> list[tuple[str, float]]:
        """Nonzero ``(label, coefficient)`` pairs in bitmask order."""
        idx = np.flatnonzero(np.abs(self.coeffs) > eps)
        return [(self.algebra.label(int(i)), float(self.coeffs[i])) for i in idx]

    def __repr__(self):
        terms = self.terms(1e-15)
        if not terms:
            return "0"
        parts = []
        for label, c in terms:
            body = f"{c:.6g}" if label == "1" else f"{c:.6g} {label}"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")


# -- product kernel ---------------------------------------------------------

GradeFilter = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


def _reorder_parity(a_masks: np.ndarray, b_masks: np.ndarray, n: int) -> np.ndarray:
    """Parity of transpositions needed to sort e_A e_B into canonical order."""
    count = np.zeros(np.broadcast_shapes(a_masks.shape, b_masks.shape), dtype=np.int64)
    for k in range(1, n):
        count += np.bitwise_count((a_masks >> k) & b_masks)
    return count & 1


def _bilinear(a: Multivector, b: Multivector, keep: GradeFilter | None = None) -> Multivector:
    if not isinstance(a, Multivector) or not isinstance(b, Multivector):
        raise TypeError("products are defined between Multivector instances")
    if a.algebra != b.algebra:
        raise DimensionMismatchError(f"algebra mismatch: n={a.algebra.n} vs n={b.algebra.n}")
    alg = a.algebra
    ia = np.flatnonzero(a.coeffs)
    ib = np.flatnonzero(b.coeffs)
    if ia.size == 0 or ib.size == 0:
        return alg.zero()
    I = ia[:, None]
    J = ib[None, :]
    K = I ^ J
    vals = np.outer(a.coeffs[ia], b.coeffs[ib])
    vals = np.where(_reorder_parity(I, J, alg.n) == 1, -vals, vals)
    if keep is not None:
        g = alg.grades
        vals = np.where(keep(g[I], g[J], g[K]), vals, 0.0)
    out = np.bincount(K.ravel(), weights=vals.ravel(), minlength=alg.size)
    return Multivector(alg, out)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return _bilinear(a, b)


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    return _bilinear(a, b, lambda p, q, k: k == p + q)


def left_contraction(a: Multivector, b: Multivector) -> Multivector:
    """Grade ``q - p`` part of each homogeneous product (zero when p > q)."""
    return _bilinear(a, b, lambda p, q, k: k == q - p)


def right_contraction(a: Multivector, b: Multivector) -> Multivector:
    """Grade ``p - q`` part of each homogeneous product (zero when q > p)."""
    return _bilinear(a, b, lambda p, q, k: k == p - q)


def fat_dot(a: Multivector, b: Multivector) -> Multivector:
    return _bilinear(a, b, lambda p, q, k: k == np.abs(q - p))


def hestenes_inner(a: Multivector, b: Multivector) -> Multivector:
    """Like :func:`fat_dot` but vanishing whenever a factor is a scalar."""
    return _bilinear(a, b, lambda p, q, k: (k == np.abs(q - p)) & (p > 0) & (q > 0))


def scalar_product(a: Multivector, b: Multivector) -> float:
    return _bilinear(a, b, lambda p, q, k: k == 0).scalar_part()


def reverse(m: Multivector) -> Multivector:
    g = m.algebra.grades
    signs = np.where((g * (g - 1) // 2) % 2 == 1, -1.0, 1.0)
    return Multivector(m.algebra, m.coeffs * signs)


def grade_involution(m: Multivector) -> Multivector:
    signs = np.where(m.algebra.grades % 2 == 1, -1.0, 1.0)
    return Multivector(m.algebra, m.coeffs * signs)


def grade_project(m: Multivector, k: int) -> Multivector:
    if not 0 <= k <= m.algebra.n:
        raise GradeError(f"grade {k} outside 0..{m.algebra.n}")
    return Multivector(m.algebra, np.where(m.algebra.grades == k, m.coeffs, 0.0))


def commutator(m: Multivector, n: Multivector) -> Multivector:
    """``(MN - NM) / 2``."""
    return (geometric_product(m, n) - geometric_product(n, m)) * 0.5


def anticommutator(m: Multivector, n: Multivector) -> Multivector:
    """``(MN + NM) / 2``."""
    return (geometric_product(m, n) + geometric_product(n, m)) * 0.5


def versor_inverse(m: Multivector) -> Multivector:
    """``~m / ||m||^2``; the inverse whenever ``m ~m`` is a positive scalar."""
    nsq = m.norm_sq()
    if nsq == 0.0:
        raise ZeroDivisionError("zero multivector has no inverse")
    return reverse(m) / nsq


def dual(m: Multivector, j: Multivector, tol: Tolerance = DEFAULT_TOL) -> Multivector:
    """Dual ``m j^{-1}`` with respect to a unit blade ``j``."""
    from .blades import certify_blade

    if m.algebra != j.algebra:
        raise DimensionMismatchError("dual: algebra mismatch")
    try:
        blade = certify_blade(j, tol)
    except (NotABladeError, GradeError) as exc:
        raise NotABladeError(f"dual needs a unit blade: {exc}") from exc
    if abs(blade.norm - 1.0) > tol.structural * 10:
        raise NotABladeError(f"dual needs a unit blade, got norm {blade.norm!r}")
    return geometric_product(m, versor_inverse(j))


# -- power series -----------------------------------------------------------


def _even_odd_series(m: Multivector, eps: float) -> tuple[Multivector, Multivector]:
    alg = m.algebra
    term = alg.scalar(1.0)
    even = term.coeffs.copy()
    odd = np.zeros(alg.size)
    for k in range(1, MAX_SERIES_TERMS + 1):
        term = geometric_product(term, m) / k
        if k % 2:
            odd += term.coeffs
        else:
            even += term.coeffs
        partial = float(np.linalg.norm(even + odd))
        if term.norm() < eps * max(1.0, partial):
            return Multivector(alg, even), Multivector(alg, odd)
    raise NonConvergenceError(f"series did not converge within {MAX_SERIES_TERMS} terms (||M|| = {m.norm():.3g})")


def mv_cosh(m: Multivector, tol: Tolerance = DEFAULT_TOL) -> Multivector:
    return _even_odd_series(m, tol.identity)[0]


def mv_sinh(m: Multivector, tol: Tolerance = DEFAULT_TOL) -> Multivector:
    return _even_odd_series(m, tol.identity)[1]


def mv_exp(m: Multivector, tol: Tolerance = DEFAULT_TOL) -> Multivector:
    even, odd = _even_odd_series(m, tol.identity)
    return even + odd


def vectors_to_blade(vectors: Iterable[Sequence[float]], alg: Algebra) -> Multivector:
    """Outer product of a list of coordinate vectors (scalar 1 if empty)."""
    result = alg.scalar(1.0)
    for v in vectors:
        result = outer_product(result, alg.vector(v))
    return result


def vectors_product(vectors: Iterable[Sequence[float]], alg: Algebra) -> Multivector:
    """Geometric product of a list of coordinate vectors (scalar 1 if empty)."""
    result = alg.scalar(1.0)
    for v in vectors:
        result = geometric_product(result, alg.vector(v))
    return result
