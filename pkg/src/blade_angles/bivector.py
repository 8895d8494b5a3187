"""Angle bivectors, their closed-form exponentials, rotor transport and geodesics.

An angle bivector is stored as a list of ``(theta_i, I_i)`` terms over
mutually orthogonal unit principal bivectors.  Because the planes commute,
``exp(sum theta_i I_i)`` factors into plane rotors, which gives exact
closed forms for the exponential and its even/odd (cosh/sinh) parts.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, Multivector, Tolerance, algebra, vectors_product
from .blades import Blade, Subspace, blade_from_frame, certify_blade, complete_basis
from .errors import SubspaceMismatchError
from .principal import ANGLE_ZERO, PrincipalData, principal_data


@dataclass(frozen=True, eq=False)
class AngleBivector:
    """``Phi = sum theta_i I_i`` as an explicit term list.

    ``indices`` gives the 0-based principal index of each term.  ``flags``
    records non-uniqueness or degenerate choices made while building it.
    """

    thetas: tuple[float, ...]
    planes: tuple[Multivector, ...]
    indices: tuple[int, ...]
    n: int
    oriented: bool
    eps: int
    source: PrincipalData | None = None
    flags: tuple[str, ...] = field(default=())

    @property
    def multivector(self) -> Multivector:
        out = algebra(self.n).zero()
        for t, plane in zip(self.thetas, self.planes):
            out = out + plane * t
        return out

    @property
    def terms(self) -> list[tuple[float, Multivector]]:
        return list(zip(self.thetas, self.planes))

    def scaled(self, t: float) -> "AngleBivector":
        return AngleBivector(
            tuple(t * th for th in self.thetas), self.planes, self.indices, self.n,
            self.oriented, self.eps, self.source, self.flags,
        )

    def reversed(self) -> "AngleBivector":
        """``~Phi = -Phi``, an angle bivector in the opposite direction."""
        return self.scaled(-1.0)

    def norm(self) -> float:
        return math.sqrt(sum(t * t for t in self.thetas))


def _unoriented_terms(pd: PrincipalData):
    thetas, planes, idx = [], [], []
    for i in range(pd.m):
        if pd.zero_mask[i]:
            continue
        thetas.append(float(pd.thetas[i]))
        planes.append(pd.plane(i))
        idx.append(i)
    return thetas, planes, idx


def angle_bivector_from_data(pd: PrincipalData, oriented: bool = False) -> AngleBivector:
    """Build (oriented) Phi from given principal data.

    For the oriented version with ``eps_ab == -1`` the last term becomes
    ``(pi - theta_m) * (-I_m)``.  If ``theta_m == 0`` (the subspaces are
    nested) the plane ``I_m`` is undefined and ``g f_m`` is used, ``g`` a
    unit vector orthogonal to both subspaces; without such a vector the
    plane spanned by the last two e's is used, or (n = 1) no plane at all,
    and the choice is flagged.
    """
    thetas, planes, idx = _unoriented_terms(pd)
    flags = []
    if pd.m and pd.right_mask[pd.m - 1]:
        flags.append("non-unique: last principal angle is pi/2")
    eps = pd.eps_ab
    if oriented and eps < 0 and pd.m:
        last = pd.m - 1
        if idx and idx[-1] == last:
            thetas[-1] = math.pi - thetas[-1]
            planes[-1] = -planes[-1]
        else:
            plane, note = _flip_plane(pd)
            thetas.append(math.pi)
            planes.append(plane)
            idx.append(last)
            flags.append(note)
    return AngleBivector(tuple(thetas), tuple(planes), tuple(idx), pd.n, oriented, eps, pd, tuple(flags))


def _flip_plane(pd: PrincipalData) -> tuple[Multivector, str]:
    n, alg = pd.n, algebra(pd.n)
    f_last = pd.f_basis[pd.m - 1]
    used = np.vstack([pd.e_basis[: pd.m], pd.f_basis[: pd.m]])
    # e_i and f_i with a null angle count as one direction, so the rank
    # threshold follows the null-angle classification
    _, s, vh = np.linalg.svd(used)
    rank = int(np.sum(s > ANGLE_ZERO))
    rest = complete_basis(vh[:rank], n)
    if len(rest):
        g = rest[0]
        f = f_last - (g @ f_last) * g
        return vectors_product([g, f / np.linalg.norm(f)], alg), "orientation flip uses a plane orthogonal to both subspaces"
    if n >= 2 and pd.m >= 2:
        return vectors_product([pd.e_basis[pd.m - 2], pd.e_basis[pd.m - 1]], alg), (
            "orientation flip has no rotation plane; exp is -1 but rotor transport cannot reorient"
        )
    return alg.zero(), "orientation flip has no rotation plane (n = 1); only exp is meaningful"


def _as_blade(x, tol: Tolerance) -> Blade:
    if isinstance(x, Blade):
        return x
    return blade_from_frame(x)


def angle_bivector(v: Subspace | Blade, w: Subspace | Blade, tol: Tolerance = DEFAULT_TOL) -> AngleBivector:
    """Non-oriented angle bivector from V to W (distinct dims use W_P)."""
    return angle_bivector_from_data(principal_data(_as_blade(v, tol), _as_blade(w, tol), tol), oriented=False)


def oriented_angle_bivector(a: Blade, b: Blade, tol: Tolerance = DEFAULT_TOL) -> AngleBivector:
    return angle_bivector_from_data(principal_data(a, b, tol), oriented=True)


def exp_parts(phi: AngleBivector) -> tuple[Multivector, Multivector]:
    """Closed-form ``(cosh Phi, sinh Phi)``.

    Expanding ``prod (cos theta_i + sin theta_i I_i)``, the terms with an
    even number of planes form cosh and the odd ones form sinh.
    """
    alg = algebra(phi.n)
    even, odd = alg.scalar(1.0), alg.zero()
    for t, plane in zip(phi.thetas, phi.planes):
        c, s = math.cos(t), math.sin(t)
        even, odd = even * c + odd * plane * s, odd * c + even * plane * s
    return even, odd


def exp_angle_bivector(phi: AngleBivector) -> Multivector:
    """``e^Phi`` as the product of principal rotors."""
    even, odd = exp_parts(phi)
    return even + odd


def cosh_angle_bivector(phi: AngleBivector) -> Multivector:
    return exp_parts(phi)[0]


def sinh_angle_bivector(phi: AngleBivector) -> Multivector:
    return exp_parts(phi)[1]


def _check_source(e: Blade, phi: AngleBivector, eps: float = 1e-8) -> None:
    if phi.source is None:
        return
    src = Subspace(phi.source.e_basis, phi.n)
    if not src.same_as(e.subspace(), eps):
        raise SubspaceMismatchError("blade does not span the source subspace of the angle bivector")


def rotor_transport(e: Blade, phi: AngleBivector, tol: Tolerance = DEFAULT_TOL) -> Blade:
    """Two-sided rotor form ``e^{-Phi/2} E e^{Phi/2}``.

    ``E`` must span the source subspace of ``phi``.  Only the principal
    planes are used, so when the grades differ only the projective part
    moves.
    """
    _check_source(e, phi)
    half = exp_angle_bivector(phi.scaled(0.5))
    out = ~half * e.mv * half
    return certify_blade(out, tol)


def transport_one_sided(e: Blade, phi: AngleBivector) -> Multivector:
    """One-sided form ``E e^Phi`` (equal to the two-sided one when grades match)."""
    _check_source(e, phi)
    return e.mv * exp_angle_bivector(phi)


def geodesic_sample(phi: AngleBivector, e: Blade, t: float, tol: Tolerance = DEFAULT_TOL) -> Blade:
    """Point ``F(t) = e^{-t Phi/2} E e^{t Phi/2}`` on the minimal geodesic."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"geodesic parameter t={t} outside [0, 1]")
    return rotor_transport(e, phi.scaled(t), tol)


def geodesic_frames(pd: PrincipalData, t: float) -> np.ndarray:
    """Vector-wise geodesic ``f_i(t) = cos(t theta_i) e_i + sin(t theta_i) f_i_perp``.

    Vectors beyond the first ``m`` and those with zero angle are returned
    unchanged.
    """
    out = np.array(pd.e_basis, dtype=float)
    for i in range(pd.m):
        if pd.zero_mask[i]:
            continue
        th = pd.thetas[i]
        out[i] = math.cos(t * th) * pd.e_basis[i] + math.sin(t * th) * pd.f_perp[i]
    return out


def geodesic_length(phi: AngleBivector) -> float:
    """Arc length ``||Phi||`` of the geodesic."""
    return phi.norm()


@dataclass(frozen=True)
class PluckerTerm:
    """One term of the decomposition of ``e^Phi``.

    ``index`` is a tuple of 1-based principal indices (empty for the scalar
    term); ``coefficient`` is the projection factor of V on the coordinate
    subspace; ``plane_product`` is ``I_index``; ``coordinate_blade`` is F
    with ``f_i`` replaced by the orthoprincipal ``e_i_perp`` for i in index.
    """

    index: tuple[int, ...]
    coefficient: float
    plane_product: Multivector
    coordinate_blade: Multivector
    label: str


def plucker_decomposition(phi: AngleBivector) -> list[PluckerTerm]:
    """Terms of ``e^Phi`` indexed by subsets of the nonzero-angle planes.

    Coefficients are ``prod_{i not in S} cos theta_i * prod_{i in S} sin theta_i``
    (times ``eps`` for an oriented bivector) and their squares sum to 1.
    The unoriented principal planes of the source data are used.
    """
    pd = phi.source
    if pd is None:
        raise ValueError("plucker decomposition needs the source principal data")
    alg = algebra(pd.n)
    active = [i for i in range(pd.m) if not pd.zero_mask[i]]
    sign = phi.eps if phi.oriented else 1
    out = []
    for k in range(len(active) + 1):
        for subset in itertools.combinations(active, k):
            coef = float(sign)
            plane = alg.scalar(1.0)
            for i in active:
                coef *= math.sin(pd.thetas[i]) if i in subset else math.cos(pd.thetas[i])
            for i in subset:
                plane = plane * pd.plane(i)
            vecs = [pd.e_perp[i] if i in subset else pd.f_basis[i] for i in range(pd.m)]
            names = [f"e{i + 1}perp" if i in subset else f"f{i + 1}" for i in range(pd.m)]
            out.append(
                PluckerTerm(
                    tuple(i + 1 for i in subset), coef, plane, vectors_product(vecs, alg), "".join(names) or "1"
                )
            )
    return out


def coordinate_basis_labels(pd: PrincipalData) -> list[tuple[str, tuple[int, ...] | None]]:
    """Labels of all coordinate m-blades of ``beta_Y``, F_S-type first.

    ``beta_Y = (f_1..f_d, e_{d+1}_perp, f_{d+1}, ..., e_m_perp, f_m)``.  Each
    entry is ``(label, subset)`` where ``subset`` is the 0-based index set
    for F_S-type blades and None for the others, whose coordinate is 0.
    """
    m = pd.m
    active = [i for i in range(m) if not pd.zero_mask[i]]
    entries: list[tuple[str, tuple[int, ...] | None]] = []
    seen = set()
    for k in range(len(active) + 1):
        for subset in itertools.combinations(active, k):
            key = frozenset(("e" if i in subset else "f", i) for i in range(m))
            seen.add(key)
            entries.append(("".join(f"e{i + 1}perp" if i in subset else f"f{i + 1}" for i in range(m)), subset))
    y = []
    for i in range(m):
        y.append(("f", i))
        if i in active:
            y.append(("e", i))
    for combo in itertools.combinations(y, m):
        key = frozenset(combo)
        if key in seen:
            continue
        ordered = sorted(combo, key=lambda c: (c[1], c[0] != "f"))
        entries.append(("".join(f"{k}{i + 1}" + ("perp" if k == "e" else "") for k, i in ordered), None))
    return entries
