"""Executable checkers for blade-product identities.

Every checker returns one or more :class:`IdentityResult` records holding
both sides' norms and the residual.  A check passes when
``residual <= eps * max(1, lhs_norm, rhs_norm)``.  Where an identity
needs principal bases, all quantities are built from one shared
:class:`PrincipalData`, since several identities only hold when the same
bases are used throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Multivector,
    Tolerance,
    algebra,
    anticommutator,
    commutator,
    dual,
    fat_dot,
    grade_project,
    hestenes_inner,
    left_contraction,
    mv_cosh,
    mv_sinh,
    outer_product,
    reverse,
    right_contraction,
    scalar_product,
    vectors_product,
)
from .angles import complementary_angle, projection_factor
from .bivector import (
    angle_bivector_from_data,
    exp_angle_bivector,
    exp_parts,
    plucker_decomposition,
)
from .blades import Blade, Subspace, blade_inverse, certify_blade, project_blade
from .errors import GradeError, MalformedProductError, NotABladeError
from .principal import HALF_PI, PrincipalData, partially_orthogonal, po_decompose, principal_data


@dataclass(frozen=True)
class IdentityResult:
    name: str
    lhs_norm: float
    rhs_norm: float
    residual: float
    passed: bool
    digest: str = ""
    skipped: str | None = None
    scale: float = 0.0

    def with_digest(self, digest: str) -> "IdentityResult":
        return replace(self, digest=digest)

    @property
    def relative_residual(self) -> float:
        return self.residual / max(1.0, self.lhs_norm, self.rhs_norm, self.scale)


def _norm(x) -> float:
    return x.norm() if isinstance(x, Multivector) else abs(float(x))


def compare(name: str, lhs, rhs, eps: float, scale: float = 0.0) -> IdentityResult:
    """Residual record for ``lhs == rhs`` (multivectors or scalars).

    ``scale`` is the natural magnitude of the terms when both sides are
    expected to vanish (so the relative bound stays meaningful).
    """
    if isinstance(lhs, Multivector) or isinstance(rhs, Multivector):
        diff = lhs - rhs
        res = diff.norm() if isinstance(diff, Multivector) else abs(float(diff))
    else:
        res = abs(float(lhs) - float(rhs))
    ln, rn = _norm(lhs), _norm(rhs)
    return IdentityResult(name, ln, rn, res, bool(res <= eps * max(1.0, ln, rn, scale)), scale=scale)


def skipped(name: str, reason: str) -> IdentityResult:
    return IdentityResult(name, 0.0, 0.0, 0.0, True, skipped=reason)


def _boolean(name: str, expected: bool, observed: bool) -> IdentityResult:
    ok = expected == observed
    return IdentityResult(name, float(expected), float(observed), 0.0 if ok else 1.0, ok)


def _pd(a: Blade, b: Blade, pd: PrincipalData | None, tol: Tolerance) -> PrincipalData:
    return principal_data(a, b, tol) if pd is None else pd


def orthogonal_subblades(pd: PrincipalData) -> tuple[Multivector, Multivector]:
    """``(A_perp, B_perp)``: products of the unpaired e's and f's (1 if none)."""
    alg = algebra(pd.n)
    return vectors_product(pd.e_basis[pd.m:], alg), vectors_product(pd.f_basis[pd.m:], alg)


def oriented_exp(pd: PrincipalData) -> Multivector:
    return exp_angle_bivector(angle_bivector_from_data(pd, oriented=True))


# ---------------------------------------------------------------- products


def check_equal_grade_product(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> IdentityResult:
    """``~A B == ||A|| ||B|| exp(Phi_AB)`` for blades of equal grade."""
    if a.grade != b.grade:
        raise GradeError(f"needs equal grades, got {a.grade} and {b.grade}")
    pd = _pd(a, b, pd, tol)
    lhs = ~a.mv * b.mv
    rhs = oriented_exp(pd) * (a.norm * b.norm)
    return compare("product:equal", lhs, rhs, tol.identity)


def check_mixed_grade_product(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> IdentityResult:
    """``~A B == ||A|| ||B|| exp(Phi_AB) B_perp`` (p <= q), ``... ~A_perp`` (p >= q)."""
    pd = _pd(a, b, pd, tol)
    a_perp, b_perp = orthogonal_subblades(pd)
    lhs = ~a.mv * b.mv
    tail = b_perp if pd.p <= pd.q else ~a_perp
    rhs = oriented_exp(pd) * tail * (a.norm * b.norm)
    return compare("product:mixed", lhs, rhs, tol.identity)


def check_norm_multiplicativity(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """``||AB|| = ||A|| ||B||`` directly and through the Pythagorean sum.

    The second route projects the smaller unit blade on every coordinate
    subspace of the extended basis ``beta_Y`` and checks that the squared
    projection factors add up to 1.
    """
    small, large = (a, b) if a.grade <= b.grade else (b, a)
    pdl = principal_data(small, large, tol) if pd is None or a.grade > b.grade else pd
    direct = compare("norm:direct", (a.mv * b.mv).norm(), a.norm * b.norm, tol.identity)
    y = []
    for i in range(pdl.m):
        y.append(pdl.f_basis[i])
        if not pdl.zero_mask[i]:
            y.append(pdl.e_perp[i])
    unit = small.unit()
    total = 0.0
    if pdl.m == 0:
        total = 1.0
    else:
        for combo in itertools.combinations(range(len(y)), pdl.m):
            frame = Subspace(np.array([y[j] for j in combo]), pdl.n)
            total += project_blade(unit, frame).norm_sq()
    pyth = compare("norm:pythagorean", math.sqrt(total) * a.norm * b.norm, a.norm * b.norm, tol.identity)
    coefs = sum(t.coefficient ** 2 for t in plucker_decomposition(angle_bivector_from_data(pdl)))
    eq7 = compare("norm:plucker-sum", coefs, 1.0, tol.identity)
    return [direct, pyth, eq7]


# ------------------------------------------------------ angles vs products


def _cos_asym(v: Subspace, w: Subspace) -> float:
    return projection_factor(v, w)


def check_subproduct_norms(a: Blade, b: Blade, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Norms of the subproducts against angle cosines (non-oriented)."""
    v, w = a.subspace(), b.subspace()
    k = a.norm * b.norm
    c_vw, c_wv = _cos_asym(v, w), _cos_asym(w, v)
    c_max, c_min = min(c_vw, c_wv), max(c_vw, c_wv)
    c_perp = math.cos(complementary_angle(v, w))
    eps = tol.identity
    out = [
        compare("subnorm:scalar", abs(scalar_product(a.mv, b.mv)), k * c_max, eps),
        compare("subnorm:lcontr", left_contraction(a.mv, b.mv).norm(), k * c_vw, eps),
        compare("subnorm:rcontr", right_contraction(a.mv, b.mv).norm(), k * c_wv, eps),
        compare("subnorm:fatdot", fat_dot(a.mv, b.mv).norm(), k * c_min, eps),
    ]
    if a.grade == 0 or b.grade == 0:
        out.append(skipped("subnorm:hestenes", "scalar factor"))
    else:
        out.append(compare("subnorm:hestenes", hestenes_inner(a.mv, b.mv).norm(), k * c_min, eps))
    out.append(compare("subnorm:outer", outer_product(a.mv, b.mv).norm(), k * c_perp, eps))
    return out


def wedge_frame(pd: PrincipalData) -> Multivector:
    """The unit blade J used for the oriented outer-product formula (0 if d > 0)."""
    alg = algebra(pd.n)
    if pd.d:
        return alg.zero()
    m = pd.m
    if pd.p <= pd.q:
        vecs = list(pd.e_perp[:m]) + list(pd.f_basis)
    else:
        vecs = list(pd.e_basis) + list(pd.f_perp[:m])
    return vectors_product(vecs, alg)


def check_oriented_subproducts(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Oriented subproduct formulas with shared principal bases."""
    pd = _pd(a, b, pd, tol)
    v, w = a.subspace(), b.subspace()
    eps_ab = pd.eps_ab
    k = a.norm * b.norm
    a_perp, b_perp = orthogonal_subblades(pd)
    c_vw, c_wv = _cos_asym(v, w), _cos_asym(w, v)
    c_max = min(c_vw, c_wv)
    c_perp = math.cos(complementary_angle(v, w))
    ar = ~a.mv
    e = tol.identity
    return [
        compare("oriented:scalar", scalar_product(ar, b.mv), k * eps_ab * c_max, e),
        compare("oriented:lcontr", left_contraction(ar, b.mv), b_perp * (k * eps_ab * c_vw), e),
        compare("oriented:rcontr", right_contraction(ar, b.mv), ~a_perp * (k * eps_ab * c_wv), e),
        compare("oriented:outer", outer_product(a.mv, b.mv), wedge_frame(pd) * (k * eps_ab * c_perp), e),
    ]


# ------------------------------------------------- commutator family


def check_commutator_suite(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Anticommutator/commutator identities for a pair of blades."""
    e = tol.identity
    A, B = a.mv, b.mv
    ac, cm = anticommutator(A, B), commutator(A, B)
    ab, ba = A * B, B * A
    out = [
        compare("comm:ab", ac + cm, ab, e),
        compare("comm:ba", ac - cm, ba, e),
        compare("comm:pythagoras", ac.norm_sq() + cm.norm_sq(), (ab.norm_sq() + ba.norm_sq()) / 2, e),
    ]
    out.extend(check_grade_partition(a, b, tol))
    out += [
        compare("comm:mutual-commute", commutator(ac, cm), A.algebra.zero(), e, ac.norm() * cm.norm()),
        compare("comm:scalar-orthogonal", scalar_product(ac, cm), 0.0, e, ac.norm() * cm.norm()),
        compare("comm:square-difference", ac * ac - cm * cm, (A * A) * (B * B), e),
    ]
    if a.grade == b.grade:
        ua, ub = a.unit().mv, b.unit().mv
        uac, ucm = anticommutator(ua, ub), commutator(ua, ub)
        out.append(compare("comm:unit-square-difference", uac * uac - ucm * ucm, A.algebra.scalar(1.0), e))
    else:
        out.append(skipped("comm:unit-square-difference", "grades differ"))
    out.append(compare("comm:norm", ac.norm_sq() + cm.norm_sq(), (a.norm * b.norm) ** 2, e))
    if a.grade == b.grade:
        pd = _pd(a, b, pd, tol)
        ch, sh = exp_parts(angle_bivector_from_data(pd, oriented=True))
        k = a.norm * b.norm
        out.append(compare("comm:cosh", anticommutator(~A, B), ch * k, e))
        out.append(compare("comm:sinh", commutator(~A, B), sh * k, e))
    else:
        out.append(skipped("comm:cosh", "grades differ"))
        out.append(skipped("comm:sinh", "grades differ"))
    return out


def check_grade_partition(a: Blade, b: Blade, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Commutator and anticommutator split the grades of AB by ``p(q-1)`` parity.

    Checked on the pair ordered so that the first blade has the smaller grade.
    """
    x, y = (a, b) if a.grade <= b.grade else (b, a)
    p, q = x.grade, y.grade
    xy = x.mv * y.mv
    n = xy.algebra.n
    low = [g for g in range(q - p, n + 1, 4)]
    high = [g for g in range(q - p + 2, n + 1, 4)]
    part_low = sum((grade_project(xy, g) for g in low), xy.algebra.zero())
    part_high = sum((grade_project(xy, g) for g in high), xy.algebra.zero())
    if (p * (q - 1)) % 2 == 0:
        exp_cm, exp_ac = part_high, part_low
    else:
        exp_cm, exp_ac = part_low, part_high
    e = tol.identity
    return [
        compare("comm:grades-commutator", commutator(x.mv, y.mv), exp_cm, e),
        compare("comm:grades-anticommutator", anticommutator(x.mv, y.mv), exp_ac, e),
    ]


def commute_prediction(pd: PrincipalData) -> tuple[bool, bool]:
    """``(commute, anticommute)`` predicted from principal angles.

    With ``p <= q`` and ``r`` right angles among the ``m`` principal angles,
    the blades commute (anticommute) exactly when every other angle is
    zero and ``r`` has the same (opposite) parity as ``p(q - 1)``.
    """
    p, q = min(pd.p, pd.q), max(pd.p, pd.q)
    others_zero = bool(np.all(pd.zero_mask | pd.right_mask))
    r = pd.right_count
    same = r % 2 == (p * (q - 1)) % 2
    return others_zero and same, others_zero and not same


def check_vanishing_conditions(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Predicted vanishing of cosh/sinh and (anti)commutation against observation."""
    pd = _pd(a, b, pd, tol)
    scale = a.norm * b.norm
    zero_eps = 1e-8 * scale
    commute, anti = commute_prediction(pd)
    out = [
        _boolean("vanish:commute", commute, commutator(a.mv, b.mv).norm() <= zero_eps),
        _boolean("vanish:anticommute", anti, anticommutator(a.mv, b.mv).norm() <= zero_eps),
    ]
    if a.grade == b.grade:
        others_zero = bool(np.all(pd.zero_mask | pd.right_mask))
        r = pd.right_count
        ch, sh = exp_parts(angle_bivector_from_data(pd, oriented=True))
        out.append(_boolean("vanish:cosh", others_zero and r % 2 == 1, ch.norm() <= 1e-8))
        out.append(_boolean("vanish:sinh", others_zero and r % 2 == 0, sh.norm() <= 1e-8))
    return out


# ---------------------------------------------------------------- duality


def check_duality(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Duality identities w.r.t. the full pseudoscalar and the restricted J."""
    alg = a.algebra
    e = tol.identity
    ps = alg.pseudoscalar()
    A, B = a.mv, b.mv
    out = [
        compare("dual:(AB)*", dual(A * B, ps, tol), A * dual(B, ps, tol), e),
        compare("dual:(A^B)*", dual(outer_product(A, B), ps, tol), left_contraction(A, dual(B, ps, tol)), e),
        compare("dual:(A|B)*", dual(left_contraction(A, B), ps, tol), outer_product(A, dual(B, ps, tol)), e),
    ]
    out.extend(check_exponential_duality(a, b, pd, tol))
    return out


def check_exponential_duality(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Exponential duality for equal grades with trivial intersection."""
    if a.grade != b.grade or a.grade == 0:
        return [skipped(k, "needs equal nonzero grades") for k in ("dual-exp:plain", "dual-exp:oriented")]
    pd = _pd(a, b, pd, tol)
    if pd.d:
        return [skipped(k, "subspaces intersect") for k in ("dual-exp:plain", "dual-exp:oriented")]
    alg = a.algebra
    e = tol.identity
    j = alg.scalar(1.0)
    for i in range(pd.m):
        j = j * pd.plane(i)
    plain = exp_angle_bivector(angle_bivector_from_data(pd))
    expected = alg.scalar(1.0)
    for i in range(pd.m):
        th = pd.thetas[i]
        expected = expected * (alg.scalar(math.sin(th)) + ~pd.plane(i) * math.cos(th))
    first = compare("dual-exp:plain", dual(plain, j, tol), expected, e)
    b_star = certify_blade(dual(b.mv, j, tol), tol)
    pd_star = principal_data(a, b_star, tol)
    second = compare("dual-exp:oriented", dual(oriented_exp(pd), j, tol), oriented_exp(pd_star), e)
    return [first, second]


# ---------------------------------------------------------- invertibility


def check_invertibility_reconstruction(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Rebuild A from the components of AB, one projection at a time.

    Each Plücker component of ``AB`` times ``~B / ||B||^2`` equals the
    projection of A on the matching coordinate subspace; their sum is A.
    """
    if a.grade != b.grade:
        raise GradeError("reconstruction check needs equal grades")
    pd = _pd(a, b, pd, tol)
    e = tol.identity
    binv = blade_inverse(b).mv
    rev_sign = -1.0 if (a.grade * (a.grade - 1) // 2) % 2 else 1.0
    phi = angle_bivector_from_data(pd, oriented=True)
    k = rev_sign * a.norm * b.norm
    total = a.algebra.zero()
    worst = None
    for term in plucker_decomposition(phi):
        comp = term.plane_product * (k * term.coefficient)
        piece = comp * binv
        frame = _coordinate_frame(pd, term.index)
        proj = project_blade(a, frame)
        r = compare("reconstruct:component", piece, proj, e)
        if worst is None or r.residual > worst.residual:
            worst = r
        total = total + piece
    out = [compare("reconstruct:sum", total, a.mv, e)]
    if worst is not None:
        out.append(worst)
    return out


def _coordinate_frame(pd: PrincipalData, index: tuple[int, ...]) -> Subspace:
    sel = {i - 1 for i in index}
    vecs = [pd.e_perp[i] if i in sel else pd.f_basis[i] for i in range(pd.m)]
    return Subspace(np.array(vecs), pd.n)


# ---------------------------------------------------- Grassmann contraction


def grassmann_contraction(a: Multivector, b: Multivector) -> Multivector:
    """Contraction adjoint to the exterior product: ``~A _| B``."""
    return left_contraction(reverse(a), b)


def check_grassmann_contraction(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    pd = _pd(a, b, pd, tol)
    e = tol.identity
    v, w = a.subspace(), b.subspace()
    k = a.norm * b.norm
    eps_ab = pd.eps_ab
    c_vw, c_wv = _cos_asym(v, w), _cos_asym(w, v)
    po = po_decompose(a, b, pd, tol)
    b_p, b_perp = po.b_proj.mv, po.b_perp.mv
    contr = grassmann_contraction(a.mv, b.mv)
    inner = scalar_product(~a.mv, b.mv)
    out = [
        compare("grassmann:inner", inner, k * eps_ab * min(c_vw, c_wv), e),
        compare("grassmann:outer-norm", outer_product(a.mv, b.mv).norm(), k * math.cos(complementary_angle(v, w)), e),
        compare("grassmann:po", contr, b_perp * scalar_product(~a.mv, b_p), e),
        compare("grassmann:perp", b_perp, grassmann_contraction(b_p, b.mv) / b.norm**2, e),
        compare("grassmann:cosine", contr, b_perp * (k * eps_ab * c_vw), e),
        compare("grassmann:projection", contr, b_perp * (eps_ab * project_blade(a, w).norm() * b.norm), e),
    ]
    observed_zero = contr.norm() <= 1e-8 * k
    out.append(_boolean("grassmann:vanish", partially_orthogonal(v, w), observed_zero))
    return out


# ------------------------------------------------- hyperbolic functions


def exp_by_squaring(h: Multivector, tol: Tolerance = DEFAULT_TOL) -> Multivector:
    """``e^H`` as ``(e^{H / 2^k})^{2^k}``; independent of the cosh/sinh split."""
    k = max(0, math.ceil(math.log2(max(h.norm(), 1e-300) / 0.25))) if h.norm() > 0.25 else 0
    small = h / float(2**k)
    alg = h.algebra
    term, total = alg.scalar(1.0), alg.scalar(1.0)
    for j in range(1, 40):
        term = term * small / j
        total = total + term
        if term.norm() < 1e-18:
            break
    for _ in range(k):
        total = total * total
    return total


def check_hyperbolic_suite(h: Multivector, tol: Tolerance = DEFAULT_TOL) -> list[IdentityResult]:
    """Series cosh/sinh identities for a multivector; grade-specific ones if homogeneous."""
    e = tol.identity
    series_tol = Tolerance(tol.structural, min(tol.identity, 1e-13))
    alg = h.algebra
    one = alg.scalar(1.0)
    ch, sh = mv_cosh(h, series_tol), mv_sinh(h, series_tol)
    ex, emx = exp_by_squaring(h), exp_by_squaring(-h)
    out = [
        compare("hyp:exp-plus", ch + sh, ex, e),
        compare("hyp:exp-minus", ch - sh, emx, e),
        compare("hyp:even", mv_cosh(-h, series_tol), ch, e),
        compare("hyp:odd", mv_sinh(-h, series_tol), -sh, e),
        compare("hyp:reverse-cosh", ~ch, mv_cosh(~h, series_tol), e),
        compare("hyp:reverse-sinh", ~sh, mv_sinh(~h, series_tol), e),
    ]
    n2 = h * 0.5 + 0.25
    out.append(compare("hyp:commute", commutator(ch, mv_sinh(n2, series_tol)), alg.zero(), e))
    out.append(compare("hyp:unit", ch * ch - sh * sh, one, e))
    grades = h.grades_present()
    if len(grades) != 1:
        return out
    p = grades[0]
    r = p % 4
    rev = -1.0 if (p * (p - 1) // 2) % 2 else 1.0
    out.append(compare("hyp:cosh-reversal", ~ch, ch, e))
    out.append(compare("hyp:sinh-reversal", ~sh, sh * rev, e))
    even4 = [g for g in range(0, alg.n + 1) if g % 4 == 0]
    odd4 = [g for g in range(0, alg.n + 1) if g % 4 == r]
    out.append(compare("hyp:cosh-grades", ch, sum((grade_project(ch, g) for g in even4), alg.zero()), e))
    out.append(compare("hyp:sinh-grades", sh, sum((grade_project(sh, g) for g in odd4), alg.zero()), e))
    c2, s2 = ch.norm_sq(), sh.norm_sq()
    if r != 0:
        out.append(compare("hyp:orthogonal", scalar_product(ch, sh), 0.0, e))
    if r == 0:
        out.append(compare("hyp0:sum", c2 + s2, (ex.norm_sq() + emx.norm_sq()) / 2, e))
        out.append(compare("hyp0:diff", c2 - s2, 1.0, e))
        out.append(_boolean("hyp0:bound", True, math.sqrt(c2) >= 1 - e))
    elif r == 1:
        out.append(compare("hyp1:sum", c2 + s2, ex.norm_sq(), e))
        out.append(compare("hyp1:diff", c2 - s2, 1.0, e))
        out.append(compare("hyp1:exp", ex.norm(), emx.norm(), e))
        out.append(_boolean("hyp1:bound", True, math.sqrt(c2) >= 1 - e and ex.norm() >= 1 - e))
    else:
        e2h = exp_by_squaring(h * 2.0).scalar_part()
        out.append(compare("hyp2:sum", c2 + s2, 1.0, e))
        out.append(compare("hyp2:diff", c2 - s2, e2h, e))
        out.append(compare("hyp2:exp", ex.norm(), 1.0, e))
        out.append(_boolean("hyp2:bound", True, math.sqrt(c2) <= 1 + e and math.sqrt(s2) <= 1 + e))
    return out


# ------------------------------------------------------------------ Hitzer


@dataclass(frozen=True, eq=False)
class HitzerRecovery:
    """Principal structure read off a product ``~A B`` of unit blades.

    ``thetas`` is the full ascending list of ``p`` angles; ``planes`` holds
    the recovered unit bivectors for the angles strictly between 0 and
    pi/2; ``b_perp`` is the normalized lowest-grade component, i.e. the
    product of the right-angle planes and the orthogonal subblade.
    """

    d: int
    D: int
    thetas: np.ndarray
    planes: tuple[Multivector, ...]
    tangent_bivector: Multivector | None
    b_perp: Multivector


def split_bivector(t: Multivector, tol: float = 1e-9) -> list[tuple[float, Multivector]]:
    """Split a bivector into commuting orthogonal simple parts ``t_k a_k b_k``.

    Uses the symmetric eigenproblem of ``-S^2`` for the skew matrix ``S``
    of the bivector; each eigenvalue ``t^2`` (multiplicity two) yields an
    orthonormal pair ``a, b = -S a / t``.
    """
    alg = t.algebra
    n = alg.n
    s = np.zeros((n, n))
    for j in range(n):
        for k in range(j + 1, n):
            c = t[(1 << j) | (1 << k)]
            s[j, k], s[k, j] = c, -c
    vals, vecs = np.linalg.eigh(-s @ s)
    scale = max(float(np.max(np.abs(vals))), 1e-300)
    order = np.argsort(-vals, kind="stable")
    used: list[np.ndarray] = []
    parts = []
    for idx in order:
        lam = vals[idx]
        if lam <= tol * scale or lam <= 1e-24:
            break
        a = vecs[:, idx].copy()
        for u in used:
            a -= (u @ a) * u
        na = np.linalg.norm(a)
        if na < 0.5:
            continue
        a /= na
        tt = math.sqrt(lam)
        b = -s @ a / tt
        b -= sum(((u @ b) * u for u in used), np.zeros(n))
        b /= np.linalg.norm(b)
        used += [a, b]
        parts.append((tt, vectors_product([a, b], alg)))
    return parts


def hitzer_recover(product: Multivector, p: int, q: int, tol: Tolerance = DEFAULT_TOL) -> HitzerRecovery:
    """Recover principal angles from ``~A B`` (unit blades, ``eps_AB = 1``, ``p <= q``).

    The lowest and highest nonzero grades give ``D`` and ``d``; the second
    lowest grade times the inverse of the lowest one is
    ``sum tan(theta_i) I_i``, which is split into its planes.
    """
    if p > q:
        raise GradeError("hitzer_recover expects p <= q")
    nrm = product.norm()
    if nrm == 0.0:
        raise MalformedProductError("zero product")
    gn = product.grade_norms()
    present = [g for g in range(len(gn)) if gn[g] > tol.structural * nrm]
    if not present:
        raise MalformedProductError("product has no significant component")
    lo, hi = present[0], present[-1]
    total = p + q
    valid_grades = all((total - g) % 2 == 0 and q - p <= g <= total for g in present)
    if not valid_grades:
        raise MalformedProductError(f"grades {present} are not a ladder for p={p}, q={q}")
    D = (total - lo) // 2
    d = (total - hi) // 2
    if not 0 <= d <= D <= p:
        raise MalformedProductError(f"inconsistent grade ladder (d={d}, D={D})")
    low = grade_project(product, lo)
    try:
        low_blade = certify_blade(low, tol)
    except NotABladeError as exc:
        raise MalformedProductError("lowest-grade component is not a blade") from exc
    b_perp = low / low.norm()
    tangent = None
    planes: list[Multivector] = []
    mid: list[float] = []
    if D > d:
        tangent = grade_project(grade_project(product, lo + 2) * blade_inverse(low_blade).mv, 2)
        parts = split_bivector(tangent)
        if len(parts) != D - d:
            raise MalformedProductError(f"expected {D - d} planes, found {len(parts)}")
        parts.sort(key=lambda x: x[0])
        mid = [math.atan(t) for t, _ in parts]
        planes = [pl for _, pl in parts]
    thetas = np.array([0.0] * d + mid + [HALF_PI] * (p - D))
    return HitzerRecovery(d, D, thetas, tuple(planes), tangent, b_perp)
