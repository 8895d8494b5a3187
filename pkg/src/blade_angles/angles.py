"""Scalar angle functionals between subspaces and between oriented blades.

All angles are in radians.  Non-oriented angles live in [0, pi/2],
oriented ones in [0, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance
from .blades import Blade, Subspace, blade_from_frame, project_blade
from .errors import DimensionMismatchError, ZeroBladeError
from .principal import HALF_PI, PrincipalData, principal_angles, principal_data


def _acos(x: float) -> float:
    return math.acos(min(1.0, max(-1.0, x)))


def _check(v: Subspace, w: Subspace) -> None:
    if v.n != w.n:
        raise DimensionMismatchError("subspaces live in different dimensions")


def projection_factor(v: Subspace, w: Subspace) -> float:
    """Volume contraction factor of the orthogonal projection V -> W.

    Equals the product of the principal cosines when dim V <= dim W and 0
    otherwise.  For the trivial subspace V = {0} the factor is 1.
    """
    _check(v, w)
    if v.dim == 0:
        return 1.0
    if v.dim > w.dim:
        return 0.0
    return float(np.prod(np.cos(principal_angles(v, w))))


def asymmetric_angle(v: Subspace, w: Subspace) -> float:
    """Asymmetric angle of V with W.

    ``pi/2`` when dim V > dim W (in particular when W = {0}), otherwise the
    arccosine of the product of principal cosines.
    """
    _check(v, w)
    if v.dim == 0:
        raise ZeroBladeError("asymmetric angle needs a nonzero-dimensional V")
    return _acos(projection_factor(v, w))


def projection_factor_by_blades(v: Subspace, w: Subspace) -> float:
    """``||P_B A|| / ||A||`` computed from blades; independent of principal data."""
    _check(v, w)
    if v.dim == 0:
        return 1.0
    if w.dim == 0:
        return 0.0
    a = blade_from_frame(v)
    return project_blade(a, w).norm() / a.norm


def complementary_angle(v: Subspace, w: Subspace) -> float:
    """Complementary angle: the asymmetric angle of V with the complement of W.

    Its cosine is the product of the principal sines, which makes it
    symmetric in V and W.  When dim V + dim W > n the product is taken to
    be 0 (V and W then share a line).
    """
    _check(v, w)
    if v.dim + w.dim > v.n:
        return HALF_PI
    thetas = principal_angles(v, w)
    return _acos(float(np.prod(np.sin(thetas))))


def symmetrized_angles(v: Subspace, w: Subspace) -> tuple[float, float]:
    """``(max-symmetrized, min-symmetrized)`` angles."""
    a, b = asymmetric_angle(v, w), asymmetric_angle(w, v)
    return max(a, b), min(a, b)


@dataclass(frozen=True)
class AngleReport:
    asym_vw: float
    asym_wv: float
    comp: float
    max_sym: float
    min_sym: float
    proj_factor_vw: float
    eps_ab: int
    determinate: bool
    oriented_asym: float
    oriented_comp: float
    oriented_max_sym: float
    oriented_proj_factor: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def oriented_angles(a: Blade, b: Blade, pd: PrincipalData | None = None, tol: Tolerance = DEFAULT_TOL) -> AngleReport:
    """All angle functionals for blades ``a`` and ``b``.

    The relative orientation comes from ``pd`` (computed if omitted).  When
    ``~A * B`` vanishes the sign depends on the chosen bases and
    ``determinate`` is False.
    """
    if a.is_zero or b.is_zero:
        raise ZeroBladeError("oriented angles need nonzero blades")
    if pd is None:
        pd = principal_data(a, b, tol)
    v, w = a.subspace(), b.subspace()
    if a.grade == 0 or b.grade == 0:
        return _scalar_report(a, b, v, w)
    asym_vw = asymmetric_angle(v, w)
    asym_wv = asymmetric_angle(w, v)
    comp = complementary_angle(v, w)
    mx, mn = max(asym_vw, asym_wv), min(asym_vw, asym_wv)
    eps = pd.eps_ab
    pf = math.cos(asym_vw) if a.grade <= b.grade else 0.0
    return AngleReport(
        asym_vw=asym_vw,
        asym_wv=asym_wv,
        comp=comp,
        max_sym=mx,
        min_sym=mn,
        proj_factor_vw=pf,
        eps_ab=eps,
        determinate=pd.orientation_determinate,
        oriented_asym=_acos(eps * math.cos(asym_vw)),
        oriented_comp=_acos(eps * math.cos(comp)),
        oriented_max_sym=_acos(eps * math.cos(mx)),
        oriented_proj_factor=eps * pf,
    )


def _scalar_report(a: Blade, b: Blade, v: Subspace, w: Subspace) -> AngleReport:
    # a scalar spans {0}: it projects onto anything with factor 1
    asym_vw = 0.0 if v.dim == 0 else HALF_PI
    asym_wv = 0.0 if w.dim == 0 else HALF_PI
    eps = 1 if a.scale * b.scale > 0 else -1
    mx, mn = max(asym_vw, asym_wv), min(asym_vw, asym_wv)
    pf = 1.0 if v.dim == 0 else 0.0
    return AngleReport(
        asym_vw, asym_wv, 0.0, mx, mn, pf, eps, v.dim == w.dim,
        _acos(eps * math.cos(asym_vw)), _acos(float(eps)), _acos(eps * math.cos(mx)), eps * pf,
    )
