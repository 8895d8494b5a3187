"""Worked configurations with hand-derived products, embedded in coordinates.

Each builder names its orthonormal vectors after the coordinate axes they
occupy, so the expected multivectors can be written with basis blades.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from blade_angles.algebra import Multivector, algebra
from blade_angles.blades import Blade, blade_from_vectors

SQ2, SQ3, SQ5, SQ10 = math.sqrt(2), math.sqrt(3), math.sqrt(5), math.sqrt(10)


def unit(n: int, i: int) -> np.ndarray:
    """The i-th (1-based) coordinate vector of R^n."""
    v = np.zeros(n)
    v[i - 1] = 1.0
    return v


def vec_mv(v) -> Multivector:
    return algebra(len(v)).vector(v)


@dataclass
class Config:
    n: int
    a: Blade
    b: Blade
    e_basis: np.ndarray
    f_basis: np.ndarray
    named: dict


def three_flats() -> Config:
    """Two 3-blades in R^5 meeting in a line, other angles right.

    Axes: e1 (shared), e2, e3, f2, f3.  E = e1 e2 e3 and F = e1 f2 f3.
    """
    n = 5
    e1, e2, e3, f2, f3 = (unit(n, i) for i in range(1, 6))
    a = blade_from_vectors([e1, e2, e3])
    b = blade_from_vectors([e1, f2, f3])
    named = dict(e1=e1, e2=e2, e3=e3, f1=e1, f2=f2, f3=f3)
    return Config(n, a, b, np.array([e1, e2, e3]), np.array([e1, f2, f3]), named)


def tilted_planes() -> Config:
    """Two planes in R^4 with cosines 2/sqrt5 and 1/sqrt10.

    Axes: f1, f2, g1, g2.  e1 = (f1 + 3 g1)/sqrt10, e2 = (2 f2 + g2)/sqrt5,
    A = e1 e2 and B = f1 f2.
    """
    n = 4
    f1, f2, g1, g2 = (unit(n, i) for i in range(1, 5))
    e1 = (f1 + 3 * g1) / SQ10
    e2 = (2 * f2 + g2) / SQ5
    a = blade_from_vectors([e1, e2])
    b = blade_from_vectors([f1, f2])
    named = dict(f1=f1, f2=f2, g1=g1, g2=g2, e1=e1, e2=e2)
    return Config(n, a, b, np.array([e1, e2]), np.array([f1, f2]), named)


def opposed_areas() -> Config:
    """Planes in R^3 sharing the line f1, with areas 5 and 1 and opposite orientation.

    Axes: f1, f2, g2.  A = -(3 f1 f2 + 4 f1 g2) and B = f1 f2.
    """
    n = 3
    f1, f2, g2 = (unit(n, i) for i in range(1, 4))
    a = blade_from_vectors([-f1, 3 * f2 + 4 * g2])
    b = blade_from_vectors([f1, f2])
    e = np.array([f1, (3 * f2 + 4 * g2) / 5])
    return Config(n, a, b, e, np.array([f1, f2]), dict(f1=f1, f2=f2, g2=g2))


def plane_in_four_space() -> Config:
    """A plane against a 4-blade in R^6 with angles pi/6 and pi/2.

    Axes: f1, f2, f3, f4, g1, g2.  e1 = (sqrt3/2) f1 + g1/2, e2 = g2,
    A = e1 e2 and B = f1 f2 f3 f4.
    """
    n = 6
    f1, f2, f3, f4, g1, g2 = (unit(n, i) for i in range(1, 7))
    e1 = SQ3 / 2 * f1 + 0.5 * g1
    e2 = g2
    a = blade_from_vectors([e1, e2])
    b = blade_from_vectors([f1, f2, f3, f4])
    named = dict(f1=f1, f2=f2, f3=f3, f4=f4, g1=g1, g2=g2, e1=e1, e2=e2)
    return Config(n, a, b, np.array([e1, e2]), np.array([f1, f2, f3, f4]), named)


def vp(*vecs) -> Multivector:
    """Geometric product of vectors."""
    out = vec_mv(vecs[0])
    for v in vecs[1:]:
        out = out * vec_mv(v)
    return out
