"""Seeded random blades and homogeneous multivectors for property checks.

A random p-blade comes from a Gaussian p x n matrix, orthonormalized, and
scaled by a norm drawn log-uniformly from [0.1, 10] with a random sign.
Trial ``t`` of seed ``s`` uses ``numpy.random.default_rng([s, t])`` so any
single trial can be regenerated from its digest.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import Multivector, algebra
from .blades import Blade, Subspace, blade_from_frame, orthonormalize

NORM_RANGE = (0.1, 10.0)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def random_frame(rng: np.random.Generator, p: int, n: int) -> np.ndarray:
    while True:
        try:
            return orthonormalize(rng.standard_normal((p, n)))
        except ValueError:  # rank deficiency: vanishingly rare, redraw
            continue


def random_norm(rng: np.random.Generator) -> float:
    lo, hi = NORM_RANGE
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def random_blade(rng: np.random.Generator, p: int, n: int) -> Blade:
    sign = 1.0 if rng.random() < 0.5 else -1.0
    return blade_from_frame(Subspace(random_frame(rng, p, n), n), sign * random_norm(rng))


def controlled_pair(rng: np.random.Generator, thetas, q: int, n: int) -> tuple[Blade, Blade]:
    """Unit blades A (grade len(thetas)) and B (grade q) with prescribed principal angles."""
    p = len(thetas)
    if p > q or p + q > n:
        raise ValueError("controlled_pair needs p <= q and p + q <= n")
    basis = np.linalg.qr(rng.standard_normal((n, n)))[0].T
    f = basis[:q]
    g = basis[q : q + p]
    th = np.asarray(thetas, dtype=float)
    e = np.cos(th)[:, None] * f[:p] + np.sin(th)[:, None] * g
    return blade_from_frame(Subspace(e, n)), blade_from_frame(Subspace(f, n))


def random_homogeneous(rng: np.random.Generator, k: int, n: int, max_norm: float = 2.0) -> Multivector:
    """A homogeneous grade-k multivector with norm uniform in [0, max_norm]."""
    alg = algebra(n)
    coeffs = np.zeros(alg.size)
    mask = alg.grades == k
    coeffs[mask] = rng.standard_normal(int(mask.sum()))
    m = Multivector(alg, coeffs)
    return m * (rng.uniform(0.0, max_norm) / m.norm())


def digest(seed: int, trial: int, **params) -> str:
    extra = ",".join(f"{k}={v}" for k, v in sorted(params.items()))
    return f"seed={seed},trial={trial}" + (f",{extra}" if extra else "")
