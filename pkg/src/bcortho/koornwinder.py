"""The second-order q-difference operator of BC type.

Provides pointwise application of the operator D on W-invariant Laurent
polynomials, its closed-form eigenvalues E_lambda, and extraction of the
triangular coefficient matrix E_{lambda,mu} on the monomial basis by
interpolation at random sample points.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .bcpoly import (
    LaurentPolynomial,
    monomial_w,
    partition,
    partitions_dominated_by,
)
from .errors import DiagonalMismatch, IllConditionedSamples, NearPole
from .params import AWParams

POLE_GUARD = 1e-12
COND_LIMIT = 1e10
MAX_ATTEMPTS = 20


def phi_plus(j: int, z: Sequence[complex], p: AWParams) -> complex:
    """Coefficient function phi_j^+ of the forward q-shift in D.

    The axis index j is 0-based. Raises NearPole when any denominator
    factor is within guard distance of zero.
    """
    zj = z[j]
    num: complex = 1.0
    for ti in p.tvec:
        num *= 1.0 - ti * zj
    val = num / (_guard(1.0 - zj * zj) * _guard(1.0 - p.q * zj * zj))
    for l, zl in enumerate(z):
        if l == j:
            continue
        val *= (1.0 - p.t * zl * zj) * (1.0 - p.t * zj / zl)
        val /= _guard(1.0 - zl * zj) * _guard(1.0 - zj / zl)
    return val


def phi_minus(j: int, z: Sequence[complex], p: AWParams) -> complex:
    """phi_j^-(z) = phi_j^+(z^{-1}) with all coordinates inverted."""
    return phi_plus(j, [1.0 / zi for zi in z], p)


def _guard(x: complex) -> complex:
    if abs(x) < POLE_GUARD:
        raise NearPole(f"denominator factor {x} within guard distance")
    return x


def apply_D(f: LaurentPolynomial, z: Sequence[complex], p: AWParams) -> complex:
    """Apply D = sum_j phi_j^+ (T_j^+ - Id) + phi_j^- (T_j^- - Id) at z,
    where T_j^{+-} shifts z_j to q^{+-1} z_j."""
    fz = f.eval(z)
    total: complex = 0.0
    zl = list(z)
    for j in range(p.n):
        zp = list(zl)
        zp[j] = p.q * zp[j]
        zm = list(zl)
        zm[j] = zm[j] / p.q
        total += phi_plus(j, zl, p) * (f.eval(zp) - fz)
        total += phi_minus(j, zl, p) * (f.eval(zm) - fz)
    return total


def eigenvalue_E(lam: Sequence[int], p: AWParams) -> complex:
    """Closed-form eigenvalue E_lambda of D on the monic eigenbasis."""
    lam = partition(lam)
    n = p.n
    T = p.T
    total: complex = 0.0
    for j, lj in enumerate(lam, start=1):
        total += (T / p.q) * p.t ** (2 * n - j - 1) * (p.q ** lj - 1.0)
        total += p.t ** (j - 1) * (p.q ** (-lj) - 1.0)
    return total


def eigen_separation(lam: Sequence[int], p: AWParams) -> float:
    """min over mu < lambda of |E_lambda - E_mu| (infinity if lambda = 0)."""
    lam = partition(lam)
    e_lam = eigenvalue_E(lam, p)
    best = float("inf")
    for mu in partitions_dominated_by(lam):
        if mu == lam:
            continue
        best = min(best, abs(e_lam - eigenvalue_E(mu, p)))
    return best


@dataclass(frozen=True)
class TriangularOpMatrix:
    """Coefficients E_{lambda',mu} of D m_{lambda'} = sum_mu E m_mu.

    index holds the partitions mu <= lambda in graded-lex order; entries
    is the square matrix with rows indexed by lambda' and columns by mu.
    """

    index: Tuple[Tuple[int, ...], ...]
    entries: np.ndarray
    residual: float
    condition: float


def _sample_points(rng: np.random.Generator, n: int) -> List[complex]:
    r = rng.uniform(0.7, 1.4, size=n)
    th = rng.uniform(0.0, 1.0, size=n)
    return [r[i] * cmath.exp(2j * cmath.pi * th[i]) for i in range(n)]


def op_matrix(lam: Sequence[int], p: AWParams, seed: int = 0) -> TriangularOpMatrix:
    """Extract the triangular matrix of D on {m_mu : mu <= lambda}.

    Evaluates D m_{lambda'} at N = #{mu <= lambda} random points and
    solves against the monomial evaluation matrix. Resamples on NearPole
    or poor conditioning; the diagonal is verified against the closed
    form eigenvalues.
    """
    lam = partition(lam)
    mus = partitions_dominated_by(lam)
    N = len(mus)
    monomials = [monomial_w(mu) for mu in mus]
    rng = np.random.default_rng(seed)

    last_cond = float("inf")
    for _ in range(MAX_ATTEMPTS):
        # 2x oversampling keeps the least-squares system well conditioned
        pts = [_sample_points(rng, p.n) for _ in range(2 * N)]
        try:
            A = np.array([[m.eval(z) for m in monomials] for z in pts])
            cond = np.linalg.cond(A)
            if cond > COND_LIMIT:
                last_cond = min(last_cond, cond)
                continue
            B = np.array([[apply_D(m, z, p) for m in monomials] for z in pts])
        except NearPole:
            continue
        X, _res, _rank, _sv = np.linalg.lstsq(A, B, rcond=None)
        entries = X.T  # rows lambda', columns mu
        residual = float(np.max(np.abs(A @ X - B)))
        # the intermediate phi values inside apply_D grow like the
        # product of the two largest |t_i| while the result stays
        # bounded, so cancellation leaves absolute noise of that order
        # times machine epsilon; for strongly deformed parameters
        # (|t_i| >> 1) that can exceed a fixed tolerance on the O(1)
        # eigenvalues
        tmax = max(abs(ti) for ti in p.tvec)
        noise = 1e-12 * max(1.0, tmax * tmax) * float(np.max(np.abs(A)))
        for k, mu in enumerate(mus):
            ek = eigenvalue_E(mu, p)
            if abs(entries[k, k] - ek) > 1e-8 * max(1.0, abs(ek)) + noise:
                raise DiagonalMismatch(
                    f"diagonal at {mu}: got {entries[k, k]}, closed form {ek}")
        return TriangularOpMatrix(tuple(mus), entries, residual, float(cond))
    raise IllConditionedSamples(
        f"no well-conditioned sample set in {MAX_ATTEMPTS} attempts "
        f"(best condition {last_cond:.3g})")
