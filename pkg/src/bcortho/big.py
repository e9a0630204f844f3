"""Multivariable big q-Jacobi polynomials.

The big q-Jacobi family is orthogonal on the two-sided discrete set
built from the chains of c t^{i-1} (positive side) and -d t^{i-1}
(negative side), with a weighted Jackson integral whose weights c_{B,j}
balance the two sides so that the measure behaves continuously where a
chain coordinate crosses zero. The family arises from the Askey-Wilson
polynomials with two parameters sent to infinity through
t_B(eps) = (eps^{-1}(qc/d)^{1/2}, -eps^{-1}(qd/c)^{1/2},
eps a (qd/c)^{1/2}, -eps b (qc/d)^{1/2}).

Provided here: the weight and the split-weights c_{B,j} in both their
defining product form and an independent theta-product form (checked
against each other), the bilinear form, polynomials, closed-form norms,
the q-Selberg constant term together with its two-sided t = q^k
evaluation, the asymptotic matching of the split-weights, and numeric
scans of the limit transition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .bcpoly import (
    LaurentPolynomial,
    monomial_s,
    monomial_w,
    partition,
    partitions_dominated_by,
)
from .errors import (
    DomainViolation,
    FormMismatch,
    PoleInTheta,
    SingularGram,
    SlowConvergence,
)
from .little import _ascending_with_sum, _eratio, delta_qJ, nqj_product
from .params import AWParams
from .qseries import (
    psi_t,
    qpoch_finite,
    qpoch_infinite,
    qpoch_real,
    theta_jacobi,
)

POLE_GUARD = 1e-13
COND_LIMIT = 1e12
FORM_TOL = 1e-9


@dataclass(frozen=True)
class BigParams:
    """Parameters (q, t, a, b, c, d) with c, d > 0 and either the real
    branch a in (-c/dq, 1/q), b in (-d/cq, 1/q) or the conjugate branch
    a = c u, b = -d conj(u) with u nonreal."""

    n: int
    q: float
    t: float
    a: complex
    b: complex
    c: float
    d: float

    def __post_init__(self):
        from .qseries import check_q
        check_q(self.q)
        if not 0.0 < self.t < 1.0:
            raise DomainViolation(f"t must be in (0,1), got {self.t}")
        if not 1 <= self.n:
            raise DomainViolation(f"n must be >= 1, got {self.n}")
        if not (self.c > 0 and self.d > 0):
            raise DomainViolation("c and d must be positive")
        a, b = complex(self.a), complex(self.b)
        if abs(a.imag) < 1e-14 and abs(b.imag) < 1e-14:
            ar, br = a.real, b.real
            if not -self.c / (self.d * self.q) < ar < 1.0 / self.q:
                raise DomainViolation(f"a = {ar} outside (-c/dq, 1/q)")
            if not -self.d / (self.c * self.q) < br < 1.0 / self.q:
                raise DomainViolation(f"b = {br} outside (-d/cq, 1/q)")
        else:
            u = a / self.c
            if abs(u.imag) < 1e-14:
                raise DomainViolation("conjugate branch requires nonreal u")
            if abs(b + self.d * u.conjugate()) > 1e-12 * max(1.0, abs(b)):
                raise DomainViolation(
                    "conjugate branch requires a = c u, b = -d conj(u)")

    @property
    def tau(self) -> float:
        return math.log(self.t) / math.log(self.q)


def support_point(j: int, nu: Sequence[int], nup: Sequence[int],
                  bp: BigParams) -> Tuple[float, ...]:
    """Node (rho_B q^nu, sigma_B q^nu') with rho_{B,i} = c t^{i-1} and
    sigma_{B,i} = -d t^{i-1}; len(nu) = j, len(nup) = n - j."""
    if len(nu) != j or len(nup) != bp.n - j:
        raise DomainViolation("chain labels have wrong lengths")
    pos = tuple(bp.c * bp.t ** (i - 1) * bp.q ** nu[i - 1]
                for i in range(1, j + 1))
    neg = tuple(-bp.d * bp.t ** (i - 1) * bp.q ** nup[i - 1]
                for i in range(1, bp.n - j + 1))
    return pos + neg


def weight_big(z: Sequence[float], bp: BigParams) -> float:
    """Weight Delta^B(z) = prod_i v_B(z_i) * delta_qJ(z)."""
    q = bp.q
    val = 1.0
    for x in z:
        num = (qpoch_infinite(q * x / bp.c, q)
               * qpoch_infinite(-q * x / bp.d, q))
        den = (qpoch_infinite(q * bp.a * x / bp.c, q)
               * qpoch_infinite(-q * bp.b * x / bp.d, q))
        if abs(den) < POLE_GUARD:
            raise DomainViolation(f"v_B denominator vanishes at x={x}")
        val *= (num / den).real
    return val * delta_qJ(z, q, bp.t)


def _theta(x: complex, q: float) -> complex:
    v = theta_jacobi(x, q)
    return v


def c_weights(bp: BigParams, check: bool = True) -> List[float]:
    """Split-weights (c_{B,0}, ..., c_{B,n}) of the two-sided Jackson
    integral, from the theta-product closed form.

    When check is set, the defining form c_B * d_{B,j} (a base constant
    times products of the quasi-constant Psi_t) is evaluated as well and
    FormMismatch is raised if the two disagree."""
    n, q, t, c, d = bp.n, bp.q, bp.t, bp.c, bp.d
    tau = bp.tau
    qq = qpoch_infinite(q, q).real
    out: List[float] = []
    for j in range(n + 1):
        val = qq ** n
        for i in range(1, j + 1):
            den = (_theta(-t ** (1 - i) * d / c, q)
                   * _theta(-t ** i * c / d, q))
            if abs(den) < POLE_GUARD:
                raise PoleInTheta("theta factor vanishes in c_{B,j}")
            val *= (_theta(-t ** (i + j - n) * c / d, q) / den).real
        for i in range(1, n - j + 1):
            den = _theta(-t ** (1 - i) * c / d, q)
            if abs(den) < POLE_GUARD:
                raise PoleInTheta("theta factor vanishes in c_{B,j}")
            val /= den.real
        val *= q ** (-2.0 * tau * tau * (
            (n - j) * math.comb(j, 2) + math.comb(j, 3)
            + math.comb(n - j, 3)))
        val *= t ** (-math.comb(j, 2) - math.comb(n - j, 2))
        val *= c ** (-2.0 * tau * (j * (n - j) + math.comb(j, 2)) - j)
        val *= d ** (-2.0 * tau * math.comb(n - j, 2) + j - n)
        out.append(float(val))
    if check:
        defining = c_weights_defining(bp)
        for j in range(n + 1):
            want = defining[j]
            scale = max(abs(out[j]), abs(want), 1e-300)
            if abs(out[j] - want) > FORM_TOL * scale:
                raise FormMismatch(
                    f"c_B weight forms disagree at j={j}: "
                    f"{out[j]} vs {want}")
    return out


def c_weights_defining(bp: BigParams) -> List[float]:
    """The split-weights from their defining form: a base constant c_B
    times the products d_{B,j} of the quasi-constant Psi_t."""
    n, q, t, c, d = bp.n, bp.q, bp.t, bp.c, bp.d
    tau = bp.tau
    qq = qpoch_infinite(q, q).real
    base = qq ** n * q ** (-2.0 * tau * tau * math.comb(n, 3))
    base *= d ** (-2.0 * tau * math.comb(n, 2) - n)
    base *= t ** (-math.comb(n, 2))
    for i in range(1, n + 1):
        den = _theta(-t ** (1 - i) * c / d, q)
        if abs(den) < POLE_GUARD:
            raise PoleInTheta("theta factor vanishes in c_B")
        base /= den.real
    out: List[float] = []
    for j in range(n + 1):
        dB = 1.0
        for k in range(1, n):
            for m in range(k + 1, n + 1):
                if k <= j:
                    dB *= psi_t(-t ** (n - m - k + 1) * d / c, q, t)
        out.append(float(base * dB))
    return out


def bilinear_big(f: LaurentPolynomial, g: LaurentPolynomial, bp: BigParams,
                 rel_tol: float = 1e-13, max_shells: int = 400) -> float:
    """<f,g>_B: the c-weighted Jackson integral of f g Delta^B over the
    two-sided chain set, summed in shells of constant |nu| + |nu'|."""
    n, q = bp.n, bp.q
    cw = c_weights(bp, check=False)
    total = 0.0
    quiet = 0
    for s in range(max_shells):
        shell = 0.0
        for j in range(n + 1):
            for s1 in range(s + 1):
                for nu in _ascending_with_sum(j, s1):
                    for nup in _ascending_with_sum(n - j, s - s1):
                        z = support_point(j, nu, nup, bp)
                        jac = math.prod(z[:j]) * math.prod(
                            -x for x in z[j:])
                        shell += (cw[j] * (f.eval(z) * g.eval(z)).real
                                  * weight_big(z, bp) * jac)
        total += shell
        if abs(shell) <= rel_tol * max(1.0, abs(total)):
            quiet += 1
            if quiet >= 4 and s >= n:
                return (1.0 - q) ** n * total
        else:
            quiet = 0
    raise SlowConvergence(
        f"big q-Jacobi multisum did not settle within {max_shells} shells")


@dataclass(frozen=True)
class BigPolynomial:
    """Monic S-invariant orthogonal polynomial in the mtilde basis."""

    degree: Tuple[int, ...]
    coeffs: Dict[Tuple[int, ...], float]

    def to_poly(self) -> LaurentPolynomial:
        out = LaurentPolynomial(len(self.degree))
        for mu, cf in self.coeffs.items():
            out = out + monomial_s(mu).scale(cf)
        return out


def big_polynomial(lam: Sequence[int], bp: BigParams,
                   rel_tol: float = 1e-13) -> BigPolynomial:
    """P^B_lambda = mtilde_lambda + sum_{mu < lambda} c_mu mtilde_mu,
    orthogonal to every mtilde_mu with mu < lambda."""
    lam = partition(lam)
    if len(lam) != bp.n:
        raise DomainViolation("partition length must equal n")
    mus = partitions_dominated_by(lam)[:-1]
    if not mus:
        return BigPolynomial(lam, {lam: 1.0})
    mons = {mu: monomial_s(mu) for mu in mus}
    m_lam = monomial_s(lam)
    k = len(mus)
    G = np.empty((k, k))
    rhs = np.empty(k)
    for i, mu in enumerate(mus):
        rhs[i] = -bilinear_big(m_lam, mons[mu], bp, rel_tol)
        for j in range(i, k):
            G[i, j] = G[j, i] = bilinear_big(
                mons[mu], mons[mus[j]], bp, rel_tol)
    cond = np.linalg.cond(G)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularGram(f"Gram matrix condition {cond:.3g}")
    sol = np.linalg.solve(G, rhs)
    coeffs = {lam: 1.0}
    for mu, cf in zip(mus, sol):
        coeffs[mu] = float(cf)
    return BigPolynomial(lam, coeffs)


def norm_big(lam: Sequence[int], bp: BigParams) -> float:
    """Closed-form quadratic norm N^B(lambda)."""
    lam = partition(lam)
    if len(lam) != bp.n:
        raise DomainViolation("partition length must equal n")
    n, q, t, c, d = bp.n, bp.q, bp.t, bp.c, bp.d
    a, b = bp.a, bp.b
    val = (c * d) ** sum(lam) * nqj_product(lam, n, q, t, a, b)
    for i in range(1, n + 1):
        li = lam[i - 1]
        val *= q ** math.comb(li, 2) * (t ** (n - i)) ** li
        den = (qpoch_infinite(-q ** (li + 1) * b * t ** (n - i) * c / d, q)
               * qpoch_infinite(-q ** (li + 1) * a * t ** (n - i) * d / c, q))
        if abs(den) < POLE_GUARD:
            raise DomainViolation("norm denominator factor vanishes")
        val /= den
    val = complex(val)
    return float(val.real)


def selberg_big(bp: BigParams) -> float:
    """Closed-form constant term <1,1>_B."""
    n, q, t, c, d = bp.n, bp.q, bp.t, bp.c, bp.d
    a, b = bp.a, bp.b
    num: List[complex] = []
    den: List[complex] = []
    for j in range(1, n + 1):
        num += [q * a * t ** (j - 1), q * b * t ** (j - 1), t ** j,
                -q * a * t ** (j - 1) * d / c, -q * b * t ** (j - 1) * c / d]
        den += [q * q * a * b * t ** (n + j - 2), t]
    qq = qpoch_infinite(q, q).real
    val = (1.0 - q) ** n * qq ** n * _eratio(num, den, q)
    return float(complex(val).real)


def askey_evans_lhs(bp: BigParams, rel_tol: float = 1e-13,
                    max_terms: int = 400) -> float:
    """Two-sided iterated Jackson integral of the t = q^k Selberg
    integrand over [-d, c]^n, by direct summation."""
    k = _natural_k(bp)
    n, q, c, d = bp.n, bp.q, bp.c, bp.d
    a, b = bp.a, bp.b

    def v(x: float) -> float:
        num = (qpoch_infinite(q * x / c, q)
               * qpoch_infinite(-q * x / d, q))
        den = (qpoch_infinite(q * a * x / c, q)
               * qpoch_infinite(-q * b * x / d, q))
        return (num / den).real

    # one axis: nodes c q^m (weight c q^m) and -d q^m (weight d q^m)
    nodes: List[Tuple[float, float]] = []
    m = 0
    while m < max_terms:
        w = q ** m
        if w < rel_tol:
            break
        nodes.append((c * q ** m, c * w))
        nodes.append((-d * q ** m, d * w))
        m += 1
    else:
        raise SlowConvergence("Jackson node list did not terminate")

    def full(z: List[float]) -> float:
        val = 1.0
        for i in range(n):
            for j in range(i + 1, n):
                val *= z[i] ** (2 * k) * qpoch_finite(
                    q ** (1 - k) * z[j] / z[i], q, 2 * k)
            val *= v(z[i])
        return val

    def rec(z: List[float], jac: float) -> float:
        if len(z) == n:
            return jac * full(z)
        return sum(rec(z + [x], jac * w) for x, w in nodes)

    return (1.0 - q) ** n * rec([], 1.0)


def askey_evans_rhs(bp: BigParams) -> float:
    """Closed form of the two-sided t = q^k Selberg integral."""
    k = _natural_k(bp)
    n, q, t, c, d = bp.n, bp.q, bp.t, bp.c, bp.d
    a, b = bp.a, bp.b
    qq = qpoch_infinite(q, q).real
    val = q ** (k * k * math.comb(n, 3)
                - math.comb(k, 2) * math.comb(n, 2))
    cd_pair = (qpoch_infinite(-d / c, q) * qpoch_infinite(-c / d, q)).real
    for i in range(1, n + 1):
        # gamma ratio with arguments alpha+1+(i-1)k etc., expanded so the
        # q-powers are exact products
        num = [q * a * t ** (i - 1), q * b * t ** (i - 1)]
        den = [q * q * a * b * t ** (n + i - 2)]
        val *= (1.0 - q) ** (1 + (n - i) * k) * qq * _eratio(num, den, q)
        val *= (qpoch_finite(q, q, i * k)
                / qpoch_finite(q, q, k)) * (1.0 - q) ** (k - i * k)
        val *= cd_pair * (c * d) ** (1 + (i - 1) * k) / (c + d)
        den2 = (qpoch_infinite(-q * a * t ** (i - 1) * d / c, q)
                * qpoch_infinite(-q * b * t ** (i - 1) * c / d, q))
        if abs(den2) < POLE_GUARD:
            raise DomainViolation("Selberg denominator factor vanishes")
        val /= den2.real
    return float(val)


def selberg_big_qk(bp: BigParams) -> float:
    """Value of the two-sided t = q^k Selberg integral obtained from the
    general constant term <1,1>_B by translation.

    At t = q^k all split-weights equal c_B, and the bilinear form differs
    from the bare iterated integral by c_B together with the ratio of
    Gamma_q(ik)/Gamma_q(k) to Gamma_q(ik+1)/Gamma_q(k+1) factors, so the
    integral equals <1,1>_B / (c_B prod_i (1-q^k)/(1-q^{ik}))."""
    k = _natural_k(bp)
    n, q = bp.n, bp.q
    const = c_weights(bp, check=False)[0]
    for i in range(1, n + 1):
        const *= (1.0 - q ** k) / (1.0 - q ** (i * k))
    return selberg_big(bp) / const


def _natural_k(bp: BigParams) -> int:
    k = round(math.log(bp.t) / math.log(bp.q))
    if k < 1 or abs(bp.t - bp.q ** k) > 1e-12:
        raise DomainViolation(f"t={bp.t} is not an exact positive power of q")
    return int(k)


def asymptotic_ratio(j: int, lam: Sequence[int], mu: Sequence[int],
                     bp: BigParams, L: int) -> float:
    """Ratio of c_{B,j} Delta^B at z+(L) to c_{B,j-1} Delta^B at z-(L):
    the two ways a chain coordinate can vanish. Tends to 1 as L grows."""
    if not 1 <= j <= bp.n:
        raise DomainViolation(f"j must be in 1..n, got {j}")
    if len(lam) != j - 1 or len(mu) != bp.n - j:
        raise DomainViolation("chain labels have wrong lengths")
    cw = c_weights(bp, check=False)
    zp = support_point(j, tuple(lam) + (L,), tuple(mu), bp)
    zm = support_point(j - 1, tuple(lam), tuple(mu) + (L,), bp)
    num = cw[j] * weight_big(zp, bp)
    den = cw[j - 1] * weight_big(zm, bp)
    if abs(den) < 1e-300:
        raise DomainViolation("vanishing comparison weight")
    return num / den


# ---------------------------------------------------------------------------
# limit transition from the Askey-Wilson family

def aw_params_big(eps: float, bp: BigParams) -> AWParams:
    """Askey-Wilson parameters t_B(eps) realizing the big q-Jacobi limit."""
    if eps <= 0:
        raise DomainViolation("eps must be positive")
    a, b = complex(bp.a), complex(bp.b)
    if a == 0 or b == 0:
        raise DomainViolation("the deformation requires a, b != 0")
    q, c, d = bp.q, bp.c, bp.d
    rcd = math.sqrt(q * c / d)
    rdc = math.sqrt(q * d / c)
    return AWParams(bp.n, q, bp.t, rcd / eps, -rdc / eps,
                    eps * a * rdc, -eps * b * rcd)


def limit_scan_big(lam: Sequence[int], bp: BigParams, kmax: int,
                   eps0: float | None = None,
                   seed: int = 0) -> List[Tuple[int, float, float]]:
    """Table of (k, eps_k, max coefficient deviation) for the limit of
    rescaled Askey-Wilson coefficients to big q-Jacobi coefficients."""
    from .askey_wilson import aw_polynomial

    lam = partition(lam)
    if eps0 is None:
        eps0 = bp.q
    target = big_polynomial(lam, bp)
    scale = math.sqrt(bp.c * bp.d / bp.q)
    rows: List[Tuple[int, float, float]] = []
    for k in range(kmax + 1):
        eps = eps0 * bp.q ** k
        p = aw_params_big(eps, bp)
        aw = aw_polynomial(lam, p, seed=seed)
        dev = 0.0
        for mu in partitions_dominated_by(lam):
            scaled = aw.coeffs.get(mu, 0.0) * (eps * scale) ** (
                sum(lam) - sum(mu))
            want = target.coeffs.get(mu, 0.0)
            dev = max(dev, abs(scaled - want))
        rows.append((k, eps, dev))
    return rows


def measure_constant_big(lam: Sequence[int], mu: Sequence[int],
                         bp: BigParams, kmax: int, M: int = 64,
                         eps0: float | None = None,
                         depth: int = 128) -> List[Tuple[int, float, float]]:
    """Table of (k, eps_k, relative deviation) for the limit of the
    renormalized partially discrete pairing of W-monomials to the
    c-weighted Jackson pairing of S-monomials."""
    from .measures import partial_bilinear

    lam = partition(lam)
    mu = partition(mu)
    if eps0 is None:
        eps0 = bp.q
    n, q, t = bp.n, bp.q, bp.t
    scale = math.sqrt(bp.c * bp.d / q)
    want = (2 ** n * math.factorial(n)
            * qpoch_infinite(q, q).real ** (-2 * n) * (1 - q) ** (-n)
            * bilinear_big(monomial_s(lam), monomial_s(mu), bp))
    f = monomial_w(lam)
    g = monomial_w(mu)
    rows: List[Tuple[int, float, float]] = []
    for k in range(kmax + 1):
        eps = eps0 * q ** k
        p = aw_params_big(eps, bp)
        pair = partial_bilinear(f, g, p, M, depth=depth).value
        pref = 1.0
        for i in range(1, n + 1):
            pref *= qpoch_infinite(-q * t ** (i - 1) / (eps * eps), q).real
        got = pref * (eps * scale) ** (sum(lam) + sum(mu)) * pair
        rows.append((k, eps, abs(got - want) / max(1.0, abs(want))))
    return rows
