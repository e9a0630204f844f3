"""Multivariable little q-Jacobi polynomials.

The little q-Jacobi family lives on the infinite discrete set
{(q^{nu_1}, t q^{nu_2}, ..., t^{n-1} q^{nu_n}) : 0 <= nu_1 <= ... <= nu_n}
and arises from the Askey-Wilson family with one parameter sent to
infinity through t_L(eps) = (eps^{-1} q^{1/2}, -a q^{1/2}, eps b q^{1/2},
-q^{1/2}). This module provides the Jackson-multisum bilinear form, the
polynomials (defined by Gram-Schmidt against the dominance-lower
monomials), the closed-form norms and q-Selberg constant term, and
numeric scans of the limit transition.

Closed forms are stated with the q-gamma function of arguments involving
alpha = log_q a and beta = log_q b; they are evaluated here through
ratios of infinite q-shifted factorials whose arguments are the exact
products q^u (for instance q^{lambda_i+1} t^{n-i} a b), so they remain
valid for b <= 0 where beta is undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from .bcpoly import (
    LaurentPolynomial,
    ascending_index,
    monomial_s,
    monomial_w,
    partition,
    partitions_dominated_by,
)
from .errors import DomainViolation, SingularGram, SlowConvergence
from .params import AWParams
from .qseries import qpoch_infinite, qpoch_real

POLE_GUARD = 1e-13
COND_LIMIT = 1e12


@dataclass(frozen=True)
class LittleParams:
    """Parameters (q, t, a, b) with 0 < a < 1/q and b < 1/q."""

    n: int
    q: float
    t: float
    a: float
    b: float

    def __post_init__(self):
        from .qseries import check_q
        check_q(self.q)
        if not 0.0 < self.t < 1.0:
            raise DomainViolation(f"t must be in (0,1), got {self.t}")
        if not 1 <= self.n:
            raise DomainViolation(f"n must be >= 1, got {self.n}")
        if not 0.0 < self.a < 1.0 / self.q:
            raise DomainViolation(f"a must be in (0, 1/q), got {self.a}")
        if not self.b < 1.0 / self.q:
            raise DomainViolation(f"b must be < 1/q, got {self.b}")

    @property
    def alpha(self) -> float:
        return math.log(self.a) / math.log(self.q)

    @property
    def tau(self) -> float:
        return math.log(self.t) / math.log(self.q)


def support_point(nu: Sequence[int], lp: LittleParams) -> Tuple[float, ...]:
    """The node rho_L q^nu with rho_{L,i} = t^{i-1}."""
    nu = ascending_index(nu)
    return tuple(lp.t ** (i - 1) * lp.q ** nu[i - 1]
                 for i in range(1, lp.n + 1))


def weight_little(nu: Sequence[int], lp: LittleParams) -> float:
    """Weight Delta^L at the node rho_L q^nu."""
    return _weight_at_point(support_point(nu, lp), lp)


def _ascending_with_sum(n: int, s: int) -> Iterator[Tuple[int, ...]]:
    """Weakly increasing nonnegative n-tuples with total s."""

    def rec(prefix: List[int], lo: int, rem: int):
        if len(prefix) == n - 1:
            if rem >= lo:
                yield tuple(prefix) + (rem,)
            return
        slots = n - 1 - len(prefix)
        for v in range(lo, rem // (slots + 1) + 1):
            yield from rec(prefix + [v], v, rem - v)

    if n == 0:
        if s == 0:
            yield ()
    elif n == 1:
        yield (s,)
    else:
        yield from rec([], 0, s)


def jackson_multisum(f, lp: LittleParams, rel_tol: float = 1e-13,
                     max_shells: int = 400) -> float:
    """Jackson integral of f over the chain set <rho_L>_n:
    (1-q)^n sum_nu f(rho_L q^nu) prod_i rho_{L,i} q^{nu_i}.

    The sum runs over shells of constant |nu| until several consecutive
    shells are negligible; raises SlowConvergence at the shell cap."""
    n, q = lp.n, lp.q
    total = 0.0
    quiet = 0
    for s in range(max_shells):
        shell = 0.0
        for nu in _ascending_with_sum(n, s):
            z = support_point(nu, lp)
            shell += f(z) * math.prod(z)
        total += shell
        if abs(shell) <= rel_tol * max(1.0, abs(total)):
            quiet += 1
            if quiet >= 4 and s >= n:
                return (1.0 - q) ** n * total
        else:
            quiet = 0
    raise SlowConvergence(
        f"Jackson multisum did not settle within {max_shells} shells")


def bilinear_little(f: LaurentPolynomial, g: LaurentPolynomial,
                    lp: LittleParams, rel_tol: float = 1e-13) -> float:
    """<f,g>_L: Jackson multisum of f g Delta^L."""

    def integrand(z):
        return (f.eval(z) * g.eval(z)).real * _weight_at_point(z, lp)

    return jackson_multisum(integrand, lp, rel_tol=rel_tol)


def delta_qJ(z: Sequence[float], q: float, t: float) -> float:
    """Interaction factor of the Jackson-type measures:
    prod_{i<j} |z_i - z_j| |z_i|^{2 tau - 1} (q z_j / (t z_i); q)_{2 tau - 1}
    with t = q^tau."""
    tau = math.log(t) / math.log(q)
    t2q = t * t / q
    val = 1.0
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            val *= abs(z[i] - z[j]) * abs(z[i]) ** (2.0 * tau - 1.0)
            val *= qpoch_real(q * z[j] / (t * z[i]), q, t2q).real
    return val


def _weight_at_point(z: Sequence[float], lp: LittleParams) -> float:
    n, q, t = lp.n, lp.q, lp.t
    tau, alpha = lp.tau, lp.alpha
    val = (q ** (-2.0 * tau * tau * math.comb(n, 3))
           * t ** (-(alpha + 1.0) * math.comb(n, 2)))
    for x in z:
        den = qpoch_infinite(q * lp.b * x, q)
        if abs(den) < POLE_GUARD:
            raise DomainViolation(f"(qbx;q)_inf vanishes at x={x}")
        val *= qpoch_infinite(q * x, q) / den * x ** alpha
    return float(val * delta_qJ(z, q, t))


@dataclass(frozen=True)
class LittlePolynomial:
    """Monic S-invariant orthogonal polynomial in the mtilde basis."""

    degree: Tuple[int, ...]
    coeffs: Dict[Tuple[int, ...], float]

    def to_poly(self) -> LaurentPolynomial:
        out = LaurentPolynomial(len(self.degree))
        for mu, c in self.coeffs.items():
            out = out + monomial_s(mu).scale(c)
        return out


def little_polynomial(lam: Sequence[int], lp: LittleParams,
                      rel_tol: float = 1e-13) -> LittlePolynomial:
    """P^L_lambda = mtilde_lambda + sum_{mu < lambda} c_mu mtilde_mu,
    orthogonal to every mtilde_mu with mu < lambda."""
    lam = partition(lam)
    if len(lam) != lp.n:
        raise DomainViolation("partition length must equal n")
    mus = partitions_dominated_by(lam)[:-1]  # all mu < lambda
    if not mus:
        return LittlePolynomial(lam, {lam: 1.0})
    mons = {mu: monomial_s(mu) for mu in mus}
    m_lam = monomial_s(lam)
    k = len(mus)
    G = np.empty((k, k))
    rhs = np.empty(k)
    for i, mu in enumerate(mus):
        rhs[i] = -bilinear_little(m_lam, mons[mu], lp, rel_tol)
        for j in range(i, k):
            G[i, j] = G[j, i] = bilinear_little(
                mons[mu], mons[mus[j]], lp, rel_tol)
    cond = np.linalg.cond(G)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularGram(f"Gram matrix condition {cond:.3g}")
    sol = np.linalg.solve(G, rhs)
    coeffs = {lam: 1.0}
    for mu, c in zip(mus, sol):
        coeffs[mu] = float(c)
    return LittlePolynomial(lam, coeffs)


def _eratio(num: List[float], den: List[float], q: float) -> float:
    """prod (x;q)_inf over den divided by the product over num."""
    val = 1.0
    for x in den:
        val *= qpoch_infinite(x, q).real
    for x in num:
        d = qpoch_infinite(x, q).real
        if abs(d) < POLE_GUARD:
            raise DomainViolation(f"(x;q)_inf vanishes for x={x}")
        val /= d
    return val


def nqj_product(lam: Sequence[int], n: int, q: float, t: float,
                a: float, b: float) -> float:
    """The product N+_qJ(lambda) N-_qJ(lambda) of q-gamma factors shared
    by the little and big q-Jacobi norms.

    The q-gamma ratios are expanded so that every q^u is an exact product
    of q-powers with a and b; the net power of (1-q) is n and the net
    power of (q;q)_inf is 2n, independent of the parameters."""
    num: List[float] = []   # gamma-numerator arguments q^u
    den: List[float] = []
    for i in range(1, n + 1):
        li = lam[i - 1]
        tni = t ** (n - i)
        num += [q ** (li + 1) * tni * a * b, q ** (li + 1) * tni * a]
        den += [q ** (2 * li + 1) * tni * tni * a * b]
        num += [q ** (li + 1) * tni, q ** (li + 1) * tni * b]
        den += [q ** (2 * li + 2) * tni * tni * a * b]
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            lj, lk = lam[j - 1], lam[k - 1]
            num += [q ** (lj + lk + 1) * t ** (2 * n - j - k + 1) * a * b,
                    q ** (lj - lk) * t ** (k - j + 1)]
            den += [q ** (lj + lk + 1) * t ** (2 * n - j - k) * a * b,
                    q ** (lj - lk) * t ** (k - j)]
            num += [q ** (lj + lk + 2) * t ** (2 * n - j - k - 1) * a * b,
                    q ** (lj - lk + 1) * t ** (k - j - 1)]
            den += [q ** (lj + lk + 2) * t ** (2 * n - j - k) * a * b,
                    q ** (lj - lk + 1) * t ** (k - j)]
    qq = qpoch_infinite(q, q).real
    return (1.0 - q) ** n * qq ** (2 * n) * _eratio(num, den, q)


def norm_little(lam: Sequence[int], lp: LittleParams) -> float:
    """Closed-form quadratic norm N^L(lambda)."""
    lam = partition(lam)
    if len(lam) != lp.n:
        raise DomainViolation("partition length must equal n")
    n, q, t, a = lp.n, lp.q, lp.t, lp.a
    val = nqj_product(lam, n, q, t, a, lp.b)
    for i in range(1, n + 1):
        li = lam[i - 1]
        val *= (q ** li * a * t ** (2 * (n - i))) ** li
    return val


def selberg_little(lp: LittleParams) -> float:
    """Closed-form constant term <1,1>_L (the q-Selberg integral of
    Jackson type)."""
    n, q, t, a, b = lp.n, lp.q, lp.t, lp.a, lp.b
    num: List[float] = []
    den: List[float] = []
    for j in range(1, n + 1):
        num += [q * a * t ** (j - 1), q * b * t ** (j - 1), t ** j]
        den += [q * q * a * b * t ** (n + j - 2), t]
    qq = qpoch_infinite(q, q).real
    return (1.0 - q) ** n * qq ** n * _eratio(num, den, q)


# ---------------------------------------------------------------------------
# limit transition from the Askey-Wilson family

def aw_params_little(eps: float, lp: LittleParams) -> AWParams:
    """Askey-Wilson parameters t_L(eps) realizing the little q-Jacobi
    limit; requires b != 0 so all four parameters stay nonzero."""
    if eps <= 0:
        raise DomainViolation("eps must be positive")
    if lp.b == 0:
        raise DomainViolation("the deformation requires b != 0")
    rq = math.sqrt(lp.q)
    return AWParams(lp.n, lp.q, lp.t, rq / eps, -lp.a * rq,
                    eps * lp.b * rq, -rq)


def limit_scan_little(lam: Sequence[int], lp: LittleParams, kmax: int,
                      eps0: float | None = None,
                      seed: int = 0) -> List[Tuple[int, float, float]]:
    """Table of (k, eps_k, max coefficient deviation) for the limit of
    rescaled Askey-Wilson coefficients to little q-Jacobi coefficients,
    along eps_k = eps0 q^k."""
    from .askey_wilson import aw_polynomial

    lam = partition(lam)
    if eps0 is None:
        eps0 = lp.q
    target = little_polynomial(lam, lp)
    rq = math.sqrt(lp.q)
    rows: List[Tuple[int, float, float]] = []
    for k in range(kmax + 1):
        eps = eps0 * lp.q ** k
        p = aw_params_little(eps, lp)
        aw = aw_polynomial(lam, p, seed=seed)
        dev = 0.0
        for mu in partitions_dominated_by(lam):
            scaled = aw.coeffs.get(mu, 0.0) * (eps / rq) ** (
                sum(lam) - sum(mu))
            want = target.coeffs.get(mu, 0.0)
            dev = max(dev, abs(scaled - want))
        rows.append((k, eps, dev))
    return rows


def measure_constant_little(lam: Sequence[int], mu: Sequence[int],
                            lp: LittleParams, kmax: int, M: int = 64,
                            eps0: float | None = None,
                            depth: int = 128) -> List[Tuple[int, float, float]]:
    """Table of (k, eps_k, relative deviation) for the limit of the
    renormalized partially discrete pairing of W-monomials to the
    Jackson pairing of S-monomials."""
    from .measures import partial_bilinear

    lam = partition(lam)
    mu = partition(mu)
    if eps0 is None:
        eps0 = lp.q
    n, q, t = lp.n, lp.q, lp.t
    rq = math.sqrt(q)
    want = (2 ** n * math.factorial(n)
            * qpoch_infinite(q, q).real ** (-2 * n) * (1 - q) ** (-n)
            * bilinear_little(monomial_s(lam), monomial_s(mu), lp))
    f = monomial_w(lam)
    g = monomial_w(mu)
    rows: List[Tuple[int, float, float]] = []
    for k in range(kmax + 1):
        eps = eps0 * q ** k
        p = aw_params_little(eps, lp)
        pair = partial_bilinear(f, g, p, M, depth=depth).value
        pref = 1.0
        for i in range(1, n + 1):
            pref *= qpoch_infinite(-q * t ** (i - 1) / eps, q).real
            pref *= qpoch_infinite(-q * lp.a * t ** (i - 1) / eps, q).real
        got = pref * (eps / rq) ** (sum(lam) + sum(mu)) * pair
        rows.append((k, eps, abs(got - want) / max(1.0, abs(want))))
    return rows
