"""Partitions, BC dominance order, Weyl-group orbits and Laurent polynomials.

The hyperoctahedral group W = S_n x {+-1}^n acts on Laurent polynomials in
z_1..z_n by permuting variables and inverting them; the symmetric group S_n
acts by permutation only. This module provides the invariant monomial bases
m_lambda (W-orbit sums) and mtilde_lambda (S-orbit sums), the dominance
order used for triangular expansions, and sparse Laurent arithmetic.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import DomainViolation, LengthMismatch, ZeroCoordinate, ZeroScale

Exponent = Tuple[int, ...]

PRUNE = 1e-300


def partition(parts: Sequence[int]) -> Tuple[int, ...]:
    """Validate a weakly decreasing nonnegative integer vector."""
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p):
        raise DomainViolation(f"negative part in {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise DomainViolation(f"not weakly decreasing: {p}")
    return p


def ascending_index(parts: Sequence[int]) -> Tuple[int, ...]:
    """Validate a weakly increasing nonnegative integer vector."""
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p):
        raise DomainViolation(f"negative part in {p}")
    if any(p[i] > p[i + 1] for i in range(len(p) - 1)):
        raise DomainViolation(f"not weakly increasing: {p}")
    return p


class LaurentPolynomial:
    """Sparse Laurent polynomial: map from integer exponent vectors to
    complex coefficients. Instances are treated as immutable."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponent, complex] | None = None):
        self.nvars = nvars
        clean: Dict[Exponent, complex] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise LengthMismatch(f"exponent {e} has wrong length")
                if abs(c) > PRUNE:
                    clean[tuple(int(x) for x in e)] = complex(c)
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c: complex = 1.0) -> "LaurentPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPolynomial)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if self.nvars != other.nvars:
            raise LengthMismatch("variable count mismatch")
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0.0) + c
        return LaurentPolynomial(self.nvars, t)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + other.scale(-1.0)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if self.nvars != other.nvars:
            raise LengthMismatch("variable count mismatch")
        t: Dict[Exponent, complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0.0) + c1 * c2
        return LaurentPolynomial(self.nvars, t)

    def scale(self, c: complex) -> "LaurentPolynomial":
        return LaurentPolynomial(
            self.nvars, {e: c * v for e, v in self.terms.items()})

    def substitute_scaled(self, u: complex) -> "LaurentPolynomial":
        """Replace z by u z, i.e. multiply each term by u^{sum of exponents}."""
        if u == 0:
            raise ZeroScale("substitution scale must be nonzero")
        return LaurentPolynomial(
            self.nvars,
            {e: v * u ** sum(e) for e, v in self.terms.items()})

    def coefficient(self, e: Sequence[int]) -> complex:
        return self.terms.get(tuple(int(x) for x in e), 0.0)

    def eval(self, z: Sequence[complex]) -> complex:
        """Evaluate at a point with nonzero coordinates; terms are summed
        in sorted exponent order for determinism."""
        if len(z) != self.nvars:
            raise LengthMismatch("point has wrong length")
        if any(x == 0 for x in z):
            raise ZeroCoordinate("evaluation point has a zero coordinate")
        total: complex = 0.0
        for e in sorted(self.terms):
            term = self.terms[e]
            for zi, ei in zip(z, e):
                term *= zi ** ei
            total += term
        return total

    def eval_grid(self, axes: List[np.ndarray]) -> np.ndarray:
        """Evaluate on the tensor grid axes[0] x ... x axes[n-1].

        Returns an ndarray of shape (len(axes[0]), ..., len(axes[n-1])).
        Uses per-axis power tables so the cost is O(#terms * grid size)
        with vectorized products.
        """
        if len(axes) != self.nvars:
            raise LengthMismatch("grid has wrong number of axes")
        n = self.nvars
        shape = tuple(len(ax) for ax in axes)
        out = np.zeros(shape, dtype=complex)
        # per-axis power cache: (axis, exponent) -> vector
        cache: Dict[Tuple[int, int], np.ndarray] = {}

        def powers(i: int, e: int) -> np.ndarray:
            key = (i, e)
            if key not in cache:
                cache[key] = np.asarray(axes[i], dtype=complex) ** e
            return cache[key]

        for e, c in self.terms.items():
            term = np.full(shape, c, dtype=complex)
            for i in range(n):
                vec = powers(i, e[i])
                sh = [1] * n
                sh[i] = shape[i]
                term = term * vec.reshape(sh)
            out += term
        return out

    def substitute_prefix(self, values: Sequence[complex]) -> "LaurentPolynomial":
        """Fix the first len(values) variables at the given nonzero values,
        returning a Laurent polynomial in the remaining variables."""
        r = len(values)
        if r > self.nvars:
            raise LengthMismatch("more values than variables")
        if any(v == 0 for v in values):
            raise ZeroCoordinate("substituted value is zero")
        t: Dict[Exponent, complex] = {}
        for e, c in self.terms.items():
            for v, ei in zip(values, e[:r]):
                c = c * v ** ei
            tail = e[r:]
            t[tail] = t.get(tail, 0.0) + c
        return LaurentPolynomial(self.nvars - r, t)

    def __repr__(self):
        items = ", ".join(f"{e}: {c:.6g}" for e, c in sorted(self.terms.items()))
        return f"LaurentPolynomial({self.nvars}, {{{items}}})"


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """BC dominance: mu <= lam iff every leading partial sum of mu is
    bounded by the corresponding one of lam."""
    if len(mu) != len(lam):
        raise LengthMismatch("partitions of different length")
    s_mu = 0
    s_lam = 0
    for a, b in zip(mu, lam):
        s_mu += a
        s_lam += b
        if s_mu > s_lam:
            return False
    return True


def partitions_dominated_by(lam: Sequence[int]) -> List[Tuple[int, ...]]:
    """All partitions mu <= lam, in graded-lexicographic order (ascending
    total degree, then ascending lexicographic). This total order refines
    dominance, so triangular back-substitution can walk it directly."""
    lam = partition(lam)
    n = len(lam)
    if n == 0:
        return [()]
    bound = lam[0]
    out = []

    def rec(prefix: List[int], maxpart: int):
        if len(prefix) == n:
            if dominance_leq(prefix, lam):
                out.append(tuple(prefix))
            return
        for p in range(min(maxpart, bound), -1, -1):
            prefix.append(p)
            # prune: partial sums must stay below lam's
            if sum(prefix) <= sum(lam[:len(prefix)]):
                rec(prefix, p)
            prefix.pop()

    rec([], bound)
    out.sort(key=lambda m: (sum(m), m))
    return out


def _orbit(v: Sequence[int], signs: bool) -> Iterable[Exponent]:
    seen = set()
    sign_choices = ([1, -1] if signs else [1],) * len(v)
    for perm in itertools.permutations(v):
        for sg in itertools.product(*sign_choices):
            w = tuple(s * x for s, x in zip(sg, perm))
            if w not in seen:
                seen.add(w)
                yield w


def monomial_w(lam: Sequence[int]) -> LaurentPolynomial:
    """W-invariant monomial m_lambda: sum of z^mu over the orbit of lambda
    under permutations and independent sign flips of the exponents."""
    lam = partition(lam)
    return LaurentPolynomial(len(lam), {e: 1.0 for e in _orbit(lam, True)})


def monomial_s(lam: Sequence[int]) -> LaurentPolynomial:
    """S-invariant monomial mtilde_lambda: permutation orbit sum only."""
    lam = partition(lam)
    return LaurentPolynomial(len(lam), {e: 1.0 for e in _orbit(lam, False)})


def rescale_monomial(lam: Sequence[int], u: complex) -> LaurentPolynomial:
    """m_lambda(z | u) := u^{|lambda|} m_lambda(u^{-1} z).

    Interpolates between m_lambda (u = 1) and mtilde_lambda (u -> 0)."""
    lam = partition(lam)
    if u == 0:
        raise ZeroScale("u must be nonzero")
    weight = sum(lam)
    m = monomial_w(lam)
    return LaurentPolynomial(
        len(lam),
        {e: c * u ** (weight - sum(e)) for e, c in m.terms.items()})
