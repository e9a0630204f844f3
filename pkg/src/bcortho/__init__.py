"""Multivariable BC-type basic hypergeometric orthogonal polynomials.

Computes Askey-Wilson, q-Racah and big/little q-Jacobi families in n
variables, evaluates their orthogonality measures (torus, partially
discrete, finite discrete, Jackson multisum) and certifies closed-form
norm and constant-term identities numerically.
"""

__version__ = "0.1.0"
