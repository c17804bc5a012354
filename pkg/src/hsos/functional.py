"""The orbit-averaging functional F_N.

F_N(f) averages all entries of the orbit Gram matrix of f and integrates
over the circle.  Two routes are provided: ``fn_diagonal`` sums the
diagonal coefficients a[l, l] with N | l (exact in the coefficients), and
``fn_quadrature`` evaluates the defining integral on a uniform grid, which
is exact for the trigonometric integrand and serves as an independent check.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .gram import _orbit_grams
from .poly import HoloPoly, Poly, hermitian_square, mul


def circulant_average(ell, N):
    """(1/N^2) sum_{j,k} w^{ell (j - k)}: 1 when N divides ell, else 0."""
    if N < 1:
        raise DomainError("modulus N must be >= 1")
    return 1 if ell % N == 0 else 0


def fn_diagonal(f, N):
    if N < 1:
        raise DomainError("modulus N must be >= 1")
    diag = np.diagonal(f.coeffs)
    return complex(np.sum(diag[::N]))


def fn_quadrature(f, N, samples=0):
    """Uniform-grid evaluation of the orbit-averaged circle integral.

    ``samples=0`` picks ``2 deg + 2`` automatically.
    """
    if N < 1:
        raise DomainError("modulus N must be >= 1")
    need = 2 * f.deg + 2
    if samples == 0:
        samples = need
    if samples < need:
        raise DomainError(f"need at least {need} samples for degree {f.deg}")
    thetas = 2 * np.pi * np.arange(samples) / samples
    return complex(_orbit_grams(f.coeffs, N, thetas).mean())


def embed_vector(v):
    """``sum_j v_j z^(N - j)`` for ``v`` in C^N."""
    v = np.asarray(v, dtype=complex).ravel()
    N = len(v)
    if N < 1:
        raise DomainError("vector must be nonempty")
    h = np.zeros(N + 1, dtype=complex)
    h[N - np.arange(N)] = v
    return HoloPoly(h)


def matrix_product_via_fn(v, A, w, s=0, t=0):
    """F_N( zbar^{Ns} z^{Nt} conj(v~(z)) w~(z) f_A(z, zbar) ).

    With f_A the polynomial whose coefficient matrix is A, the result is
    ``v^* A w`` when s == t and 0 otherwise.
    """
    v = np.asarray(v, dtype=complex).ravel()
    w = np.asarray(w, dtype=complex).ravel()
    A = np.asarray(A, dtype=complex)
    N = len(v)
    if len(w) != N or A.shape != (N, N):
        raise DomainError("dimension mismatch between v, A and w")
    if s < 0 or t < 0:
        raise DomainError("shifts must be nonnegative")
    vt = Poly.from_antiholomorphic(embed_vector(v))
    wt = Poly.from_holomorphic(embed_vector(w))
    shift = Poly.monomial(N * s, N * t)
    prod = mul(mul(mul(shift, vt), wt), Poly(A))
    return fn_diagonal(prod, N)


def fn_positivity_check(f, N, h):
    """F_N(|h|^2 f); nonnegative whenever every orbit Gram matrix of f is."""
    h = h if isinstance(h, HoloPoly) else HoloPoly(h)
    return float(np.real(fn_diagonal(mul(hermitian_square(h), f), N)))
