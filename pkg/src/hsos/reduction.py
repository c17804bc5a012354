"""Reduction modulo the Hermitian ideal (z^N zbar^N - 1).

A monomial ``zbar^a z^b`` with both exponents >= N folds to
``zbar^(a-N) z^(b-N)`` plus ``zbar^(a-N) z^(b-N) * (z^N zbar^N - 1)``.
Folding until ``min(a, b) < N`` leaves the normal form, whose coefficient
matrix -- viewed in N x N blocks over the basis psi, z^N psi, ... -- lives
only in the first block row and first block column.  Block (0, k) is the
data matrix A_k and block (k, 0) is A_k^*.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .poly import Poly, ideal_generator, matrix_from_json, matrix_to_json, require_hermitian


@dataclass(frozen=True, eq=False)
class TrigNormalForm:
    """Data (A_0, ..., A_m) of a polynomial trigonometric mod (z^N zbar^N - 1)."""

    N: int
    data: tuple

    def __post_init__(self):
        if self.N < 1:
            raise DomainError("modulus N must be >= 1")
        blocks = []
        for a in self.data:
            a = np.array(a, dtype=complex)
            if a.shape != (self.N, self.N):
                raise DomainError(f"data blocks must be {self.N}x{self.N}, got {a.shape}")
            a.flags.writeable = False
            blocks.append(a)
        if not blocks:
            blocks.append(np.zeros((self.N, self.N), dtype=complex))
        while len(blocks) > 1 and not np.any(blocks[-1]):
            blocks.pop()
        object.__setattr__(self, "data", tuple(blocks))

    @property
    def m(self):
        return len(self.data) - 1

    def block(self, k):
        """A_k for -m <= k <= m, with A_{-k} = A_k^*."""
        if abs(k) > self.m:
            return np.zeros((self.N, self.N), dtype=complex)
        return self.data[k] if k >= 0 else self.data[-k].conj().T

    def to_json(self):
        return {"N": self.N, "m": self.m, "data": [matrix_to_json(a) for a in self.data]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["N"]), tuple(matrix_from_json(b) for b in obj["data"]))

    def __eq__(self, other):
        if not isinstance(other, TrigNormalForm):
            return NotImplemented
        return (
            self.N == other.N
            and self.m == other.m
            and all(np.array_equal(a, b) for a, b in zip(self.data, other.data))
        )

    __hash__ = None

    def allclose(self, other, atol=1e-12):
        if self.N != other.N:
            return False
        m = max(self.m, other.m)
        return all(np.allclose(self.block(k), other.block(k), rtol=0, atol=atol) for k in range(m + 1))


def _fold(a, N):
    """Split coefficient matrix ``a`` into (normal, quotient) matrices.

    The chain (r + tN, c + tN), t >= 0, with min(r, c) < N collapses onto
    (r, c); the monomial at shift t leaves one copy in the quotient at each
    shift 0..t-1.  Shifts are visited from the top down, so monomials are
    processed in decreasing total degree.
    """
    n = a.shape[0]
    base = np.zeros((n, n), dtype=bool)
    base[:N, :] = True
    base[:, :N] = True
    tmax = (n - 1) // N
    quot = np.zeros((max(n - N, 1),) * 2, dtype=complex)
    acc = np.zeros((n, n), dtype=complex)
    for t in range(tmax, 0, -1):
        w = n - t * N
        acc[:w, :w] += a[t * N :, t * N :]
        off = (t - 1) * N
        quot[off : off + w, off : off + w] += np.where(base[:w, :w], acc[:w, :w], 0)
    normal = np.where(base, acc + a, 0)
    return normal, quot


def reduce(f, N):
    """Normal form of ``f`` mod (z^N zbar^N - 1) and the quotient ``q``.

    Returns ``(TrigNormalForm, q)`` with ``f = reconstruct(normal) + q * (z^N zbar^N - 1)``.
    """
    require_hermitian(f)
    if N < 1:
        raise DomainError("modulus N must be >= 1")
    a = f.coeffs
    normal, quot = _fold(a, N)
    q = Poly(quot)
    require_hermitian(q, "quotient")
    return _blocks(normal, N), q


def _blocks(normal, N):
    n = normal.shape[0]
    m = -(-n // N) - 1
    size = N * (m + 1)
    padded = np.zeros((size, size), dtype=complex)
    padded[:n, :n] = normal
    data = tuple(padded[:N, k * N : (k + 1) * N] for k in range(m + 1))
    return TrigNormalForm(N, data)


def reconstruct(t):
    """Coefficient-matrix polynomial of a normal form."""
    N, m = t.N, t.m
    size = N * (m + 1)
    a = np.zeros((size, size), dtype=complex)
    for k in range(m + 1):
        a[:N, k * N : (k + 1) * N] = t.data[k]
        if k:
            a[k * N : (k + 1) * N, :N] = t.data[k].conj().T
    return Poly(a)


def normal_poly(f, N):
    return reconstruct(reduce(f, N)[0])


def residual(f, N, t, q):
    """Max-norm of ``f - reconstruct(t) - q * (z^N zbar^N - 1)``."""
    r = f - reconstruct(t) - q * ideal_generator(N)
    return r.max_abs()


def gram_invariance_check(f, g, N, thetas, atol=1e-10):
    """True iff the orbit Gram matrices of ``f`` and ``g`` agree on ``thetas``."""
    from .gram import orbit_gram

    return all(
        np.max(np.abs(orbit_gram(f, N, th) - orbit_gram(g, N, th))) <= atol for th in thetas
    )
