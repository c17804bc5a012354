"""Polynomials in z and zbar stored as coefficient matrices.

Entry ``a[j, k]`` is the coefficient of ``zbar**j * z**k``: rows carry the
conjugate exponent, columns the holomorphic one, so that

    f(z, zbar) = psi(z)^* A psi(z),   psi(z) = (1, z, ..., z^d)^T.

Every module in the package inherits this layout.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import convolve2d

from .errors import DomainError, SizeError

MAX_DEGREE = 512
DEFAULT_TOL = 1e-9


def _as_complex_matrix(a):
    a = np.array(a, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise DomainError(f"coefficient array must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("coefficients must be finite")
    return a


def _trim(a):
    """Shrink to the minimal square matrix holding the support."""
    rows = np.flatnonzero(np.any(a != 0, axis=1))
    cols = np.flatnonzero(np.any(a != 0, axis=0))
    if rows.size == 0:
        return np.zeros((1, 1), dtype=complex)
    d = max(rows[-1], cols[-1])
    out = np.zeros((d + 1, d + 1), dtype=complex)
    r, c = min(a.shape[0], d + 1), min(a.shape[1], d + 1)
    out[:r, :c] = a[:r, :c]
    return out


class Poly:
    """Immutable polynomial in ``z`` and ``zbar``."""

    __slots__ = ("_a",)

    def __init__(self, coeffs):
        a = _trim(_as_complex_matrix(coeffs))
        a.flags.writeable = False
        self._a = a

    # constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c):
        return cls([[c]])

    @classmethod
    def monomial(cls, j, k, c=1.0):
        """``c * zbar**j * z**k``."""
        a = np.zeros((max(j, k) + 1,) * 2, dtype=complex)
        a[j, k] = c
        return cls(a)

    @classmethod
    def zero(cls):
        return cls([[0.0]])

    @classmethod
    def from_holomorphic(cls, h):
        h = h.coeffs if isinstance(h, HoloPoly) else np.asarray(h, dtype=complex)
        a = np.zeros((len(h),) * 2, dtype=complex)
        a[0, :] = h
        return cls(a)

    @classmethod
    def from_antiholomorphic(cls, h):
        """The polynomial ``conj(h(z))``."""
        h = h.coeffs if isinstance(h, HoloPoly) else np.asarray(h, dtype=complex)
        a = np.zeros((len(h),) * 2, dtype=complex)
        a[:, 0] = np.conj(h)
        return cls(a)

    # accessors ----------------------------------------------------------

    @property
    def coeffs(self):
        return self._a

    @property
    def deg(self):
        return self._a.shape[0] - 1

    def padded(self, size):
        """Coefficient matrix zero-padded to ``size x size``."""
        if size < self._a.shape[0]:
            raise SizeError(f"cannot pad degree {self.deg} poly to size {size}")
        out = np.zeros((size, size), dtype=complex)
        out[: self._a.shape[0], : self._a.shape[1]] = self._a
        return out

    def is_zero(self):
        return not np.any(self._a)

    def support(self):
        """List of ``(j, k)`` with nonzero coefficient."""
        return [tuple(int(x) for x in p) for p in np.argwhere(self._a != 0)]

    def max_abs(self):
        return float(np.max(np.abs(self._a)))

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        n = max(self._a.shape[0], other._a.shape[0])
        return Poly(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-self._a)

    def __sub__(self, other):
        other = _coerce(other)
        n = max(self._a.shape[0], other._a.shape[0])
        return Poly(self.padded(n) - other.padded(n))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            return mul(self, other)
        return Poly(self._a * complex(other))

    def __rmul__(self, other):
        return Poly(self._a * complex(other))

    def __pow__(self, n):
        return power(self, n)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.all(self._a == other._a))

    __hash__ = None

    def __call__(self, p, q=None):
        """Evaluate at ``z = p``; with ``q`` given, the polarized value f(p, conj q)."""
        return polarized_eval(self, p, p if q is None else q)

    def __repr__(self):
        from .parser import format_poly

        return f"Poly({format_poly(self)!r})"

    # serialization ------------------------------------------------------

    def to_json(self):
        return {"deg": self.deg, "coeffs": matrix_to_json(self._a)}

    @classmethod
    def from_json(cls, obj):
        a = matrix_from_json(obj["coeffs"])
        if a.shape != (obj["deg"] + 1,) * 2:
            raise DomainError("deg does not match coefficient matrix shape")
        return cls(a)


def _coerce(x):
    return x if isinstance(x, Poly) else Poly.constant(x)


class HoloPoly:
    """Holomorphic polynomial ``h(z) = sum_j h[j] z**j``."""

    __slots__ = ("_h",)

    def __init__(self, coeffs):
        h = np.array(coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(h)):
            raise DomainError("coefficients must be finite")
        nz = np.flatnonzero(h)
        h = h[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)
        h.flags.writeable = False
        self._h = h

    @property
    def coeffs(self):
        return self._h

    @property
    def deg(self):
        return len(self._h) - 1

    def __call__(self, z):
        return np.polyval(self._h[::-1], z)

    def __eq__(self, other):
        if not isinstance(other, HoloPoly):
            return NotImplemented
        return self._h.shape == other._h.shape and bool(np.all(self._h == other._h))

    __hash__ = None

    def __repr__(self):
        return f"HoloPoly({self._h.tolist()!r})"

    def to_json(self):
        return [[float(c.real), float(c.imag)] for c in self._h]

    @classmethod
    def from_json(cls, obj):
        return cls([complex(re, im) for re, im in obj])


def matrix_to_json(a):
    return [[[float(c.real), float(c.imag)] for c in row] for row in np.asarray(a)]


def matrix_from_json(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def powers(x, d):
    """``[x**0, ..., x**d]`` along the last axis, for scalar or array ``x``."""
    x = np.asarray(x, dtype=complex)
    out = np.empty(x.shape + (d + 1,), dtype=complex)
    out[..., 0] = 1.0
    for k in range(1, d + 1):
        out[..., k] = out[..., k - 1] * x
    return out


# operations --------------------------------------------------------------


def involution(f):
    """``f*``: conjugate transpose of the coefficient matrix."""
    return Poly(f.coeffs.conj().T)


def is_hermitian(f, rtol=1e-12):
    a = f.coeffs
    return bool(np.max(np.abs(a - a.conj().T)) <= rtol * max(1.0, np.max(np.abs(a))))


def require_hermitian(f, what="polynomial"):
    if not is_hermitian(f):
        raise DomainError(f"{what} is not Hermitian")


def hermitian_part(f):
    """``(f + f*) / 2``; used to wipe rounding asymmetry after arithmetic."""
    a = f.coeffs
    return Poly((a + a.conj().T) / 2)


def mul(f, g, max_degree=MAX_DEGREE):
    d = f.deg + g.deg
    if d > max_degree:
        raise SizeError(f"product degree {d} exceeds cap {max_degree}")
    a, b = f.coeffs, g.coeffs
    if np.count_nonzero(a) < np.count_nonzero(b):
        a, b = b, a
    nz = np.argwhere(b)
    if len(nz) > 32:
        return Poly(convolve2d(a, b))
    # few terms: shift-and-add is much cheaper than a dense 2-D convolution
    out = np.zeros((d + 1, d + 1), dtype=complex)
    n = a.shape[0]
    for j, k in nz:
        out[j : j + n, k : k + n] += b[j, k] * a
    return Poly(out)


def power(f, n, max_degree=MAX_DEGREE):
    if n < 0 or int(n) != n:
        raise DomainError("exponent must be a nonnegative integer")
    if f.deg * n > max_degree:
        raise SizeError(f"power degree {f.deg * n} exceeds cap {max_degree}")
    result, base = Poly.constant(1.0), f
    while n:
        if n & 1:
            result = mul(result, base, max_degree)
        n >>= 1
        if n:
            base = mul(base, base, max_degree)
    return result


def hermitian_square(h):
    """``|h(z)|^2``; entry (j, k) of the result is ``h_k * conj(h_j)``."""
    h = h.coeffs if isinstance(h, HoloPoly) else np.asarray(h, dtype=complex)
    return Poly(np.outer(h.conj(), h))


def polarized_eval(f, p, q):
    """``f(p, conj(q)) = sum a[j, k] conj(q)**j p**k``; broadcasts over arrays."""
    d = f.deg
    p, q = np.broadcast_arrays(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex))
    out = np.einsum("...j,jk,...k->...", powers(np.conj(q), d), f.coeffs, powers(p, d))
    return complex(out) if out.ndim == 0 else out


def min_coeff_eig(f):
    require_hermitian(f)
    a = f.coeffs
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2)[0])


def coeff_matrix_psd(f, tol=DEFAULT_TOL):
    """True iff the coefficient matrix has smallest eigenvalue >= -tol*(1 + ||A||)."""
    require_hermitian(f)
    a = f.coeffs
    eigs = np.linalg.eigvalsh((a + a.conj().T) / 2)
    scale = 1.0 + max(abs(eigs[0]), abs(eigs[-1]))
    return bool(eigs[0] >= -tol * scale)


def circle_integral(f):
    """Normalized integral of f(e^{it}, e^{-it}) over the circle: the trace."""
    return complex(np.trace(f.coeffs))


def ideal_generator(N):
    """``z^N zbar^N - 1``."""
    if N < 1:
        raise DomainError("modulus N must be >= 1")
    a = np.zeros((N + 1, N + 1), dtype=complex)
    a[0, 0] = -1
    a[N, N] = 1
    return Poly(a)
