"""Gram matrices of pairwise polarized evaluations.

For points p_1..p_l the Gram matrix of f is ``G[j, k] = f(p_j, conj(p_k))``.
On the orbit ``xi, w xi, ..., w^(N-1) xi`` (w = e^{2 pi i / N}, |xi| = 1)
every pair is a zero of z^N zbar^N - 1, so a sum of squares modulo that
ideal must have positive semidefinite orbit Gram matrices for all xi.
A negative direction is a refutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .poly import DEFAULT_TOL, powers, require_hermitian

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OrbitConfig:
    N: int
    theta: float

    def __post_init__(self):
        if self.N < 1:
            raise DomainError("modulus N must be >= 1")

    @property
    def omega(self):
        return np.exp(2j * np.pi / self.N)

    @property
    def points(self):
        xi = np.exp(1j * self.theta)
        return np.exp(2j * np.pi * np.arange(self.N) / self.N) * xi


@dataclass
class RefutationWitness:
    """Unit vector ``v`` with ``v^* G v = value < 0`` for the orbit at ``theta``.

    ``points`` is set instead of ``theta`` for witnesses on explicit point
    lists (the trivial ideal).
    """

    theta: float | None
    v: np.ndarray
    value: float
    points: np.ndarray | None = None

    def to_json(self):
        out = {
            "theta": self.theta,
            "v": [[float(c.real), float(c.imag)] for c in self.v],
            "value": float(self.value),
        }
        if self.points is not None:
            out["points"] = [[float(c.real), float(c.imag)] for c in self.points]
        return out

    @classmethod
    def from_json(cls, obj):
        pts = obj.get("points")
        return cls(
            theta=obj.get("theta"),
            v=np.array([complex(a, b) for a, b in obj["v"]]),
            value=float(obj["value"]),
            points=None if pts is None else np.array([complex(a, b) for a, b in pts]),
        )


@dataclass
class GramSweep:
    grid: np.ndarray
    min_eigs: np.ndarray
    scales: np.ndarray
    worst: tuple  # (theta, lambda, eigenvector)
    witness: RefutationWitness | None = None
    refined: bool = False

    @property
    def min_eig(self):
        return float(self.worst[1])

    def summary(self):
        return {
            "samples": int(len(self.grid)),
            "min_eig": float(self.worst[1]),
            "theta_at_min": float(self.worst[0]),
            "refined": self.refined,
        }


def _pairwise(a, points):
    """``G[j, k] = sum a[r, c] conj(p_k)^r p_j^c`` for an arbitrary matrix ``a``."""
    d = a.shape[0] - 1
    vp = powers(points, d)
    return vp @ a.T @ vp.conj().T


def gram_at_points(f, points):
    require_hermitian(f)
    return _pairwise(f.coeffs, np.asarray(points, dtype=complex))


def orbit_gram(f, N, theta):
    return gram_at_points(f, OrbitConfig(N, theta).points)


def _orbit_grams(a, N, thetas):
    """Stack of orbit Gram matrices, shape (len(thetas), N, N)."""
    pts = np.exp(1j * np.asarray(thetas))[:, None] * np.exp(2j * np.pi * np.arange(N) / N)[None, :]
    vp = powers(pts, a.shape[0] - 1)
    return vp @ a.T @ np.conj(vp).transpose(0, 2, 1)


def _fix_phase(v):
    """Unit-normalize and make the largest-magnitude entry real positive."""
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def _min_eig(f, N, theta):
    g = orbit_gram(f, N, theta)
    w, vecs = np.linalg.eigh(g)
    return float(w[0]), vecs[:, 0], 1.0 + float(max(abs(w[0]), abs(w[-1])))


def golden_section(fun, a, b, iters=60):
    """Minimize a unimodal-ish scalar function on [a, b]; returns the argmin."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fun(d)
    return c if fc <= fd else d


def gram_sweep(f, N, samples=1024, tol=DEFAULT_TOL, refine_iters=60):
    """Smallest orbit-Gram eigenvalue on a uniform theta grid.

    When some sample is negative beyond ``tol * (1 + ||G||)`` the worst sample
    is refined by golden-section search over its neighbouring grid cells and
    a witness is emitted if it clears ``-10 * tol * scale``.
    """
    require_hermitian(f)
    if N < 1:
        raise DomainError("modulus N must be >= 1")
    if samples < 2 * f.deg + 2:
        raise DomainError(f"need at least {2 * f.deg + 2} samples for degree {f.deg}")
    grid = 2 * np.pi * np.arange(samples) / samples
    grams = _orbit_grams(f.coeffs, N, grid)
    eigs, vecs = np.linalg.eigh(grams)
    min_eigs = eigs[:, 0]
    scales = 1.0 + np.maximum(np.abs(eigs[:, 0]), np.abs(eigs[:, -1]))
    # ties within rounding go to the smallest theta
    lo = float(np.min(min_eigs))
    s = int(np.flatnonzero(min_eigs <= lo + 1e-12 * scales)[0])
    worst = (float(grid[s]), float(min_eigs[s]), _fix_phase(vecs[s][:, 0]))
    sweep = GramSweep(grid, min_eigs, scales, worst)
    if not np.any(min_eigs < -tol * scales):
        return sweep

    step = 2 * np.pi / samples
    theta = golden_section(lambda t: _min_eig(f, N, t)[0], grid[s] - step, grid[s] + step, refine_iters)
    lam, vec, scale = _min_eig(f, N, theta)
    if lam > worst[1]:
        theta, lam, scale = worst[0], worst[1], float(scales[s])
        vec = worst[2]
    theta = float(np.mod(theta, 2 * np.pi))
    vec = _fix_phase(vec)
    sweep.worst = (theta, float(lam), vec)
    sweep.refined = True
    value = witness_value(f, N, theta, vec)
    if value < -10 * tol * scale:
        sweep.witness = RefutationWitness(theta, vec, value)
    return sweep


def witness_value(f, N, theta, v):
    v = np.asarray(v, dtype=complex)
    return float(np.real(v.conj() @ orbit_gram(f, N, theta) @ v))


def witness_check(f, N, w):
    """Recompute ``v^* Gram v`` for a witness from scratch."""
    v = np.asarray(w.v, dtype=complex)
    if w.points is not None:
        g = gram_at_points(f, w.points)
    else:
        g = orbit_gram(f, N, w.theta)
    return float(np.real(v.conj() @ g @ v))


def point_witness(f, tol=DEFAULT_TOL):
    """Refutation of membership in the plain sum-of-squares cone.

    On the d+1 points e^{2 pi i j/(d+1)} the Gram matrix equals
    V conj(A) V^* with V/sqrt(d+1) unitary, so a negative coefficient
    eigenvalue shows up scaled by d+1.
    """
    require_hermitian(f)
    n = f.deg + 1
    pts = np.exp(2j * np.pi * np.arange(n) / n)
    g = gram_at_points(f, pts)
    w, vecs = np.linalg.eigh(g)
    scale = 1.0 + max(abs(w[0]), abs(w[-1]))
    if w[0] >= -10 * tol * scale:
        return None
    v = _fix_phase(vecs[:, 0])
    return RefutationWitness(None, v, float(np.real(v.conj() @ g @ v)), points=pts)
