"""Block Toeplitz forms and the trace parametrization.

A polynomial whose normal form mod (z^N zbar^N - 1) has data (A_0, ..., A_m)
is congruent to a sum of squares exactly when some positive semidefinite
block matrix Q = [Q_jl] (N x N blocks, j, l = 0..m) has block diagonals
summing to the data:

    A_k = sum_{j=k}^{m} Q_{j-k, j},   k = 0..m.

``recover_q`` finds such a Q and ``factor_to_squares`` turns it into
explicit holomorphic squares.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NoConvergenceError, NotPsdError
from .poly import DEFAULT_TOL, HoloPoly, matrix_to_json

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BlockToeplitz:
    N: int
    m: int
    matrix: np.ndarray

    def min_eig(self):
        return float(np.linalg.eigvalsh(self.matrix)[0])

    def scale(self):
        return 1.0 + float(np.linalg.norm(self.matrix, 2))


@dataclass(eq=False)
class PositiveBlockQ:
    N: int
    m: int
    matrix: np.ndarray
    residual: float = 0.0
    iterations: int = 0
    history: list = field(default_factory=list)  # (iteration, best residual so far)

    def to_json(self):
        return {"N": self.N, "m": self.m, "Q": matrix_to_json(self.matrix), "residual": self.residual}


@dataclass
class RecoverOptions:
    feas_tol: float = 1e-8
    max_iters: int = 20000
    tol: float = DEFAULT_TOL
    check_every: int = 100
    # Dykstra retries the factor polish once the residual drops below this (relative)
    polish_start: float = 1e-2
    polish_iters: int = 60
    # the polish seed is factor(X + seed_shift * scale * I) so every column is live
    seed_shift: float = 1e-3
    # null eigenvalues of the long Toeplitz section, relative to its norm
    kernel_tol: float = 1e-11


def build_toeplitz(t):
    N, m = t.N, t.m
    size = N * (m + 1)
    T = np.zeros((size, size), dtype=complex)
    for j in range(m + 1):
        for l in range(m + 1):
            T[j * N : (j + 1) * N, l * N : (l + 1) * N] = t.block(l - j)
    return BlockToeplitz(N, m, T)


def elementary_toeplitz(k, N, m):
    """Identity blocks on block diagonal ``k`` (positive k to the right)."""
    if abs(k) > m:
        raise DomainError(f"|k| = {abs(k)} exceeds block degree {m}")
    return np.kron(np.eye(m + 1, k=k), np.eye(N))


def _blocks(Q, N):
    n = Q.shape[0] // N
    return Q.reshape(n, N, n, N)


def block_trace(Q, k, N):
    """Trace[T_{-k} Q] = sum_j Q_{j-k, j}: the sum of block diagonal ``k``."""
    Q = np.asarray(Q)
    if Q.shape[0] % N:
        raise DomainError("matrix size is not a multiple of N")
    B = _blocks(Q, N)
    n = B.shape[0]
    if abs(k) >= n:
        raise DomainError(f"|k| = {abs(k)} exceeds block degree {n - 1}")
    return sum(B[j - k, :, j, :] for j in range(max(k, 0), min(n, n + k)))


def block_traces(Q, N, m):
    return [block_trace(Q, k, N) for k in range(m + 1)]


def trace_residual(Q, t):
    return max(float(np.max(np.abs(block_trace(Q, k, t.N) - t.data[k]))) for k in range(t.m + 1))


def lift(t):
    """Block (j, l) = A_{l-j} / (m + 1 - |l - j|); its block traces are the data."""
    N, m = t.N, t.m
    size = N * (m + 1)
    Q = np.zeros((size, size), dtype=complex)
    for j in range(m + 1):
        for l in range(m + 1):
            Q[j * N : (j + 1) * N, l * N : (l + 1) * N] = t.block(l - j) / (m + 1 - abs(l - j))
    return Q


def _project_psd(X):
    w, U = np.linalg.eigh(X)
    return (U * np.maximum(w, 0.0)) @ U.conj().T


def _project_affine(X, t):
    N, m = t.N, t.m
    X = X.copy()
    B = _blocks(X, N)
    for k in range(m + 1):
        D = (t.data[k] - block_trace(X, k, N)) / (m + 1 - k)
        for j in range(k, m + 1):
            B[j - k, :, j, :] += D
            if k:
                B[j, :, j - k, :] += D.conj().T
    return X


def _jacobian(W, t):
    """Real Jacobian of W -> (block traces of W W^*) at W, rows [Re; Im]."""
    N, K = t.N, t.m + 1
    r = W.shape[1]
    Wb = W.reshape(K, N, r)
    eye = np.eye(N)
    J1 = np.zeros((K, N, N, K, N, r), dtype=complex)
    J2 = np.zeros_like(J1)
    for k in range(K):
        for p in range(K):
            if p + k < K:
                J1[k, :, :, p, :, :] = np.einsum("ax,bc->abxc", eye, Wb[p + k].conj())
            if p >= k:
                J2[k, :, :, p, :, :] = np.einsum("ac,bx->abxc", Wb[p - k], eye)
    rows, cols = K * N * N, K * N * r
    Jx = (J1 + J2).reshape(rows, cols)
    Jy = (1j * (J1 - J2)).reshape(rows, cols)
    J = np.block([[Jx.real, Jy.real], [Jx.imag, Jy.imag]])
    return J[_row_mask(N, K)]


def _row_mask(N, K):
    """Independent real equations: the k = 0 block is Hermitian, so keep
    Re on and above its diagonal and Im strictly above."""
    upper = np.triu(np.ones((N, N), dtype=bool))
    re = np.ones((K, N, N), dtype=bool)
    im = np.ones((K, N, N), dtype=bool)
    re[0] = upper
    im[0] = np.triu(upper, 1)
    return np.concatenate([re.ravel(), im.ravel()])


def _trace_map(W, t):
    N, K = t.N, t.m + 1
    Wb = W.reshape(K, N, W.shape[1])
    return np.stack(
        [sum(Wb[j - k] @ Wb[j].conj().T for j in range(k, K)) - t.data[k] for k in range(K)]
    )


def _levenberg_marquardt(W, t, iters, target, V=None):
    """Solve sum_j W_{j-k} W_j^* = A_k for the factor W of Q = W W^*.

    Damped Gauss-Newton on the real-linearized system with a 2-norm merit;
    the step J^T (J J^T + mu I)^{-1} F lives in the small constraint space.
    With a basis ``V`` the factor is ``V @ W`` and only ``W`` moves.
    Returns the (reduced) factor with the smallest max-abs residual seen.
    """
    V = np.eye(W.shape[0]) if V is None else V
    r = W.shape[1]
    kv = np.kron(V, np.eye(r))
    chain = np.block([[kv.real, -kv.imag], [kv.imag, kv.real]])
    mask = _row_mask(t.N, t.m + 1)
    F = _trace_map(V @ W, t)
    merit = float(np.sum(np.abs(F) ** 2))
    best_W, best = W, float(np.max(np.abs(F)))
    mu = None
    for _ in range(iters):
        if best <= target:
            break
        J = _jacobian(V @ W, t) @ chain
        Fv = F.reshape(-1)
        rvec = np.concatenate([Fv.real, Fv.imag])[mask]
        JJ = J @ J.T
        if mu is None:
            mu = 1e-6 * float(np.trace(JJ)) / len(JJ) + 1e-300
        for _ in range(30):
            y = np.linalg.lstsq(JJ + mu * np.eye(len(JJ)), rvec, rcond=None)[0]
            step = -(J.T @ y)
            cols = step.size // 2
            W_try = W + (step[:cols] + 1j * step[cols:]).reshape(W.shape)
            F_try = _trace_map(V @ W_try, t)
            merit_try = float(np.sum(np.abs(F_try) ** 2))
            if merit_try < merit:
                mu = max(mu / 3, 1e-15)
                break
            mu *= 4
        else:
            break
        W, F, merit = W_try, F_try, merit_try
        cur = float(np.max(np.abs(F)))
        if cur < best:
            best_W, best = W, cur
    return best_W, best


def _factor(X):
    w, U = np.linalg.eigh(X)
    return U * np.sqrt(np.maximum(w, 0.0))


def section_toeplitz(t, M):
    """Block Toeplitz section with M + 1 block rows (data zero beyond m)."""
    N = t.N
    T = np.zeros((N * (M + 1), N * (M + 1)), dtype=complex)
    for a in range(M + 1):
        for b in range(M + 1):
            if abs(b - a) <= t.m:
                T[a * N : (a + 1) * N, b * N : (b + 1) * N] = t.block(b - a)
    return T


def forced_kernel(t, M=None, kernel_tol=1e-11):
    """Orthonormal basis of vectors every feasible Q must annihilate.

    A null vector y of a long Toeplitz section is a polynomial vector
    y(zeta) = sum_s y_{M-s} zeta^s with A(zeta) y(zeta) = 0 on the circle.
    Writing A(zeta) = P(zeta)^* P(zeta) for Q = W W^*, P(zeta) y(zeta) = 0
    forces W^* Y_s = 0 for every shifted stack Y_s of its coefficients.
    """
    N, m = t.N, t.m
    n = N * (m + 1)
    if M is None:
        M = max(m, min(2 * m * max(N - 1, 1), 400 // N))
    T = section_toeplitz(t, M)
    w, U = np.linalg.eigh(T)
    null = U[:, w <= kernel_tol * (1.0 + np.abs(w).max())]
    if null.shape[1] == 0:
        return np.zeros((n, 0), dtype=complex)
    stacks = []
    for c in range(null.shape[1]):
        coef = null[:, c].reshape(M + 1, N)[::-1]
        padded = np.zeros((M + 1 + 2 * m, N), dtype=complex)
        padded[m : m + M + 1] = coef
        for s in range(m + M + 1):
            # block j of Y_s is coef[s - j]
            stacks.append(padded[s : s + m + 1][::-1].ravel())
    u, sv, _ = np.linalg.svd(np.array(stacks).T, full_matrices=False)
    rank = int(np.sum(sv > 1e-8 * sv[0]))
    return u[:, :rank]


def _complement(K, n):
    if K.shape[1] == 0:
        return np.eye(n, dtype=complex)
    u, _, _ = np.linalg.svd(np.eye(n) - K @ K.conj().T)
    return u[:, : n - K.shape[1]]


def recover_q(t, opts=None):
    """Positive block matrix Q whose block diagonals sum to the data of ``t``.

    Vectors that every feasible Q must annihilate are read off a long
    Toeplitz section and factored out; on the remaining face a damped
    Gauss-Newton solve for a factor Q = V W W^* V^* usually lands in a few
    steps.  Otherwise Dykstra's alternating projections between the PSD
    cone and the affine trace constraints run from the lifted data, with
    the factor polish retried as the iterate approaches feasibility.
    """
    opts = opts or RecoverOptions()
    N, m = t.N, t.m
    T = build_toeplitz(t)
    scale = T.scale()
    lam_min = T.min_eig()
    if lam_min < -opts.tol * scale:
        raise NotPsdError(f"block Toeplitz matrix is not positive (min eig {lam_min:.3e})", lam_min)

    if m == 0:
        Q = (t.data[0] + t.data[0].conj().T) / 2
        return PositiveBlockQ(N, m, Q, residual=0.0)

    n = N * (m + 1)
    V = _complement(forced_kernel(t, kernel_tol=opts.kernel_tol), n)
    x = lift(t)
    history = []

    def polish(X, it):
        Xr = V.conj().T @ _project_psd(X) @ V
        seed = _factor(Xr + opts.seed_shift * scale * np.eye(len(Xr)))
        W, _ = _levenberg_marquardt(seed, t, opts.polish_iters, 1e-14 * scale, V)
        Q = _hermitize(V @ W @ (V @ W).conj().T)
        return Q, trace_residual(Q, t)

    Q, res = polish(x, 0)
    history.append((0, res))
    if res <= opts.feas_tol:
        return PositiveBlockQ(N, m, Q, res, 0, history)
    best_res = res

    p = np.zeros_like(x)
    q = np.zeros_like(x)
    for it in range(1, opts.max_iters + 1):
        y = _project_psd(x + p)
        p = x + p - y
        x_new = _project_affine(y + q, t)
        q = y + q - x_new
        x = x_new
        if it % opts.check_every and it != opts.max_iters:
            continue
        res = trace_residual(y, t)
        if res < best_res:
            best_res = res
        if res <= opts.feas_tol:
            history.append((it, best_res))
            return PositiveBlockQ(N, m, _hermitize(y), res, it, history)
        if res <= opts.polish_start * scale:
            Q, pres = polish(y, it)
            best_res = min(best_res, pres)
            if pres <= opts.feas_tol:
                history.append((it, best_res))
                log.debug("polished after %d dykstra iterations: residual %.2e", it, pres)
                return PositiveBlockQ(N, m, Q, pres, it, history)
        history.append((it, best_res))
    raise NoConvergenceError(
        f"no feasible Q after {opts.max_iters} iterations (best residual {best_res:.3e})", best_res
    )


def _hermitize(Q):
    return (Q + Q.conj().T) / 2


def factor_to_squares(Q, rank_tol=1e-12):
    """Holomorphic squares h_i with sum |h_i|^2 having coefficient matrix Q.

    Q = G^* G with G = Lambda^{1/2} U^*; row i of G holds the coefficients of
    h_i over 1, z, ..., z^{N(m+1)-1}.  Negative eigenvalues are clipped and
    rows of norm <= ``rank_tol`` dropped.
    """
    M = Q.matrix if isinstance(Q, PositiveBlockQ) else np.asarray(Q, dtype=complex)
    w, U = np.linalg.eigh(_hermitize(M))
    order = np.argsort(-w, kind="stable")
    squares = []
    for i in order:
        row = np.sqrt(max(w[i], 0.0)) * U[:, i].conj()
        if np.linalg.norm(row) <= rank_tol:
            continue
        k = int(np.argmax(np.abs(row)))
        row = row * (abs(row[k]) / row[k])
        squares.append(HoloPoly(row))
    return squares


def scalar_toeplitz_quadratic(t, w):
    """``w^* Toep(a_0, ..., a_m) w`` for a scalar (N = 1) normal form.

    Equals the circle average of |w(e^{-i theta})|^2 f(e^{i theta}) with
    w(z) = sum_j w_j z^j.
    """
    if t.N != 1:
        raise DomainError("scalar quadratic form needs N = 1")
    w = np.asarray(w, dtype=complex).ravel()
    if len(w) != t.m + 1:
        raise DomainError(f"vector length {len(w)} != m + 1 = {t.m + 1}")
    return complex(w.conj() @ build_toeplitz(t).matrix @ w)
