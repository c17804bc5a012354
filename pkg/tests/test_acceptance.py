"""The ten end-to-end acceptance criteria, at their stated tolerances.

Each ``test_criterion_<k>`` prints a one-line PASS/FAIL in the terminal
summary (see conftest.py).
"""

import subprocess
import sys

import numpy as np
import pytest

from hsos.certify import Verdict, decide, verify_certificate
from hsos.functional import fn_diagonal, fn_quadrature, matrix_product_via_fn
from hsos.gram import gram_at_points, gram_sweep, orbit_gram, witness_check
from hsos.parser import format_poly, parse
from hsos.poly import HoloPoly, Poly, hermitian_square, ideal_generator
from hsos.reduction import TrigNormalForm, reconstruct, reduce
from hsos.toeplitz import build_toeplitz, recover_q, scalar_toeplitz_quadratic, trace_residual

from helpers import SHIFTED_MATRIX, WORKED, WORKED_MATRIX, cnormal, random_hermitian, random_poly, reduced_sos


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "hsos.cli", *args], capture_output=True, text=True, timeout=60
    )


def test_criterion_1_counterexample():
    f = parse("(z + zbar)^2")
    assert np.array_equal(f.coeffs, np.array([[0, 0, 1], [0, 2, 0], [1, 0, 0]], dtype=complex))
    g = gram_at_points(f, [0, 1])
    assert np.array_equal(g, np.array([[0, 1], [1, 4]], dtype=complex))
    assert abs(np.linalg.det(g) - (-1)) <= 1e-12
    proc = run_cli("check", "(z + zbar)^2", "--n", "0")
    assert proc.returncode == 1, proc.stderr
    assert "non-member" in proc.stdout


def test_criterion_2_worked_example():
    f = parse(WORKED)
    assert np.array_equal(f.coeffs, WORKED_MATRIX)
    # (i) the coefficient matrix itself is not positive
    assert np.linalg.eigvalsh(f.coeffs)[0] < -0.3
    # (ii) orbit Gram matrices in closed form
    for theta in 2 * np.pi * np.arange(64) / 64:
        g = orbit_gram(f, 2, theta)
        s = np.sin(theta)
        expect = np.array([[20, 8j * s], [-8j * s, 20]])
        assert np.max(np.abs(g - expect)) <= 1e-12
        assert abs(np.linalg.det(g) - (400 - 64 * s**2)) <= 1e-10
    sweep = gram_sweep(f, 2, samples=1024)
    assert abs(sweep.min_eig - 12) <= 1e-9
    assert sweep.worst[0] == pytest.approx(np.pi / 2, abs=1e-12)
    # (iii) membership with a checkable certificate
    d = decide(f, 2)
    assert d.verdict is Verdict.MEMBER
    assert verify_certificate(f, 2, d.certificate) <= 1e-8
    shifted = Poly(SHIFTED_MATRIX)
    assert shifted == f + 5 * ideal_generator(2)
    assert np.linalg.eigvalsh(SHIFTED_MATRIX)[0] > 0


def test_criterion_3_fn_routes_agree():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(500):
        f = random_poly(rng, int(rng.integers(0, 11)))
        N = int(rng.integers(1, 5))
        gap = abs(fn_diagonal(f, N) - fn_quadrature(f, N))
        worst = max(worst, gap / (1 + np.sum(np.abs(f.coeffs))))
    assert worst <= 1e-10


def test_criterion_4_matrix_product_identity():
    rng = np.random.default_rng(4)
    for _ in range(200):
        N = int(rng.integers(1, 5))
        s, t = (int(x) for x in rng.integers(0, 4, size=2))
        v, w, A = cnormal(rng, N), cnormal(rng, N), cnormal(rng, N, N)
        got = matrix_product_via_fn(v, A, w, s, t)
        expect = (v.conj() @ A @ w) if s == t else 0
        bound = 1e-9 * (1 + np.linalg.norm(A, 2) * np.linalg.norm(v) * np.linalg.norm(w))
        assert abs(got - expect) <= bound


def test_criterion_5_scalar_fejer_riesz():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        h = cnormal(rng, int(rng.integers(1, 10)))
        f = reconstruct(reduce(hermitian_square(HoloPoly(h)), 1)[0])
        d = decide(f, 1)
        assert d.verdict is Verdict.MEMBER
        t = reduce(f, 1)[0]
        for k in range(t.m + 1):
            # a_k = sum_i sum_j h'_j conj(h'_{j-k}) over the emitted squares
            ak = sum(np.sum(hp.coeffs[k:] * np.conj(hp.coeffs[: len(hp.coeffs) - k]))
                     for hp in d.certificate.squares if len(hp.coeffs) > k)
            worst = max(worst, abs(ak - t.data[k][0, 0]))
    assert worst <= 1e-9

    theta = 2 * np.pi * np.arange(64) / 64
    zeta = np.exp(1j * theta)
    for _ in range(50):
        h = cnormal(rng, int(rng.integers(1, 6)))
        f = reconstruct(reduce(hermitian_square(HoloPoly(h)), 1)[0])
        t = reduce(f, 1)[0]
        w = cnormal(rng, t.m + 1)
        quad = np.mean(np.abs(np.polyval(w[::-1], zeta.conj())) ** 2 * f(zeta))
        assert abs(scalar_toeplitz_quadratic(t, w) - quad) <= 1e-10


def test_criterion_6_pipeline_round_trip():
    rng = np.random.default_rng(6)
    for _ in range(100):
        N = int(rng.integers(1, 4))
        m = int(rng.integers(0, 5))
        f, _ = reduced_sos(rng, N, m, int(rng.integers(1, 4)))
        d = decide(f, N)
        assert d.verdict is Verdict.MEMBER, d.note
        t = reduce(f, N)[0]
        assert trace_residual(recover_q(t).matrix, t) <= 1e-8
        assert verify_certificate(f, N, d.certificate) <= 1e-8
        T = build_toeplitz(t)
        assert T.min_eig() >= -1e-9 * T.scale()
        sweep = gram_sweep(f, N, samples=1024)
        assert np.all(sweep.min_eigs >= -1e-8 * sweep.scales)


def test_criterion_7_negative_toeplitz_refuted():
    rng = np.random.default_rng(7)
    for _ in range(100):
        N = int(rng.integers(1, 5))
        m = int(rng.integers(0, 5))
        data = [cnormal(rng, N, N) for _ in range(m + 1)]
        data[0] = (data[0] + data[0].conj().T) / 2
        lam = build_toeplitz(TrigNormalForm(N, tuple(data))).min_eig()
        data[0] = data[0] - (lam + 0.1 + rng.uniform()) * np.eye(N)
        t = TrigNormalForm(N, tuple(data))
        assert build_toeplitz(t).min_eig() <= -0.1
        f = reconstruct(t)
        d = decide(f, N)
        assert d.verdict is Verdict.NON_MEMBER
        assert witness_check(f, N, d.witness) <= -1e-3


def test_criterion_8_reduction_exact():
    rng = np.random.default_rng(8)
    for _ in range(200):
        f = random_hermitian(rng, int(rng.integers(0, 11)))
        N = int(rng.integers(1, 5))
        t, q = reduce(f, N)
        normal = reconstruct(t)
        r = f - normal - q * ideal_generator(N)
        assert r.max_abs() <= 1e-12 * (1 + f.max_abs())
        assert all(min(a, b) < N for a, b in normal.support())


def test_criterion_9_parser_round_trip():
    rng = np.random.default_rng(9)
    for _ in range(500):
        d = int(rng.integers(0, 9))
        a = cnormal(rng, d + 1, d + 1)
        # sprinkle exact zeros, real entries and integers
        a[rng.uniform(size=a.shape) < 0.2] = 0
        real = rng.uniform(size=a.shape) < 0.2
        a[real] = a[real].real
        ints = rng.uniform(size=a.shape) < 0.1
        a[ints] = np.round(a[ints].real * 5)
        f = Poly(a)
        assert parse(format_poly(f)) == f


def test_criterion_10_certify_deterministic():
    first = run_cli("certify", WORKED, "--n", "2")
    second = run_cli("certify", WORKED, "--n", "2")
    assert first.returncode == 0, first.stderr
    assert first.stdout.encode() == second.stdout.encode()
    assert first.stdout.strip().startswith("{")
