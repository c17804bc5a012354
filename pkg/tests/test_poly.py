import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hsos.errors import DomainError, SizeError
from hsos.poly import (
    HoloPoly,
    Poly,
    circle_integral,
    coeff_matrix_psd,
    hermitian_square,
    ideal_generator,
    involution,
    is_hermitian,
    mul,
    polarized_eval,
)

from helpers import SHIFTED_MATRIX, WORKED_MATRIX, holo_polys, polys

Z = Poly.monomial(0, 1)
ZBAR = Poly.monomial(1, 0)
SQ = np.array([[0, 0, 1], [0, 2, 0], [1, 0, 0]], dtype=complex)


def test_involution_examples():
    assert involution(Z) == ZBAR
    assert involution(Poly(SQ)) == Poly(SQ)
    assert involution(Poly.monomial(1, 1, 1j)) == Poly.monomial(1, 1, -1j)


def test_mul_examples():
    assert mul(ZBAR, Z) == Poly.monomial(1, 1)
    assert mul(Z + ZBAR, Z + ZBAR) == Poly(SQ)
    g = ideal_generator(2)
    assert mul(g, g) == Poly.monomial(4, 4) - 2 * Poly.monomial(2, 2) + 1


def test_mul_degree_cap():
    with pytest.raises(SizeError):
        mul(Poly.monomial(0, 300), Poly.monomial(0, 300))


def test_hermitian_square_examples():
    assert hermitian_square(HoloPoly([1])) == Poly.constant(1)
    assert hermitian_square(HoloPoly([1, 1])) == 1 + Z + ZBAR + Poly.monomial(1, 1)
    h = np.array([1 + 2j, -1j, 3])
    a = hermitian_square(HoloPoly(h)).coeffs
    for j in range(3):
        for k in range(3):
            assert a[j, k] == h[k] * np.conj(h[j])


def test_polarized_eval_examples():
    f = Poly(SQ)
    assert polarized_eval(f, 0, 1) == 1
    assert polarized_eval(f, 1, 1) == 4
    assert polarized_eval(Poly.monomial(1, 1), 2, 3j) == pytest.approx(-6j)


def test_polarized_eval_broadcasts():
    f = Poly(WORKED_MATRIX)
    pts = np.exp(1j * np.linspace(0, 3, 7))
    np.testing.assert_allclose(polarized_eval(f, pts, pts), [f(p) for p in pts])


def test_coeff_matrix_psd_examples():
    assert not coeff_matrix_psd(Poly(SQ))
    assert not coeff_matrix_psd(Poly(WORKED_MATRIX))
    assert coeff_matrix_psd(Poly(SHIFTED_MATRIX))
    with pytest.raises(DomainError):
        coeff_matrix_psd(Z)


def test_circle_integral_examples():
    assert circle_integral(Poly.constant(1)) == 1
    assert circle_integral(Z) == 0
    assert circle_integral(Poly(SQ)) == 2


def test_trimming_and_validation():
    assert Poly(np.zeros((4, 4))).deg == 0
    assert Poly([[1, 0, 0], [0, 0, 0], [0, 0, 0]]).deg == 0
    assert Poly([[0, 0], [1, 0]]).deg == 1
    with pytest.raises(DomainError):
        Poly([[np.nan]])
    assert HoloPoly([1, 2, 0, 0]).deg == 1


def test_json_round_trip():
    f = Poly(WORKED_MATRIX * (1 + 0.5j))
    assert Poly.from_json(f.to_json()) == f
    h = HoloPoly([1, 2j, -3])
    assert HoloPoly.from_json(h.to_json()) == h


@given(polys(6))
def test_involution_is_an_involution(f):
    assert involution(involution(f)) == f


@given(polys(5, hermitian=True), st.integers(0, 4), st.integers(1, 4))
def test_polarization_detects_non_hermitian(f, j, k):
    g = f + Poly.monomial(j, (j + k) % 6, 1j)
    rng = np.random.default_rng(1)
    p, q = rng.normal(size=(2, 100)) + 1j * rng.normal(size=(2, 100))
    a, b = polarized_eval(g, p, q), np.conj(polarized_eval(g, q, p))
    assert not is_hermitian(g)
    assert np.max(np.abs(a - b)) > 1e-12 * (1 + np.abs(a).max())


@given(polys(5, hermitian=True))
def test_hermitian_polys_are_symmetric(f):
    rng = np.random.default_rng(0)
    p, q = rng.normal(size=(2, 20)) + 1j * rng.normal(size=(2, 20))
    a, b = polarized_eval(f, p, q), np.conj(polarized_eval(f, q, p))
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12 * (1 + np.abs(a).max()))


@given(polys(4, integer=True), polys(4, integer=True), polys(4, integer=True))
def test_mul_commutative_associative_exact(f, g, h):
    assert mul(f, g) == mul(g, f)
    assert mul(mul(f, g), h) == mul(f, mul(g, h))


@given(holo_polys(6), st.floats(0, 2 * np.pi))
def test_square_is_modulus_on_circle(h, theta):
    p = np.exp(1j * theta)
    val = polarized_eval(hermitian_square(h), p, p)
    assert val.real >= 0
    assert abs(val - abs(h(p)) ** 2) <= 1e-12 * (1 + abs(h(p)) ** 2)


@given(polys(5))
def test_integral_of_g_gstar_nonnegative(g):
    val = circle_integral(mul(g, involution(g)))
    assert abs(val.imag) <= 1e-9 * (1 + abs(val))
    assert val.real >= -1e-9


@given(holo_polys(5), holo_polys(5))
def test_sum_of_two_squares_psd(h, g):
    assert coeff_matrix_psd(hermitian_square(h) + hermitian_square(g))


@given(polys(6))
def test_circle_integral_matches_quadrature(f):
    n = 2 * f.deg + 2
    z = np.exp(2j * np.pi * np.arange(n) / n)
    quad = np.mean(polarized_eval(f, z, z))
    assert abs(circle_integral(f) - quad) <= 1e-10 * (1 + np.sum(np.abs(f.coeffs)))
