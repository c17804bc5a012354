"""Random instance generators and hypothesis strategies shared by the suite."""

import numpy as np
from hypothesis import strategies as st

from hsos.poly import HoloPoly, Poly, hermitian_square
from hsos.reduction import reconstruct, reduce

WORKED = "10 + 2*z + 2*zbar + 10*z*zbar - 2*z^2*zbar - 2*z*zbar^2"
WORKED_MATRIX = np.array([[10, 2, 0], [2, 10, -2], [0, -2, 0]], dtype=complex)
SHIFTED_MATRIX = np.array([[5, 2, 0], [2, 10, -2], [0, -2, 5]], dtype=complex)


def cnormal(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def unit_disc(rng, *shape):
    r = np.sqrt(rng.uniform(size=shape))
    return r * np.exp(2j * np.pi * rng.uniform(size=shape))


def random_poly(rng, deg):
    return Poly(unit_disc(rng, deg + 1, deg + 1))


def random_hermitian(rng, deg):
    a = cnormal(rng, deg + 1, deg + 1)
    return Poly((a + a.conj().T) / 2)


def sum_of_squares(hs):
    acc = Poly.zero()
    for h in hs:
        acc = acc + hermitian_square(HoloPoly(h))
    return acc


def reduced_sos(rng, N, m, count):
    """Normal-form polynomial of count random squares of degree N(m+1)-1."""
    hs = [cnormal(rng, N * (m + 1)) for _ in range(count)]
    f = sum_of_squares(hs)
    return reconstruct(reduce(f, N)[0]), hs


# hypothesis ---------------------------------------------------------------

small_floats = st.floats(-4, 4, allow_nan=False, allow_infinity=False, width=64)
small_complex = st.builds(complex, small_floats, small_floats)


@st.composite
def poly_matrices(draw, max_deg=5, hermitian=False, integer=False):
    d = draw(st.integers(0, max_deg))
    elems = st.integers(-5, 5).map(complex) if integer else small_complex
    flat = draw(st.lists(elems, min_size=(d + 1) ** 2, max_size=(d + 1) ** 2))
    a = np.array(flat, dtype=complex).reshape(d + 1, d + 1)
    if hermitian:
        a = (a + a.conj().T) / 2 if not integer else np.triu(a) + np.triu(a, 1).conj().T
        if integer:
            a[np.diag_indices(d + 1)] = a.diagonal().real
    return a


def polys(max_deg=5, hermitian=False, integer=False):
    return poly_matrices(max_deg, hermitian, integer).map(Poly)


def holo_polys(max_deg=5):
    return st.lists(small_complex, min_size=1, max_size=max_deg + 1).map(HoloPoly)
