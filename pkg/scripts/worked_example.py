"""Reproduce the N = 2 worked example end to end.

    python scripts/worked_example.py
"""

import numpy as np

from hsos import decide, gram_sweep, orbit_gram, parse, verify_certificate
from hsos.parser import format_poly
from hsos.poly import Poly, ideal_generator
from hsos.reduction import reduce
from hsos.toeplitz import build_toeplitz

EXPR = "10 + 2*z + 2*zbar + 10*z*zbar - 2*z^2*zbar - 2*z*zbar^2"


def main():
    f = parse(EXPR)
    print("f =", format_poly(f))
    print("coefficient matrix min eig:", np.linalg.eigvalsh(f.coeffs)[0])

    worst = 0.0
    for theta in np.linspace(0, 2 * np.pi, 64, endpoint=False):
        s = np.sin(theta)
        closed = np.array([[20, 8j * s], [-8j * s, 20]])
        worst = max(worst, np.abs(orbit_gram(f, 2, theta) - closed).max())
    print(f"orbit Gram vs closed form [[20, 8i sin], [-8i sin, 20]]: max error {worst:.2e}")

    sweep = gram_sweep(f, 2, samples=1024)
    print(f"sweep: min eig {sweep.min_eig:.12g} at theta {sweep.worst[0]:.6f}")

    t, _ = reduce(f, 2)
    T = build_toeplitz(t)
    print("block Toeplitz matrix:\n", T.matrix.real)
    print("Toeplitz min eig:", T.min_eig())

    d = decide(f, 2)
    print("verdict:", d.verdict.value)
    print("squares:", len(d.certificate.squares))
    print("multiplier:", format_poly(d.certificate.multiplier))
    print(f"certificate residual: {verify_certificate(f, 2, d.certificate):.2e}")

    shifted = f + 5 * ideal_generator(2)
    print("f + 5 (z^2 zbar^2 - 1) coefficient matrix:\n", shifted.coeffs.real)
    print("its min eig:", np.linalg.eigvalsh(shifted.coeffs)[0])
    assert shifted == Poly([[5, 2, 0], [2, 10, -2], [0, -2, 5]])


if __name__ == "__main__":
    main()
