"""Toeplitz positivity of the finite section is necessary, not sufficient.

For f_c = c + z + zbar and N = 1 the reduced data is (c, 1), whose 2 x 2
section [[c, 1], [1, c]] is PSD for c >= 1, while f_c(-1) = c - 2 is
negative for c < 2.  The script tabulates the section eigenvalue, the
minimum of f_c on the circle and the decision for a range of c.

    python scripts/finite_section_gap.py --cmin 0.5 --cmax 2.5 --steps 9
"""

import argparse

import numpy as np

from hsos import decide
from hsos.poly import Poly
from hsos.reduction import reduce
from hsos.toeplitz import build_toeplitz, section_toeplitz


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cmin", type=float, default=0.5)
    ap.add_argument("--cmax", type=float, default=2.5)
    ap.add_argument("--steps", type=int, default=9)
    ap.add_argument("--long", type=int, default=32, help="block rows of the long section")
    args = ap.parse_args(argv)

    print(f"{'c':>6} {'section':>10} {'long sect':>10} {'min on circle':>14}  verdict")
    for c in np.linspace(args.cmin, args.cmax, args.steps):
        f = Poly([[c, 1], [1, 0]])
        t, _ = reduce(f, 1)
        lam = build_toeplitz(t).min_eig()
        lam_long = float(np.linalg.eigvalsh(section_toeplitz(t, args.long))[0])
        d = decide(f, 1)
        print(f"{c:6.3f} {lam:10.4f} {lam_long:10.4f} {c - 2:14.4f}  {d.verdict.value}")


if __name__ == "__main__":
    main()
