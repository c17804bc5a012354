"""Random round trips through the decision pipeline.

Members are sums of random squares reduced mod (z^N zbar^N - 1);
non-members are random data shifted so the Toeplitz section has a
negative eigenvalue.  Prints verdict counts, residual extremes and timing.

    python scripts/pipeline_benchmark.py --count 200 --seed 1
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from hsos import Verdict, decide, verify_certificate, witness_check
from hsos.poly import HoloPoly, Poly, hermitian_square
from hsos.reduction import TrigNormalForm, reconstruct, reduce
from hsos.toeplitz import build_toeplitz


@dataclass
class BenchConfig:
    count: int = 100
    seed: int = 0
    max_n: int = 3
    max_m: int = 4
    max_squares: int = 3


def cnormal(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def member(rng, cfg):
    N = int(rng.integers(1, cfg.max_n + 1))
    m = int(rng.integers(0, cfg.max_m + 1))
    f = Poly.zero()
    for _ in range(int(rng.integers(1, cfg.max_squares + 1))):
        f = f + hermitian_square(HoloPoly(cnormal(rng, N * (m + 1))))
    return reconstruct(reduce(f, N)[0]), N


def non_member(rng, cfg):
    N = int(rng.integers(1, cfg.max_n + 1))
    m = int(rng.integers(0, cfg.max_m + 1))
    data = [cnormal(rng, N, N) for _ in range(m + 1)]
    data[0] = data[0] + data[0].conj().T
    lam = build_toeplitz(TrigNormalForm(N, tuple(data))).min_eig()
    data[0] = data[0] - (lam + 0.1) * np.eye(N)
    return reconstruct(TrigNormalForm(N, tuple(data))), N


def run(cfg):
    rng = np.random.default_rng(cfg.seed)
    for label, gen, want in (("members", member, Verdict.MEMBER), ("non-members", non_member, Verdict.NON_MEMBER)):
        counts, checks, times = {}, [], []
        for _ in range(cfg.count):
            f, N = gen(rng, cfg)
            t0 = time.perf_counter()
            d = decide(f, N)
            times.append(time.perf_counter() - t0)
            counts[d.verdict.value] = counts.get(d.verdict.value, 0) + 1
            if d.verdict is Verdict.MEMBER:
                checks.append(verify_certificate(f, N, d.certificate))
            elif d.verdict is Verdict.NON_MEMBER:
                checks.append(-witness_check(f, N, d.witness))
        ok = counts.get(want.value, 0)
        if want is Verdict.MEMBER:
            stat, worst = "max certificate residual", max(checks, default=float("nan"))
        else:
            stat, worst = "weakest witness margin", min(checks, default=float("nan"))
        print(f"{label}: {ok}/{cfg.count} {want.value}, verdicts {counts}, {stat} {worst:.2e}, "
              f"median {1e3 * np.median(times):.1f} ms, max {1e3 * max(times):.1f} ms")


def main(argv=None):
    ap = argparse.ArgumentParser(description="random decision-pipeline round trips")
    for name, default in vars(BenchConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    run(BenchConfig(**vars(ap.parse_args(argv))))


if __name__ == "__main__":
    main()
