"""Membership decision for Hermitian sums of squares modulo (z^N zbar^N - 1).

The finite block Toeplitz section of the reduced data decides the easy
half: a negative eigenvalue there always shows up as a negative orbit Gram
form, so the verdict is NonMember with a witness.  Toeplitz positivity is
necessary but not sufficient (f = 1 + z + zbar with N = 1 has a positive
2 x 2 section yet f(-1) = -1), so a positive section is followed by a Gram
sweep and an explicit certificate; Member is only reported with squares
and a multiplier that survive ``verify_certificate``.

With ``N = 0`` the ideal is (0) and membership is the coefficient-matrix
test.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError, InconsistentError, NoConvergenceError, NotPsdError
from .gram import RefutationWitness, gram_sweep, point_witness, witness_check
from .poly import DEFAULT_TOL, HoloPoly, Poly, hermitian_square, ideal_generator, require_hermitian
from .reduction import reduce
from .toeplitz import RecoverOptions, build_toeplitz, factor_to_squares, recover_q

log = logging.getLogger(__name__)


class Verdict(str, Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    BOUNDARY = "boundary"


EXIT_CODES = {Verdict.MEMBER: 0, Verdict.NON_MEMBER: 1, Verdict.BOUNDARY: 2}


def default_tol():
    """DEFAULT_TOL, or the value of the HSOS_TOL environment variable."""
    raw = os.environ.get("HSOS_TOL")
    if not raw:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        tol = float("nan")
    if not np.isfinite(tol) or tol <= 0:
        raise DomainError(f"HSOS_TOL must be a positive number, got {raw!r}")
    return tol


@dataclass
class DecideOptions:
    tol: float = field(default_factory=default_tol)
    cert_tol: float = 1e-8
    samples: int = 1024
    # sample-count doublings tried when a negative section has no witness yet
    max_refine: int = 4
    recover: RecoverOptions = field(default_factory=RecoverOptions)


@dataclass
class SosCertificate:
    """Squares ``h_i`` and multiplier ``q`` with f = sum |h_i|^2 + q (z^N zbar^N - 1)."""

    N: int
    squares: list
    multiplier: Poly
    residual: float = float("nan")

    def sum_of_squares(self):
        acc = Poly.zero()
        for h in self.squares:
            acc = acc + hermitian_square(h)
        return acc

    def to_json(self):
        return {
            "n": self.N,
            "squares": [h.to_json() for h in self.squares],
            "multiplier": self.multiplier.to_json(),
            "residual": float(self.residual),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            N=int(obj["n"]),
            squares=[HoloPoly.from_json(h) for h in obj["squares"]],
            multiplier=Poly.from_json(obj["multiplier"]),
            residual=float(obj.get("residual", float("nan"))),
        )


@dataclass
class Decision:
    verdict: Verdict
    N: int
    certificate: SosCertificate | None = None
    witness: RefutationWitness | None = None
    toeplitz_min_eig: float | None = None
    band: float | None = None
    sweep: dict | None = None
    note: str = ""

    @property
    def exit_code(self):
        return EXIT_CODES[self.verdict]

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "n": self.N,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "witness": None if self.witness is None else self.witness.to_json(),
            "diagnostics": {
                "toeplitz_min_eig": self.toeplitz_min_eig,
                "band": self.band,
                "sweep": self.sweep,
                "note": self.note,
            },
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


def verify_certificate(f, N, cert):
    """Max coefficient of f - sum |h_i|^2 - q (z^N zbar^N - 1), from scratch.

    Uses only polynomial arithmetic; nothing from the solvers.
    """
    r = f - cert.sum_of_squares()
    if N > 0:
        r = r - cert.multiplier * ideal_generator(N)
    elif not cert.multiplier.is_zero():
        raise DomainError("the ideal (0) admits only the zero multiplier")
    return r.max_abs()


def certificate_from_squares(f, N, squares):
    """Attach the multiplier making ``squares`` a certificate for ``f``.

    If f = t_f + q_f g and sum |h_i|^2 = t_s + q_s g (g the generator) with
    matching normal forms t_f = t_s, then q = q_f - q_s.
    """
    sos = Poly.zero()
    for h in squares:
        sos = sos + hermitian_square(h)
    if N == 0:
        q = Poly.zero()
    else:
        _, q_f = reduce(f, N)
        _, q_s = reduce(sos, N)
        q = q_f - q_s
    cert = SosCertificate(N, list(squares), q)
    cert.residual = verify_certificate(f, N, cert)
    return cert


def _decide_trivial_ideal(f, opts):
    a = f.coeffs
    w = np.linalg.eigvalsh(a)
    band = opts.tol * (1.0 + float(np.max(np.abs(w))))
    lam = float(w[0])
    if lam <= -band:
        wit = point_witness(f, opts.tol)
        if wit is None:
            raise InconsistentError(f"coefficient matrix has eigenvalue {lam:.3e} but no point witness")
        return Decision(Verdict.NON_MEMBER, 0, witness=wit, toeplitz_min_eig=lam, band=band)
    cert = certificate_from_squares(f, 0, factor_to_squares(a))
    if cert.residual <= opts.cert_tol:
        return Decision(Verdict.MEMBER, 0, certificate=cert, toeplitz_min_eig=lam, band=band)
    return Decision(
        Verdict.BOUNDARY, 0, certificate=cert, toeplitz_min_eig=lam, band=band,
        note=f"certificate residual {cert.residual:.3e} above {opts.cert_tol:.1e}",
    )


def _sweep_for_witness(f, N, opts):
    samples = max(opts.samples, 2 * f.deg + 2)
    for _ in range(opts.max_refine + 1):
        sweep = gram_sweep(f, N, samples=samples, tol=opts.tol)
        if sweep.witness is not None:
            return sweep
        samples *= 2
    return sweep


def decide(f, N, opts=None):
    """Decide f in Sigma^2_h + (z^N zbar^N - 1); ``N = 0`` means the ideal (0)."""
    opts = opts or DecideOptions()
    require_hermitian(f)
    if N < 0:
        raise DomainError("modulus N must be >= 0")
    if N == 0:
        return _decide_trivial_ideal(f, opts)

    t, _ = reduce(f, N)
    T = build_toeplitz(t)
    lam = T.min_eig()
    band = opts.tol * T.scale()

    if lam <= -band:
        sweep = _sweep_for_witness(f, N, opts)
        if sweep.witness is None:
            raise InconsistentError(
                f"Toeplitz min eig {lam:.3e} is negative but no orbit witness was found "
                f"(sweep min {sweep.min_eig:.3e})"
            )
        return Decision(
            Verdict.NON_MEMBER, N, witness=sweep.witness, toeplitz_min_eig=lam,
            band=band, sweep=sweep.summary(),
        )

    sweep = gram_sweep(f, N, samples=max(opts.samples, 2 * f.deg + 2), tol=opts.tol)
    diag = dict(toeplitz_min_eig=lam, band=band, sweep=sweep.summary())
    if sweep.witness is not None:
        return Decision(
            Verdict.NON_MEMBER, N, witness=sweep.witness,
            note="positive Toeplitz section but a negative orbit Gram matrix", **diag,
        )

    try:
        Q = recover_q(t, opts.recover)
    except (NoConvergenceError, NotPsdError) as exc:
        log.info("no certificate: %s", exc)
        return Decision(Verdict.BOUNDARY, N, note=str(exc), **diag)
    cert = certificate_from_squares(f, N, factor_to_squares(Q))
    if cert.residual <= opts.cert_tol:
        return Decision(Verdict.MEMBER, N, certificate=cert, **diag)
    return Decision(
        Verdict.BOUNDARY, N, certificate=cert,
        note=f"certificate residual {cert.residual:.3e} above {opts.cert_tol:.1e}", **diag,
    )


def check_decision(f, decision, tol=DEFAULT_TOL):
    """Re-verify a decision's evidence independently; returns the checked value."""
    if decision.verdict is Verdict.MEMBER:
        return verify_certificate(f, decision.N, decision.certificate)
    if decision.verdict is Verdict.NON_MEMBER:
        return witness_check(f, decision.N, decision.witness)
    raise DomainError("boundary decisions carry no checkable evidence")
