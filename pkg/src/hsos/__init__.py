"""Hermitian sums of squares modulo the ideal (z^N zbar^N - 1)."""

from .certify import (
    Decision,
    DecideOptions,
    SosCertificate,
    Verdict,
    decide,
    verify_certificate,
)
from .errors import (
    DomainError,
    HsosError,
    InconsistentError,
    NoConvergenceError,
    NotPsdError,
    ParseError,
    SizeError,
)
from .functional import fn_diagonal, fn_quadrature, matrix_product_via_fn
from .gram import RefutationWitness, gram_at_points, gram_sweep, orbit_gram, witness_check
from .parser import format_poly, parse
from .poly import HoloPoly, Poly, hermitian_square, ideal_generator
from .reduction import TrigNormalForm, reconstruct, reduce
from .toeplitz import BlockToeplitz, PositiveBlockQ, build_toeplitz, factor_to_squares, recover_q

__version__ = "0.1.0"

__all__ = [
    "BlockToeplitz",
    "DecideOptions",
    "Decision",
    "DomainError",
    "HoloPoly",
    "HsosError",
    "InconsistentError",
    "NoConvergenceError",
    "NotPsdError",
    "ParseError",
    "Poly",
    "PositiveBlockQ",
    "RefutationWitness",
    "SizeError",
    "SosCertificate",
    "TrigNormalForm",
    "Verdict",
    "build_toeplitz",
    "decide",
    "factor_to_squares",
    "fn_diagonal",
    "fn_quadrature",
    "format_poly",
    "gram_at_points",
    "gram_sweep",
    "hermitian_square",
    "ideal_generator",
    "matrix_product_via_fn",
    "orbit_gram",
    "parse",
    "reconstruct",
    "recover_q",
    "reduce",
    "verify_certificate",
    "witness_check",
]
