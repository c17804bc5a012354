"""Command line front end: ``hsos <command> <expr|file|-> --n N``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .certify import DecideOptions, SosCertificate, Verdict, decide, default_tol, verify_certificate
from .errors import DomainError, HsosError, ParseError
from .functional import fn_diagonal, fn_quadrature
from .gram import gram_sweep, orbit_gram
from .parser import format_poly, parse
from .reduction import reduce
from .toeplitz import build_toeplitz

EXIT_ERROR = 3
EXIT_USAGE = 64
EXIT_PARSE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _read_text(src):
    if src == "-":
        return sys.stdin.read()
    path = Path(src)
    if path.is_file():
        return path.read_text()
    return src


def _fmt_complex(c):
    c = complex(c)
    return f"{c.real:.12g}{'-' if c.imag < 0 else '+'}{abs(c.imag):.12g}i"


def _print_matrix(a, out):
    for row in np.asarray(a):
        print(" ".join(_fmt_complex(c) for c in row), file=out)


def _need_modulus(args, allow_zero=False):
    lo = 0 if allow_zero else 1
    if args.n < lo:
        raise UsageError(f"--n must be >= {lo} for '{args.command}'")


def _tol(args):
    if getattr(args, "tol", None) is not None:
        return args.tol
    try:
        return default_tol()
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _options(args):
    opts = DecideOptions(tol=_tol(args))
    if getattr(args, "samples", None):
        opts.samples = args.samples
    return opts


def cmd_check(args, f, out):
    _need_modulus(args, allow_zero=True)
    d = decide(f, args.n, _options(args))
    if args.json:
        print(d.dumps(), file=out)
        return d.exit_code
    print(f"verdict: {d.verdict.value}", file=out)
    print(f"N: {d.N}", file=out)
    label = "coefficient min eig" if d.N == 0 else "toeplitz min eig"
    print(f"{label}: {d.toeplitz_min_eig:.12g}", file=out)
    print(f"band: {d.band:.3e}", file=out)
    if d.sweep:
        s = d.sweep
        print(f"gram sweep: min eig {s['min_eig']:.12g} at theta {s['theta_at_min']:.12g} "
              f"({s['samples']} samples)", file=out)
    if d.certificate is not None:
        print(f"squares: {len(d.certificate.squares)}", file=out)
        print(f"multiplier: {format_poly(d.certificate.multiplier)}", file=out)
        print(f"certificate residual: {d.certificate.residual:.3e}", file=out)
    if d.witness is not None:
        w = d.witness
        where = f"theta {w.theta:.12g}" if w.theta is not None else f"{len(w.points)} points"
        print(f"witness: {where}, value {w.value:.12g}", file=out)
    if d.note:
        print(f"note: {d.note}", file=out)
    return d.exit_code


def cmd_certify(args, f, out):
    _need_modulus(args, allow_zero=True)
    d = decide(f, args.n, _options(args))
    if d.verdict is Verdict.MEMBER:
        print(json.dumps(d.certificate.to_json(), indent=2), file=out)
    else:
        print(d.dumps(), file=out)
    return d.exit_code


def cmd_verify(args, f, out):
    _need_modulus(args, allow_zero=True)
    try:
        cert = SosCertificate.from_json(json.loads(_read_text(args.certificate)))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"unreadable certificate: {exc}") from exc
    if cert.N != args.n:
        raise UsageError(f"certificate is for N = {cert.N}, not {args.n}")
    res = verify_certificate(f, args.n, cert)
    print(f"residual: {res:.6e}", file=out)
    return 0 if res <= args.bound else 1


def cmd_reduce(args, f, out):
    _need_modulus(args)
    t, q = reduce(f, args.n)
    if args.json:
        print(json.dumps({"normal": t.to_json(), "quotient": q.to_json()}, indent=2), file=out)
        return 0
    from .reduction import reconstruct

    print(f"normal form: {format_poly(reconstruct(t))}", file=out)
    print(f"quotient: {format_poly(q)}", file=out)
    for k, a in enumerate(t.data):
        print(f"A_{k}:", file=out)
        _print_matrix(a, out)
    return 0


def cmd_gram(args, f, out):
    _need_modulus(args)
    g = orbit_gram(f, args.n, args.theta)
    _print_matrix(g, out)
    print(f"min eig: {np.linalg.eigvalsh(g)[0]:.12g}", file=out)
    return 0


def cmd_sweep(args, f, out):
    _need_modulus(args)
    s = gram_sweep(f, args.n, samples=args.samples, tol=_tol(args))
    print("theta,lambda_min", file=out)
    for th, lam in zip(s.grid, s.min_eigs):
        print(f"{float(th)!r},{float(lam)!r}", file=out)
    return 0


def cmd_fn(args, f, out):
    _need_modulus(args)
    diag = fn_diagonal(f, args.n)
    quad = fn_quadrature(f, args.n, args.samples)
    print(f"diagonal: {_fmt_complex(diag)}", file=out)
    print(f"quadrature: {_fmt_complex(quad)}", file=out)
    print(f"difference: {abs(diag - quad):.3e}", file=out)
    return 0


def cmd_toeplitz(args, f, out):
    _need_modulus(args)
    T = build_toeplitz(reduce(f, args.n)[0])
    _print_matrix(T.matrix, out)
    print(f"min eig: {T.min_eig():.12g}", file=out)
    return 0


def build_parser():
    p = _Parser(prog="hsos", description="Hermitian sums of squares modulo (z^N zbar^N - 1).")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("expr", help="polynomial text, a file holding it, or '-' for stdin")
        sp.add_argument("--n", type=int, required=True, help="modulus N (0 = the ideal (0) where allowed)")
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "decide membership and print diagnostics")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--tol", type=float)
    sp.add_argument("--samples", type=int)
    sp = add("certify", cmd_certify, "emit a certificate as JSON")
    sp.add_argument("--tol", type=float)
    sp.add_argument("--samples", type=int)
    sp = add("verify", cmd_verify, "recompute the residual of a certificate")
    sp.add_argument("certificate", help="certificate JSON file or '-' for stdin")
    sp.add_argument("--bound", type=float, default=1e-8, help="exit 0 iff residual <= bound")
    sp = add("reduce", cmd_reduce, "normal form and quotient")
    sp.add_argument("--json", action="store_true")
    sp = add("gram", cmd_gram, "orbit Gram matrix at one angle")
    sp.add_argument("--theta", type=float, required=True)
    sp = add("sweep", cmd_sweep, "min-eigenvalue profile as CSV")
    sp.add_argument("--samples", type=int, default=1024)
    sp.add_argument("--tol", type=float)
    sp = add("fn", cmd_fn, "the orbit-averaging functional by both routes")
    sp.add_argument("--samples", type=int, default=0)
    add("toeplitz", cmd_toeplitz, "block Toeplitz matrix of the normal form")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.expr == "-" and getattr(args, "certificate", None) == "-":
            raise UsageError("only one of expr and certificate can come from stdin")
        f = parse(_read_text(args.expr))
        return args.func(args, f, out)
    except UsageError as exc:
        print(f"hsos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"hsos: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (HsosError, OSError) as exc:
        print(f"hsos: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
