"""Text form of polynomials in z and zbar.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | factor
    factor := base ('^' uint)?
    base   := 'z' | 'zbar' | 'conj' '(' 'z' ')' | number | '(' expr ')'
    number := real | '(' ['+'|'-'] real ('+'|'-') real 'i' ')'

Implicit multiplication is rejected.  Parsing expands straight into
coefficient matrices; there is no symbolic layer beyond the AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError
from .poly import MAX_DEGREE, Poly, power

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<real>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)

_IDENTS = {"z", "zbar", "conj", "i"}


@dataclass(frozen=True)
class Token:
    kind: str  # real | ident | op | end
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


@dataclass(frozen=True)
class Expr:
    """AST node. ``kind`` is one of sum, product, power, negation,
    literal, z, zbar; sums carry per-child signs in ``value``."""

    kind: str
    children: tuple = ()
    value: object = None
    line: int = field(default=1, compare=False)
    col: int = field(default=1, compare=False)


class _Parser:
    def __init__(self, text, max_degree):
        self.toks = tokenize(text)
        self.i = 0
        self.max_degree = max_degree

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def eat(self, kind, text=None):
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            got = t.text or "end of input"
            self.fail(f"expected {want!r}, got {got!r}")
        self.i += 1
        return t

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def parse(self):
        if self.at("end"):
            self.fail("empty expression")
        node = self.expr()
        if not self.at("end"):
            self.fail(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        start = self.tok
        children, signs = [self.term()], [1]
        while self.at("op", "+") or self.at("op", "-"):
            signs.append(1 if self.eat("op").text == "+" else -1)
            children.append(self.term())
        if len(children) == 1:
            return children[0]
        return Expr("sum", tuple(children), tuple(signs), start.line, start.col)

    def term(self):
        start = self.tok
        children = [self.unary()]
        while self.at("op", "*"):
            self.eat("op")
            children.append(self.unary())
        if len(children) == 1:
            return children[0]
        return Expr("product", tuple(children), None, start.line, start.col)

    def unary(self):
        start = self.tok
        if self.at("op", "-"):
            self.eat("op")
            return Expr("negation", (self.unary(),), None, start.line, start.col)
        if self.at("op", "+"):
            self.eat("op")
            return self.unary()
        return self.factor()

    def factor(self):
        base = self.base()
        if self.at("op", "^"):
            self.eat("op")
            t = self.tok
            if t.kind != "real":
                self.fail("exponent must be a nonnegative integer")
            if not t.text.isdigit():
                self.fail(f"non-integer exponent {t.text!r}")
            n = int(t.text)
            if n > self.max_degree:
                self.fail(f"exponent {n} exceeds degree cap {self.max_degree}")
            self.i += 1
            if self.at("op", "^"):
                self.fail("chained exponents are ambiguous; add parentheses")
            return Expr("power", (base,), n, base.line, base.col)
        if self.at("real") or self.at("ident") or self.at("op", "("):
            self.fail("implicit multiplication is not allowed; use '*'")
        return base

    def base(self):
        t = self.tok
        if t.kind == "real":
            self.i += 1
            return Expr("literal", (), complex(float(t.text)), t.line, t.col)
        if t.kind == "ident":
            if t.text not in _IDENTS or t.text == "i":
                self.fail(f"unknown identifier {t.text!r}")
            self.i += 1
            if t.text == "z":
                return Expr("z", (), None, t.line, t.col)
            if t.text == "zbar":
                return Expr("zbar", (), None, t.line, t.col)
            self.eat("op", "(")
            self.eat("ident", "z")
            self.eat("op", ")")
            return Expr("zbar", (), None, t.line, t.col)
        if t.kind == "op" and t.text == "(":
            lit = self.complex_literal()
            if lit is not None:
                return lit
            self.eat("op", "(")
            node = self.expr()
            self.eat("op", ")")
            return node
        self.fail(f"unexpected {t.text or 'end of input'!r}")

    def complex_literal(self):
        """Match ``( [sign] real sign real i )`` by lookahead, else None."""
        k = 1
        sign_re = 1.0
        if self.peek(k).kind == "op" and self.peek(k).text in "+-":
            sign_re = -1.0 if self.peek(k).text == "-" else 1.0
            k += 1
        re_tok, op_tok, im_tok, i_tok, close = (self.peek(k + j) for j in range(5))
        if not (
            re_tok.kind == "real"
            and op_tok.kind == "op"
            and op_tok.text in "+-"
            and im_tok.kind == "real"
            and i_tok.kind == "ident"
            and i_tok.text == "i"
            and close.kind == "op"
            and close.text == ")"
        ):
            return None
        start = self.tok
        self.i += k + 5
        sign_im = -1.0 if op_tok.text == "-" else 1.0
        value = complex(sign_re * float(re_tok.text), sign_im * float(im_tok.text))
        return Expr("literal", (), value, start.line, start.col)


def parse_ast(text, max_degree=MAX_DEGREE):
    return _Parser(text, max_degree).parse()


def evaluate(node, max_degree=MAX_DEGREE):
    """Expand an AST into a :class:`Poly`."""
    kind = node.kind
    if kind == "literal":
        return Poly.constant(node.value)
    if kind == "z":
        return Poly.monomial(0, 1)
    if kind == "zbar":
        return Poly.monomial(1, 0)
    if kind == "negation":
        return -evaluate(node.children[0], max_degree)
    if kind == "sum":
        acc = Poly.zero()
        for sign, child in zip(node.value, node.children):
            p = evaluate(child, max_degree)
            acc = acc + p if sign > 0 else acc - p
        return acc
    if kind == "product":
        acc = evaluate(node.children[0], max_degree)
        for child in node.children[1:]:
            acc = _checked_mul(acc, evaluate(child, max_degree), max_degree, child)
        return acc
    if kind == "power":
        base = evaluate(node.children[0], max_degree)
        if base.deg * node.value > max_degree:
            raise ParseError(
                f"power degree {base.deg * node.value} exceeds cap {max_degree}",
                node.line,
                node.col,
            )
        return power(base, node.value, max_degree)
    raise ValueError(f"unknown node kind {kind!r}")


def _checked_mul(a, b, max_degree, node):
    if a.deg + b.deg > max_degree:
        raise ParseError(
            f"product degree {a.deg + b.deg} exceeds cap {max_degree}", node.line, node.col
        )
    return a * b


def parse(text, max_degree=MAX_DEGREE):
    """Parse ``text`` into a :class:`Poly` (expanded and collected)."""
    return evaluate(parse_ast(text, max_degree), max_degree)


# formatting ---------------------------------------------------------------


def _fmt_real(x):
    x = float(x)
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x)) if x != 0 or np.copysign(1.0, x) > 0 else "-0"
    return repr(x)


def _monomial(j, k):
    parts = []
    if k:
        parts.append("z" if k == 1 else f"z^{k}")
    if j:
        parts.append("zbar" if j == 1 else f"zbar^{j}")
    return "*".join(parts)


def format_poly(f):
    """Canonical text: terms ordered by (j + k, j), j the zbar exponent.

    Real coefficients print bare with the sign folded into the operator;
    complex ones print as ``(a+bi)``.  The output reparses to the identical
    coefficient matrix.
    """
    a = f.coeffs
    terms = sorted(((j + k, j, k) for j, k in zip(*np.nonzero(a))))
    if not terms:
        return "0"
    out = []
    for idx, (_, j, k) in enumerate(terms):
        c = complex(a[j, k])
        mono = _monomial(j, k)
        if c.imag == 0:
            neg = np.copysign(1.0, c.real) < 0
            mag = abs(c.real)
            if mono and mag == 1.0:
                body = mono
            else:
                body = _fmt_real(mag) + (f"*{mono}" if mono else "")
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        else:
            sign = "-" if np.copysign(1.0, c.imag) < 0 else "+"
            lit = f"({_fmt_real(c.real)}{sign}{_fmt_real(abs(c.imag))}i)"
            body = lit + (f"*{mono}" if mono else "")
            out.append(body if idx == 0 else " + " + body)
    return "".join(out)
