"""Surface syntax for operator expressions.

Precedence, tightest first: ``^``; ``*`` and ``@`` (left-associative, equal);
unary ``-``; binary ``+``/``-``.  ``@`` is the symmetrized product.  Two
factors written side by side (``1/2 h``, ``q p``) multiply like ``*`` so
that printed polynomials read back in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DP_RHO, DQ_RHO, RHO, OperatorPoly, commutator, h, letter, p, q, scalar
from .calculus import poisson_sym
from .errors import EngineError, ParseError
from .symmetrization import sym_product, symmetrize

__all__ = [
    "Expr", "Gen", "Rat", "Power", "Product", "SymProduct", "Sum", "Diff", "Neg",
    "Sym", "PB", "Comm", "Group", "parse", "evaluate", "evaluate_classical",
]

Span = tuple  # (line, column)


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Gen(Expr):
    name: str  # q, p, h, rho, dq(rho), dp(rho)
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Rat(Expr):
    value: Fraction
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exp: int
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Product(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class SymProduct(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Diff(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Sym(Expr):
    operand: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class PB(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Comm(Expr):
    left: Expr
    right: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Group(Expr):
    inner: Expr
    span: Span = field(default=(1, 1), compare=False, repr=False)


# --- lexer ---------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s+|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*@^/(),])")
_NAMES = {"q", "p", "h", "rho", "dq", "dp", "S", "PB", "C"}


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind is not None:
            toks.append(_Tok(kind, m.group(), line, col))
        else:
            for i, ch in enumerate(m.group()):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


_BASE_START = {"q", "p", "h", "rho", "dq(rho)", "dp(rho)", "INT", "(", "S(", "PB(", "C("}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def _error(self, message, expected):
        t = self.cur
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.col, expected)

    def _take(self, text: str, expected=None) -> _Tok:
        if self.cur.text != text or self.cur.kind == "eof":
            self._error(f"expected {text!r}", expected or {text})
        tok = self.cur
        self.i += 1
        return tok

    def _starts_base(self) -> bool:
        t = self.cur
        return t.kind == "int" or t.text == "(" or (t.kind == "name" and t.text in _NAMES)

    def parse(self) -> Expr:
        e = self.expr()
        if self.cur.kind != "eof":
            self._error("unexpected input", {"+", "-", "*", "@", "^", "end of input"})
        return e

    def expr(self) -> Expr:
        left = self.unary()
        while self.cur.text in ("+", "-") and self.cur.kind == "op":
            tok = self.cur
            self.i += 1
            right = self.unary()
            node = Sum if tok.text == "+" else Diff
            left = node(left, right, span=(tok.line, tok.col))
        return left

    def unary(self) -> Expr:
        if self.cur.kind == "op" and self.cur.text == "-":
            tok = self.cur
            self.i += 1
            return Neg(self.unary(), span=(tok.line, tok.col))
        return self.term()

    def term(self) -> Expr:
        left = self.factor()
        while True:
            tok = self.cur
            if tok.kind == "op" and tok.text in ("*", "@"):
                self.i += 1
                right = self.factor()
                node = Product if tok.text == "*" else SymProduct
                left = node(left, right, span=(tok.line, tok.col))
            elif self._starts_base():
                right = self.factor()
                left = Product(left, right, span=(tok.line, tok.col))
            else:
                return left

    def factor(self) -> Expr:
        base = self.base()
        if self.cur.kind == "op" and self.cur.text == "^":
            tok = self.cur
            self.i += 1
            negative = False
            if self.cur.kind == "op" and self.cur.text == "-":
                negative = True
                self.i += 1
            if self.cur.kind != "int":
                self._error("expected a natural-number exponent", {"NAT"})
            exp = int(self.cur.text)
            if negative:
                if base != Gen("h"):
                    raise ParseError(
                        "negative exponents are only allowed on h", tok.line, tok.col, {"NAT"}
                    )
                exp = -exp
            self.i += 1
            return Power(base, exp, span=(tok.line, tok.col))
        return base

    def base(self) -> Expr:
        t = self.cur
        span = (t.line, t.col)
        if t.kind == "int":
            self.i += 1
            value = Fraction(int(t.text))
            if self.cur.kind == "op" and self.cur.text == "/":
                self.i += 1
                if self.cur.kind != "int":
                    self._error("expected a denominator", {"INT"})
                den = int(self.cur.text)
                if den == 0:
                    raise ParseError("zero denominator", self.cur.line, self.cur.col, {"INT"})
                value = value / den
                self.i += 1
            return Rat(value, span=span)
        if t.kind == "op" and t.text == "(":
            self.i += 1
            inner = self.expr()
            self._take(")", {")", "+", "-", "*", "@", "^"})
            return Group(inner, span=span)
        if t.kind == "name":
            if t.text in ("q", "p", "h", "rho"):
                self.i += 1
                return Gen(t.text, span=span)
            if t.text in ("dq", "dp"):
                self.i += 1
                self._take("(")
                self._take("rho", {"rho"})
                self._take(")")
                return Gen(f"{t.text}(rho)", span=span)
            if t.text == "S":
                self.i += 1
                self._take("(")
                inner = self.expr()
                self._take(")", {")", "+", "-", "*", "@", "^"})
                return Sym(inner, span=span)
            if t.text in ("PB", "C"):
                self.i += 1
                self._take("(")
                left = self.expr()
                self._take(",", {",", "+", "-", "*", "@", "^"})
                right = self.expr()
                self._take(")", {")", "+", "-", "*", "@", "^"})
                node = PB if t.text == "PB" else Comm
                return node(left, right, span=span)
        self._error("expected an operand", _BASE_START)


def parse(text: str) -> Expr:
    """Parse ``text`` into an :class:`Expr` tree; raises :class:`ParseError`."""
    return _Parser(text).parse()


# --- evaluation ------------------------------------------------------------------

_GENERATORS = {
    "q": lambda: q,
    "p": lambda: p,
    "h": lambda: h,
    "rho": lambda: letter(RHO),
    "dq(rho)": lambda: letter(DQ_RHO),
    "dp(rho)": lambda: letter(DP_RHO),
}


def _located(e: Expr, err: EngineError) -> EngineError:
    if getattr(err, "located", False):
        return err
    line, col = e.span
    out = EngineError(f"{err} (at line {line}, column {col})")
    out.located = True
    return out


def evaluate(e: Expr) -> OperatorPoly:
    """Evaluate an expression tree to a canonical :class:`OperatorPoly`.

    Engine errors are re-raised with the line/column of the innermost node
    that failed.
    """
    return _eval(e)


def _eval(e: Expr) -> OperatorPoly:
    try:
        if isinstance(e, Gen):
            return _GENERATORS[e.name]()
        if isinstance(e, Rat):
            return scalar(e.value)
        if isinstance(e, Group):
            return _eval(e.inner)
        if isinstance(e, Power):
            if e.exp < 0:
                return scalar(1, e.exp)  # parser only admits h^-k
            return _eval(e.base) ** e.exp
        if isinstance(e, Neg):
            return -_eval(e.operand)
        if isinstance(e, Sym):
            return symmetrize(_eval(e.operand))
        left, right = _eval(e.left), _eval(e.right)
        if isinstance(e, Product):
            return left * right
        if isinstance(e, SymProduct):
            return sym_product(left, right)
        if isinstance(e, Sum):
            return left + right
        if isinstance(e, Diff):
            return left - right
        if isinstance(e, PB):
            return poisson_sym(left, right)
        if isinstance(e, Comm):
            return commutator(left, right)
    except EngineError as err:
        raise _located(e, err) from None
    raise EngineError(f"cannot evaluate node {type(e).__name__}")


def evaluate_classical(e: Expr):
    """Evaluate with commuting ``q``, ``p``, ``h``; ``@`` is the plain product and
    ``PB`` the classical Poisson bracket."""
    from .quantization import c_multiply, c_poisson, cconst, ch, cp, cq

    try:
        if isinstance(e, Gen):
            table = {"q": cq, "p": cp, "h": ch}
            if e.name not in table:
                raise EngineError(f"{e.name} has no classical counterpart")
            return table[e.name]
        if isinstance(e, Rat):
            return cconst(e.value)
        if isinstance(e, Group):
            return evaluate_classical(e.inner)
        if isinstance(e, Power):
            if e.exp < 0:
                raise EngineError("negative powers are not classical polynomials")
            return evaluate_classical(e.base) ** e.exp
        if isinstance(e, Neg):
            return -evaluate_classical(e.operand)
        if isinstance(e, (Sym, Comm)):
            raise EngineError(f"{type(e).__name__} is not defined on classical polynomials")
        left, right = evaluate_classical(e.left), evaluate_classical(e.right)
        if isinstance(e, (Product, SymProduct)):
            return c_multiply(left, right)
        if isinstance(e, Sum):
            return left + right
        if isinstance(e, Diff):
            return left - right
        if isinstance(e, PB):
            return c_poisson(left, right)
    except EngineError as err:
        raise _located(e, err) from None
    raise EngineError(f"cannot evaluate node {type(e).__name__}")


def parse_operator(text: str) -> OperatorPoly:
    return evaluate(parse(text))
