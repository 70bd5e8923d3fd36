"""Expression parser for A(SU_q(3)) elements.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := integer | '(' ['-'] integer ['/' integer] ')' | '-' integer
    atom   := integer | 'q' | 'u[i,j]' | 'z[i]' | 'zs[i]' | 'p[i,j]' | '(' expr ')'

Division is only allowed by nonzero rationals and powers of q.  Stars are
eliminated on the fly through quantum minors, so results are star-free
normal forms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import NormalForm, p, u, z, zs
from .qcoeff import QScalar

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>zs|[uzpq])|(?P<op>[-+*/^()\[\],]))")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        k, v, pos = self.tok
        if (value is not None and v != value) or (kind is not None and k != kind):
            want = value or kind
            got = v or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", pos)
        self.i += 1
        return v, pos

    def at(self, value: str) -> bool:
        return self.tok[1] == value and self.tok[0] == "op"

    def parse(self) -> NormalForm:
        out = self.expr()
        if self.tok[0] != "end":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return out

    def expr(self) -> NormalForm:
        out = self.term()
        while self.at("+") or self.at("-"):
            op, _ = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> NormalForm:
        out = self.unary()
        while self.at("*") or self.at("/"):
            op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                out = out.scale(_invert_scalar(rhs, pos))
        return out

    def unary(self) -> NormalForm:
        if self.at("-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> NormalForm:
        is_q = self.tok[1] == "q"
        base = self.atom()
        if not self.at("^"):
            return base
        _, pos = self.take("^")
        e = self.exponent()
        if is_q:
            return NormalForm.scalar(QScalar.qpow(e))
        if e.denominator != 1 or e < 0:
            raise ParseError("only q admits negative or fractional powers", pos)
        return base ** int(e)

    def exponent(self) -> Fraction:
        if self.at("("):
            self.take("(")
            sign = -1 if self.at("-") else 1
            if sign < 0:
                self.take("-")
            num, _ = self.take(kind="num")
            den = "1"
            if self.at("/"):
                self.take("/")
                den, pos = self.take(kind="num")
                if int(den) == 0:
                    raise ParseError("zero denominator", pos)
            self.take(")")
            return sign * Fraction(int(num), int(den))
        if self.at("-"):
            self.take("-")
            num, _ = self.take(kind="num")
            return Fraction(-int(num))
        num, _ = self.take(kind="num")
        return Fraction(int(num))

    def index(self) -> int:
        v, pos = self.take(kind="num")
        n = int(v)
        if not 1 <= n <= 3:
            raise ParseError(f"index {n} out of range 1..3", pos)
        return n

    def atom(self) -> NormalForm:
        kind, v, pos = self.tok
        if kind == "num":
            self.take()
            return NormalForm.scalar(int(v))
        if kind == "op" and v == "(":
            self.take("(")
            out = self.expr()
            self.take(")")
            return out
        if kind == "name":
            self.take()
            if v == "q":
                return NormalForm.scalar(QScalar.qpow(1))
            self.take("[")
            i = self.index()
            if v in ("u", "p"):
                self.take(",")
                j = self.index()
                self.take("]")
                return u(i, j) if v == "u" else p(i, j)
            self.take("]")
            return z(i) if v == "z" else zs(i)
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def _invert_scalar(x: NormalForm, pos: int):
    if not x.is_scalar() or x.is_zero():
        raise ParseError("division only by nonzero scalars", pos)
    c = x.scalar_part()
    if not c.is_rational() or not c.as_qscalar().is_monomial():
        raise ParseError("division only by rationals times powers of q", pos)
    return c.as_qscalar() ** -1


def parse_expr(text: str) -> NormalForm:
    """Parse, eliminate stars and normalize."""
    return _Parser(text).parse()


__all__ = ["parse_expr", "ParseError"]
