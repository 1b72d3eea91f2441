"""Text input for the jet-polynomial engine.

Grammar (whitespace insensitive):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('+' | '-')* power
    power   := atom ('^' INTEGER)?
    atom    := INTEGER | JETVAR | FUNC | '(' expr ')'

    JETVAR  := 'u' followed optionally by '_' and a run of t's then x's,
               e.g. u, u_t, u_x, u_tx, u_txx, u_ttx
    FUNC    := f(u) with any number of primes (f'(u), f''(u), ...),
               or the underived F(u), h(u)

Division is only defined by a nonzero rational constant, which keeps every
expression inside the exact-polynomial class.  Errors carry the 0-based
character offset where scanning or parsing failed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import DiffPoly, FuncSym, JetVar


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


_JET_RE = re.compile(r"u(?:_(t*)(x*))?")
_FUNC_RE = re.compile(r"([fFh])('*)\(\s*u\s*\)")
_NUM_RE = re.compile(r"\d+")
_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        m = _NUM_RE.match(text, i)
        if m:
            tokens.append(_Token("number", m.group(), i))
            i = m.end()
            continue
        m = _FUNC_RE.match(text, i)
        if m:
            base, primes = m.group(1), m.group(2)
            if base != "f" and primes:
                raise ParseError(f"{base}'(u) is not a token; it rewrites through f", i)
            tokens.append(_Token("func", m.group(), i))
            i = m.end()
            continue
        m = _JET_RE.match(text, i)
        if m:
            end = m.end()
            # the whole identifier must be consumed: u_xt and the like are
            # not canonical jet tokens
            if end < n and (text[end].isalnum() or text[end] == "_"):
                raise ParseError(f"unknown token {text[i:end + 1]!r}", i)
            if m.group(1) is not None and not (m.group(1) or m.group(2)):
                raise ParseError("dangling underscore in jet token", i)
            tokens.append(_Token("jet", m.group(), i))
            i = end
            continue
        raise ParseError(f"unknown token {text[i]!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            what = "unexpected end of input" if tok.kind == "end" else f"unexpected {tok.text!r}"
            raise ParseError(f"{what}, expected {kind}", tok.pos)
        return self.advance()

    def parse_expr(self) -> DiffPoly:
        poly = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def parse_term(self) -> DiffPoly:
        poly = self.parse_factor()
        while self.peek().kind in ("*", "/"):
            tok = self.advance()
            rhs = self.parse_factor()
            if tok.kind == "*":
                poly = poly * rhs
            else:
                const = _as_constant(rhs)
                if const is None or const == 0:
                    raise ParseError("division is only by a nonzero rational constant", tok.pos)
                poly = poly * DiffPoly.constant(Fraction(1) / const)
        return poly

    def parse_factor(self) -> DiffPoly:
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = -sign
        poly = self.parse_power()
        return poly if sign > 0 else -poly

    def parse_power(self) -> DiffPoly:
        poly = self.parse_atom()
        if self.peek().kind == "^":
            self.advance()
            tok = self.expect("number")
            poly = poly ** int(tok.text)
        return poly

    def parse_atom(self) -> DiffPoly:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return DiffPoly.constant(int(tok.text))
        if tok.kind == "jet":
            self.advance()
            if "_" in tok.text:
                suffix = tok.text.split("_", 1)[1]
                return DiffPoly.from_jet(JetVar(suffix.count("t"), suffix.count("x")))
            return DiffPoly.from_jet(JetVar(0, 0))
        if tok.kind == "func":
            self.advance()
            base = tok.text[0]
            primes = tok.text.count("'")
            return DiffPoly.from_func(FuncSym(base, primes))
        if tok.kind == "(":
            self.advance()
            poly = self.parse_expr()
            self.expect(")")
            return poly
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos)
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)


def _as_constant(poly: DiffPoly) -> Fraction | None:
    items = list(poly.terms())
    if not items:
        return Fraction(0)
    if len(items) == 1 and items[0][0] == () and items[0][1] == ():
        return items[0][2]
    return None


def parse(text: str) -> DiffPoly:
    """Parse an expression into a normalized DiffPoly."""
    parser = _Parser(_tokenize(text))
    poly = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)
    return poly
