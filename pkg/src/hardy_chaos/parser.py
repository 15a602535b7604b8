"""Recursive-descent parser for rational symbol expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | factor
    factor := base ('^' uint)?
    base   := 'z' | 'l' | number | 'i' | '(' expr ')' | '(' number ',' number ')'

A number immediately followed by ``i`` is imaginary (``2i``, ``1.5e-3i``).
``l`` is the scan parameter of a family and is rejected by ``parse_symbol``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import HardyChaosError, ParseError, ZeroPolynomialDivision
from .roots import EPS_BOUNDARY
from .symbols import Symbol

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IMAG, Z, L, I, OP, LPAREN, RPAREN, COMMA, EOF
    text: str
    pos: int
    value: complex = 0j


def tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _NUMBER.match(text, pos)
        if m:
            end = m.end()
            value = float(m.group(0))
            if end < n and text[end] == "i" and not (end + 1 < n and text[end + 1].isalnum()):
                tokens.append(Token("IMAG", text[pos:end + 1], pos, complex(0, value)))
                pos = end + 1
            else:
                tokens.append(Token("NUM", m.group(0), pos, complex(value)))
                pos = end
            continue
        if ch in "+-*/^":
            tokens.append(Token("OP", ch, pos))
        elif ch == "(":
            tokens.append(Token("LPAREN", ch, pos))
        elif ch == ")":
            tokens.append(Token("RPAREN", ch, pos))
        elif ch == ",":
            tokens.append(Token("COMMA", ch, pos))
        elif ch == "z":
            tokens.append(Token("Z", ch, pos))
        elif ch == "l":
            tokens.append(Token("L", ch, pos))
        elif ch == "i":
            tokens.append(Token("I", ch, pos, 1j))
        else:
            raise ParseError(f"unexpected character {ch!r}", text, pos)
        pos += 1
    tokens.append(Token("EOF", "", n))
    return tokens


# AST nodes are plain tuples: ("const", c) | ("z",) | ("l",) | (op, lhs, rhs)
# | ("neg", x) | ("pow", x, k), each carrying the source offset last.

class _Parser:
    def __init__(self, text, allow_l):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.allow_l = allow_l

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.text, tok.pos)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "EOF":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance()
            node = (op.text, node, self.term(), op.pos)
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            op = self.advance()
            node = (op.text, node, self.unary(), op.pos)
        return node

    def unary(self):
        if self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance()
            inner = self.unary()
            return ("neg", inner, op.pos) if op.text == "-" else inner
        return self.factor()

    def factor(self):
        base = self.base()
        if self.tok.kind == "OP" and self.tok.text == "^":
            caret = self.advance()
            t = self.tok
            if t.kind != "NUM" or not t.text.isdigit():
                raise self.error("exponent must be a nonnegative integer")
            self.advance()
            return ("pow", base, int(t.text), caret.pos)
        return base

    def base(self):
        t = self.tok
        if t.kind in ("NUM", "IMAG", "I"):
            self.advance()
            return ("const", t.value, t.pos)
        if t.kind == "Z":
            self.advance()
            return ("z", t.pos)
        if t.kind == "L":
            if not self.allow_l:
                raise self.error("'l' is the scan parameter and is only allowed in family expressions")
            self.advance()
            return ("l", t.pos)
        if t.kind == "LPAREN":
            self.advance()
            pair = self._complex_pair()
            if pair is not None:
                return pair
            node = self.expr()
            if self.tok.kind != "RPAREN":
                raise self.error("expected ')'")
            self.advance()
            return node
        if t.kind == "EOF":
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {t.text!r}")

    def _complex_pair(self):
        # (re, im) literal: optional sign, NUM, COMMA, optional sign, NUM, RPAREN
        save = self.i
        start = self.tokens[save - 1].pos
        parts = []
        for k in range(2):
            sign = 1.0
            if self.tok.kind == "OP" and self.tok.text in "+-":
                sign = -1.0 if self.advance().text == "-" else 1.0
            if self.tok.kind != "NUM":
                self.i = save
                return None
            parts.append(sign * self.advance().value.real)
            want = "COMMA" if k == 0 else "RPAREN"
            if self.tok.kind != want:
                self.i = save
                return None
            self.advance()
        return ("const", complex(parts[0], parts[1]), start)


def parse_ast(text, allow_l=False):
    return _Parser(text, allow_l).parse()


def evaluate_ast(node, lam=None, text="", eps_b=EPS_BOUNDARY):
    """Fold an AST into a Symbol, binding the scan parameter ``l`` to ``lam``."""
    kind = node[0]
    if kind == "const":
        return Symbol([node[1]])
    if kind == "z":
        return Symbol([0.0, 1.0])
    if kind == "l":
        if lam is None:
            raise ParseError("scan parameter 'l' is unbound", text, node[-1])
        return Symbol([complex(lam)])
    if kind == "neg":
        return -evaluate_ast(node[1], lam, text, eps_b)
    if kind == "pow":
        return evaluate_ast(node[1], lam, text, eps_b) ** node[2]
    lhs = evaluate_ast(node[1], lam, text, eps_b)
    rhs = evaluate_ast(node[2], lam, text, eps_b)
    if kind == "+":
        return lhs + rhs
    if kind == "-":
        return lhs - rhs
    if kind == "*":
        return lhs * rhs
    if rhs.is_zero:
        raise ZeroPolynomialDivision("division by the zero polynomial", text, node[-1])
    return Symbol(np.convolve(lhs.num, rhs.den), np.convolve(lhs.den, rhs.num), eps_b=eps_b)


def parse_symbol(text, eps_b=EPS_BOUNDARY):
    """Parse ``text`` into a normalized rational Symbol.

    >>> parse_symbol("1/(2 + z)")
    Symbol(num=[1.0], den=[2.0, 1.0])
    """
    return evaluate_ast(parse_ast(text), text=text, eps_b=eps_b)


def parse_complex(text):
    """A constant expression such as ``0.5``, ``1+2i`` or ``(1,2)``."""
    sym = parse_symbol(text)
    if len(sym.num) > 1 or len(sym.den) > 1:
        raise ParseError("expected a complex constant", text, 0)
    return complex(sym.num[0] / sym.den[0])


class SymbolFamily:
    """An expression in ``l`` and ``z`` describing the operator family F(l, T)."""

    def __init__(self, text):
        self.text = text
        self.ast = parse_ast(text, allow_l=True)
        self._uses_l = _mentions_l(self.ast)

    def __call__(self, lam):
        return evaluate_ast(self.ast, lam, self.text)

    @property
    def uses_parameter(self):
        return self._uses_l

    def __repr__(self):
        return f"SymbolFamily({self.text!r})"


def _mentions_l(node):
    if node[0] == "l":
        return True
    return any(isinstance(child, tuple) and _mentions_l(child) for child in node[1:])


__all__ = ["parse_symbol", "parse_complex", "parse_ast", "evaluate_ast", "SymbolFamily",
           "tokenize", "HardyChaosError"]
