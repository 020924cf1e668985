"""Text input language for polynomials: a recursive-descent parser and formatter.

Grammar (whitespace is ignored, ``Xi`` and ``adj`` are case-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)*
    atom   := NUMBER | "X" INDEX | "(" expr ")" | "adj" "(" expr ")"
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import List

from ..errors import ParseError
from .polynomial import NcPolynomial, Word, add, adjoint, constant, multiply, power, scale, variable

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<adj>adj(?![0-9A-Za-z_]))
  | (?P<var>[xX](?P<index>\d+))
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE | re.IGNORECASE,
)


@dataclass(slots=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise ParseError(f"unexpected character {text[position]!r}", position)
        kind = match.lastgroup or ""
        if kind == "index":
            kind = "var"
        if kind != "space":
            tokens.append(Token(kind=kind, text=match.group(0), position=position))
        position = match.end()
    tokens.append(Token(kind="end", text="", position=len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _at_op(self, symbol: str) -> bool:
        return self.current.kind == "op" and self.current.text == symbol

    def _expect_op(self, symbol: str) -> Token:
        if not self._at_op(symbol):
            raise ParseError(f"expected {symbol!r}, found {self._describe(self.current)}", self.current.position)
        return self._advance()

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == "end" else repr(token.text)

    def parse(self) -> NcPolynomial:
        if self.current.kind == "end":
            raise ParseError("empty expression", 0)
        result = self._expr()
        if self.current.kind != "end":
            raise ParseError(
                f"expected operator, found {self._describe(self.current)} "
                "(multiplication must be written with '*')",
                self.current.position,
            )
        return result

    def _expr(self) -> NcPolynomial:
        result = self._term()
        while self._at_op("+") or self._at_op("-"):
            sign = self._advance().text
            right = self._term()
            result = add(result, right if sign == "+" else scale(right, -1.0))
        return result

    def _term(self) -> NcPolynomial:
        result = self._unary()
        while self._at_op("*"):
            self._advance()
            result = multiply(result, self._unary())
        return result

    def _unary(self) -> NcPolynomial:
        if self._at_op("-"):
            self._advance()
            return scale(self._unary(), -1.0)
        if self._at_op("+"):
            self._advance()
            return self._unary()
        return self._power()

    def _power(self) -> NcPolynomial:
        result = self._atom()
        while self._at_op("^"):
            self._advance()
            token = self.current
            if token.kind == "op" and token.text == "-":
                raise ParseError("negative exponent", token.position)
            if token.kind != "number":
                raise ParseError(f"expected exponent, found {self._describe(token)}", token.position)
            if not token.text.isdigit():
                raise ParseError(f"exponent {token.text!r} is not a nonnegative integer", token.position)
            self._advance()
            result = power(result, int(token.text))
        return result

    def _atom(self) -> NcPolynomial:
        token = self.current
        if token.kind == "number":
            value = float(token.text)
            if not math.isfinite(value):
                raise ParseError(f"number {token.text!r} is out of range", token.position)
            self._advance()
            return constant(value)
        if token.kind == "var":
            self._advance()
            index = int(token.text[1:])
            if index < 1:
                raise ParseError(f"generator index {index} is out of range", token.position)
            return variable(index)
        if token.kind == "adj":
            self._advance()
            self._expect_op("(")
            inner = self._expr()
            self._expect_op(")")
            return adjoint(inner)
        if self._at_op("("):
            self._advance()
            inner = self._expr()
            self._expect_op(")")
            return inner
        raise ParseError(f"unexpected {self._describe(token)}", token.position)


def parse(text: str) -> NcPolynomial:
    """Parse ``text`` into its canonical expanded form."""
    return _Parser(text).parse()


def format_polynomial(P: NcPolynomial) -> str:
    """Canonical text; ``parse(format_polynomial(P)) == P``."""
    if P.is_zero:
        return "0"
    pieces: List[str] = []
    for word, coefficient in P.terms.items():
        magnitude = abs(coefficient)
        body = _format_term(word, magnitude)
        if not pieces:
            pieces.append(("-" if coefficient < 0 else "") + body)
        else:
            pieces.append((" - " if coefficient < 0 else " + ") + body)
    return "".join(pieces)


def format_word(word: Word) -> str:
    return "*".join(f"X{letter}" for letter in word)


def _format_term(word: Word, magnitude: float) -> str:
    if not word:
        return _format_number(magnitude)
    if magnitude == 1.0:
        return format_word(word)
    return f"{_format_number(magnitude)}*{format_word(word)}"


def _format_number(value: float) -> str:
    if value.is_integer() and value < 1e16:
        return str(int(value))
    return repr(value)
