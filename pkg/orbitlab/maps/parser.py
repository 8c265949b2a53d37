"""Polynomial strings and map descriptions.

Grammar (integer coefficients, variables x0..xn)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | VAR | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, List, Mapping, Union

from orbitlab.algebra.matrix import IntMatrix
from orbitlab.algebra.polynomial import MultiPoly
from orbitlab.errors import ConfigError, ParseError

TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+)|(?P<op>[-+*^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        while pos < len(text) and text[pos] in " \t\r\n":
            if text[pos] == "\n":
                line, line_start = line + 1, pos + 1
            pos += 1
        if pos >= len(text):
            break
        m = TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), line, column))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.tokens = tokenize(text)
        self.index = 0
        self.nvars = nvars

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _error(self, message: str, token: Token = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def _accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def parse(self) -> MultiPoly:
        if self.current.kind == "end":
            raise self._error("empty polynomial")
        result = self.expr()
        if self.current.kind != "end":
            raise self._error(f"unexpected token {self.current.text!r}")
        return result

    def expr(self) -> MultiPoly:
        result = self.term()
        while True:
            if self._accept("+"):
                result = result + self.term()
            elif self._accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> MultiPoly:
        result = self.unary()
        while self._accept("*"):
            result = result * self.unary()
        return result

    def unary(self) -> MultiPoly:
        if self._accept("-"):
            return -self.unary()
        if self._accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self._accept("^"):
            token = self.current
            if token.kind != "int":
                raise self._error("exponent must be a nonnegative integer")
            self.index += 1
            return base ** int(token.text)
        return base

    def atom(self) -> MultiPoly:
        token = self.current
        if token.kind == "int":
            self.index += 1
            return MultiPoly.constant(self.nvars, int(token.text))
        if token.kind == "var":
            index = int(token.text[1:])
            if index >= self.nvars:
                raise self._error(f"variable {token.text} outside x0..x{self.nvars - 1}")
            self.index += 1
            return MultiPoly.variable(self.nvars, index)
        if self._accept("("):
            inner = self.expr()
            if not self._accept(")"):
                raise self._error("missing closing parenthesis")
            return inner
        if token.kind == "end":
            raise self._error("unexpected end of input")
        raise self._error(f"unexpected token {token.text!r}")


def parse_polynomial(text: str, nvars: int) -> MultiPoly:
    """Parse a polynomial in x0..x{nvars-1}; raises ``ParseError`` with position."""
    return _Parser(text, nvars).parse()


def parse_map_description(desc: Mapping[str, Any]) -> Union["RationalMapPn", "MonomialMap"]:
    """Build a map from a config record (homogeneous, monomial or named)."""
    from orbitlab.maps.catalog import named_map
    from orbitlab.maps.monomial import MonomialMap
    from orbitlab.maps.rational_map import reduce_map

    if not isinstance(desc, Mapping):
        raise ConfigError("map description must be an object")
    kind = desc.get("kind")
    if kind == "homogeneous":
        try:
            n = int(desc["n"])
            coords = desc["coords"]
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"homogeneous map needs integer 'n' and 'coords': {e}") from e
        if not isinstance(coords, list) or len(coords) != n + 1:
            raise ConfigError(f"homogeneous map on P^{n} needs {n + 1} coordinate strings")
        polys = []
        for line, text in enumerate(coords, start=1):
            try:
                polys.append(parse_polynomial(str(text), n + 1))
            except ParseError as e:
                raise ParseError(f"coordinate {line - 1}: {str(e).split(': ', 1)[-1]}", line, e.column) from e
        return reduce_map(polys)
    if kind == "monomial":
        rows = desc.get("matrix")
        if not isinstance(rows, list) or not rows:
            raise ConfigError("monomial map needs a nonempty 'matrix'")
        try:
            return MonomialMap(IntMatrix.from_rows(rows))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"matrix entries must be integers: {e}") from e
    if kind == "named":
        name = desc.get("name")
        params = {k: v for k, v in desc.items() if k not in ("kind", "name")}
        return named_map(name, **params)
    raise ConfigError(f"unknown map kind {kind!r}")
