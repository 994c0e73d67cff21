"""Text grammar for bivariate polynomials with exact rational coefficients.

Grammar: +, -, *, ^ (nonnegative integer exponents), / (constant divisor
only), integer literals, variables x and y, parentheses.  No implicit
multiplication: "2x" is a syntax error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomial import BivariatePoly


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str    # num, var, op, lparen, rparen, end
    text: str
    line: int
    column: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(source):
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(source) and source[j].isdigit():
                j += 1
            tokens.append(_Token("num", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(source) and source[j].isalpha():
                j += 1
            name = source[i:j]
            if name not in ("x", "y"):
                raise ParseError(f"unknown variable '{name}'", line, start_col)
            tokens.append(_Token("var", name, line, start_col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^":
            tokens.append(_Token("op", ch, line, start_col))
        elif ch == "(":
            tokens.append(_Token("lparen", ch, line, start_col))
        elif ch == ")":
            tokens.append(_Token("rparen", ch, line, start_col))
        else:
            raise ParseError(f"unexpected character '{ch}'", line, start_col)
        col += 1
        i += 1
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        t = self.cur
        self.pos += 1
        return t

    def error(self, message: str):
        raise ParseError(message, self.cur.line, self.cur.column)

    def expr(self) -> BivariatePoly:
        t = self.cur
        neg = False
        if t.kind == "op" and t.text in "+-":
            neg = t.text == "-"
            self.advance()
        acc = self.term()
        if neg:
            acc = -acc
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self.advance().text
            rhs = self.term()
            acc = acc - rhs if op == "-" else acc + rhs
        return acc

    def term(self) -> BivariatePoly:
        acc = self.factor()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self.advance()
            rhs = self.factor()
            if op.text == "*":
                acc = acc * rhs
            else:
                if rhs.degree > 0 or rhs.is_zero():
                    raise ParseError(
                        "divisor must be a nonzero constant", op.line, op.column
                    )
                acc = acc * BivariatePoly.constant(Fraction(1) / rhs.coefficient(0, 0))
        return acc

    def factor(self) -> BivariatePoly:
        base = self.atom()
        if self.cur.kind == "op" and self.cur.text == "^":
            caret = self.advance()
            e = self.cur
            if e.kind != "num":
                raise ParseError("exponent must be a nonnegative integer",
                                 caret.line, caret.column)
            self.advance()
            return base ** int(e.text)
        return base

    def atom(self) -> BivariatePoly:
        t = self.cur
        if t.kind == "num":
            self.advance()
            return BivariatePoly.constant(Fraction(int(t.text)))
        if t.kind == "var":
            self.advance()
            return BivariatePoly.x() if t.text == "x" else BivariatePoly.y()
        if t.kind == "lparen":
            self.advance()
            inner = self.expr()
            if self.cur.kind != "rparen":
                self.error("expected ')'")
            self.advance()
            return inner
        if t.kind == "op" and t.text == "-":
            self.advance()
            return -self.atom()
        self.error(f"unexpected {t.kind if t.kind != 'op' else repr(t.text)}")


def parse_polynomial(text: str) -> BivariatePoly:
    """Parse polynomial text to exact rational coefficients.

    Raises ParseError with line/column on malformed input.
    """
    parser = _Parser(_tokenize(text))
    result = parser.expr()
    if parser.cur.kind != "end":
        parser.error("trailing input")
    return result
