"""Text syntax for expressions, e.g. ``i*x*j*x + inv(x)`` or ``(1,2,0,0)*x^2 - 3/2``."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from ncalc.algebra.structure import Algebra, AlgebraElement
from ncalc.errors import ExpressionSyntaxError
from ncalc.utils.rationals import parse_scalar

from .expression import Const, Inverse, NcExpression, Prod, Sum, Var, scalar_constant

_TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:/\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^(),])"
    r")"
)

VARIABLE_NAME = "x"
INVERSE_NAME = "inv"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(f"Unexpected character '{text[offset]}'", offset)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, algebra: Algebra) -> None:
        self.text = text
        self.algebra = algebra
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _peek(self, offset: int) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "end of input"
            raise ExpressionSyntaxError(f"Expected '{text}' but found '{found}'", self.current.position)
        return self._advance()

    def parse(self) -> NcExpression:
        expression = self._sum()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"Unexpected '{self.current.text}'", self.current.position)
        return expression

    def _sum(self) -> NcExpression:
        terms = [self._product()]
        while self.current.text in {"+", "-"}:
            sign = self._advance().text
            term = self._product()
            terms.append(term if sign == "+" else Prod((scalar_constant(self.algebra, -1), term)))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def _product(self) -> NcExpression:
        factors = [self._unary()]
        while self.current.text == "*":
            self._advance()
            factors.append(self._unary())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def _unary(self) -> NcExpression:
        if self.current.text == "-":
            self._advance()
            return Prod((scalar_constant(self.algebra, -1), self._unary()))
        if self.current.text == "+":
            self._advance()
            return self._unary()
        return self._power()

    def _power(self) -> NcExpression:
        base = self._atom()
        if self.current.text != "^":
            return base
        self._advance()
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise ExpressionSyntaxError("Exponent must be a nonnegative integer", token.position)
        self._advance()
        exponent = int(token.text)
        if exponent == 0:
            return Const(self.algebra.one())
        return Prod(tuple([base] * exponent))

    def _tuple_ahead(self) -> bool:
        offset = 1
        if self._peek(offset).text in {"-", "+"}:
            offset += 1
        return self._peek(offset).kind == "number" and self._peek(offset + 1).text == ","

    def _atom(self) -> NcExpression:
        token = self.current
        if token.kind == "number":
            self._advance()
            return scalar_constant(self.algebra, self._scalar(token))
        if token.kind == "name":
            self._advance()
            if token.text == INVERSE_NAME and self.current.text == "(":
                self._advance()
                child = self._sum()
                self._expect(")")
                return Inverse(child)
            if token.text == VARIABLE_NAME:
                return Var(self.algebra)
            if token.text in self.algebra.basis_labels:
                return Const(self.algebra.basis(token.text))
            raise ExpressionSyntaxError(
                f"Unknown name '{token.text}' for algebra '{self.algebra.name}'", token.position
            )
        if token.text == "(":
            if self._tuple_ahead():
                return Const(self._coordinates())
            self._advance()
            inner = self._sum()
            self._expect(")")
            return inner
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"Unexpected '{found}'", token.position)

    def _coordinates(self) -> AlgebraElement:
        start = self._expect("(").position
        values = []
        while True:
            sign = 1
            if self.current.text in {"-", "+"}:
                sign = -1 if self._advance().text == "-" else 1
            token = self.current
            if token.kind != "number":
                raise ExpressionSyntaxError("Coordinate tuples may only contain numbers", token.position)
            self._advance()
            values.append(sign * self._scalar(token))
            if self.current.text == ",":
                self._advance()
                continue
            self._expect(")")
            break
        if len(values) != self.algebra.dim:
            raise ExpressionSyntaxError(
                f"Coordinate tuple has {len(values)} entries, '{self.algebra.name}' has dimension {self.algebra.dim}",
                start,
            )
        return self.algebra.element(values)

    @staticmethod
    def _scalar(token: Token):
        try:
            return parse_scalar(token.text)
        except ValueError as exc:
            raise ExpressionSyntaxError(str(exc), token.position) from exc


def parse_expression(text: str, algebra: Algebra) -> NcExpression:
    """Parse expression text over ``algebra``; constants are basis labels, numbers or coordinate tuples."""

    return _Parser(text, algebra).parse()


def _is_label(label: str) -> bool:
    return re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", label) is not None and label not in {VARIABLE_NAME, INVERSE_NAME}


def _format_constant(value: AlgebraElement) -> str:
    labels = value.algebra.basis_labels
    if all(_is_label(label) for label in labels[1:]) and (labels[0] == "1" or _is_label(labels[0])):
        return value.format()
    return "(" + ",".join(str(coord) for coord in value.coords) + ")"


def _needs_parentheses(text: str) -> bool:
    if text.startswith("("):
        return False
    return " " in text or text.startswith("-")


def format_expression(p: NcExpression) -> str:
    """Render an expression in the syntax `parse_expression` reads; runs of x print as powers."""

    if isinstance(p, Const):
        return _format_constant(p.value)
    if isinstance(p, Var):
        return VARIABLE_NAME
    if isinstance(p, Inverse):
        return f"{INVERSE_NAME}({format_expression(p.child)})"
    if isinstance(p, Sum):
        if not p.terms:
            return "0"
        text = " + ".join(format_expression(term) for term in p.terms)
        return text.replace("+ -", "- ")
    if isinstance(p, Prod):
        if not p.factors:
            return "1"
        head = p.factors[0]
        if len(p.factors) > 1 and isinstance(head, Const) and head.value == -head.value.algebra.one():
            return "-" + format_expression(Prod(p.factors[1:]))
        pieces: List[str] = []
        run = 0
        for factor in list(p.factors) + [None]:
            if isinstance(factor, Var):
                run += 1
                continue
            if run:
                pieces.append(VARIABLE_NAME if run == 1 else f"{VARIABLE_NAME}^{run}")
                run = 0
            if factor is None:
                break
            text = format_expression(factor)
            if isinstance(factor, Sum) or (isinstance(factor, (Const, Prod)) and _needs_parentheses(text)):
                text = f"({text})"
            pieces.append(text)
        return "*".join(pieces)
    raise TypeError(f"Unknown expression node {type(p).__name__}.")
