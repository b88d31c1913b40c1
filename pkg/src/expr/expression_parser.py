"""
Expression Parser
Tokenizer, recursive-descent parser and printer for polynomial expressions in the
command-line grammar:

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] INT)?        (a negative exponent only on mu)
    atom   := literal | variable | 'mu' | '(' expr ')'
    literal:= INT ('/' INT)? ['i'] | 'i'

Offsets are 1-based; the end of input sits at len(source) + 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from ..errors import ExprSyntaxError
from ..exact import GaussRational, HomPoly, MuScalar, default_names

_IDENTIFIER = re.compile(r"z\d+|x[12][12]|pi[12]|mu|i")
_OPERATORS = "+-*/^()"


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, IMAG, OP, END
    text: str
    offset: int


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: GaussRational


@dataclass(frozen=True)
class Var:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Mu:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Mu, Neg, BinOp, Pow]


# -- tokenizer ----------------------------------------------------------------


def tokenize(source: str) -> List[Token]:
    """Split source into tokens, each tagged with its 1-based offset."""
    tokens: List[Token] = []
    idx = 0
    while idx < len(source):
        c = source[idx]
        if c.isspace():
            idx += 1
            continue
        if c.isdigit():
            start = idx
            while idx < len(source) and source[idx].isdigit():
                idx += 1
            tokens.append(Token("INT", source[start:idx], start + 1))
            continue
        if c.isalpha():
            start = idx
            while idx < len(source) and source[idx].isalpha():
                idx += 1
            while idx < len(source) and source[idx].isdigit():
                idx += 1
            word = source[start:idx]
            if not _IDENTIFIER.fullmatch(word):
                raise ExprSyntaxError(f"Unknown identifier {word!r}", start + 1)
            tokens.append(Token("IMAG" if word == "i" else "NAME", word, start + 1))
            continue
        if c in _OPERATORS:
            tokens.append(Token("OP", c, idx + 1))
            idx += 1
            continue
        raise ExprSyntaxError(f"Unexpected character {c!r}", idx + 1)
    tokens.append(Token("END", "", len(source) + 1))
    return tokens


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def at_op(self, *ops: str) -> bool:
        return self.current.kind == "OP" and self.current.text in ops

    def fail(self, message: str, expected: Sequence[str]) -> ExprSyntaxError:
        found = self.current.text or "end of input"
        return ExprSyntaxError(f"{message}, found {found!r}", self.current.offset, expected)

    def parse(self) -> Expr:
        expr = self.expr()
        if self.current.kind != "END":
            raise self.fail("Unexpected token", ["+", "-", "*", "end of input"])
        return expr

    def expr(self) -> Expr:
        negate = False
        if self.at_op("+", "-"):
            negate = self.advance().text == "-"
        node = self.term()
        if negate:
            node = Neg(node)
        while self.at_op("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at_op("*"):
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        base = self.atom()
        if not self.at_op("^"):
            return base
        self.advance()
        sign = 1
        if self.at_op("-"):
            minus = self.advance()
            if not isinstance(base, Mu):
                raise ExprSyntaxError("Negative exponents are only allowed on mu", minus.offset)
            sign = -1
        if self.current.kind != "INT":
            raise self.fail("Expected an integer exponent", ["integer"])
        return Pow(base, sign * int(self.advance().text))

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "INT":
            return self.literal()
        if token.kind == "IMAG":
            self.advance()
            return Num(GaussRational(0, 1))
        if token.kind == "NAME":
            self.advance()
            return Mu() if token.text == "mu" else Var(token.text, token.offset)
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            if not self.at_op(")"):
                raise self.fail("Expected closing parenthesis", [")", "+", "-", "*"])
            self.advance()
            return inner
        raise self.fail("Expected a number, variable or '('", ["number", "variable", "mu", "i", "("])

    def literal(self) -> Num:
        numerator = self.advance()
        value = Fraction(int(numerator.text))
        if self.at_op("/"):
            self.advance()
            if self.current.kind != "INT":
                raise self.fail("Expected a denominator", ["integer"])
            denominator = self.advance()
            if int(denominator.text) == 0:
                raise ExprSyntaxError("Zero denominator", denominator.offset)
            value = value / int(denominator.text)
        previous = self.tokens[self.pos - 1]
        if self.current.kind == "IMAG" and self.current.offset == previous.offset + len(previous.text):
            self.advance()
            return Num(GaussRational(0, value))
        return Num(GaussRational(value))


def parse(source: str) -> Expr:
    """
    Parse an expression.

    Raises:
        ExprSyntaxError: With the 1-based offset of the offending token
    """
    return _Parser(source).parse()


# -- evaluation and printing --------------------------------------------------


def to_poly(expr: Expr, names: Optional[Sequence[str]] = None, nvars: Optional[int] = None) -> HomPoly:
    """
    Evaluate an expression in the polynomial ring with the given variable names.

    Args:
        expr: Parsed expression
        names: Variable names of the ring, in index order
        nvars: Ring size when names are the default z0..z{n-1}

    Raises:
        ExprSyntaxError: If a variable is not part of the ring
    """
    if names is None:
        names = default_names(nvars if nvars is not None else 0)
    names = list(names)
    n = len(names)

    def walk(node: Expr) -> HomPoly:
        if isinstance(node, Num):
            return HomPoly.constant(n, node.value)
        if isinstance(node, Mu):
            return HomPoly.constant(n, MuScalar.mu(1))
        if isinstance(node, Var):
            if node.name not in names:
                raise ExprSyntaxError(
                    f"Variable {node.name!r} is not in the ring {', '.join(names)}",
                    node.offset,
                    names,
                )
            return HomPoly.variable(n, names.index(node.name))
        if isinstance(node, Neg):
            return -walk(node.operand)
        if isinstance(node, Pow):
            if isinstance(node.base, Mu):
                return HomPoly.constant(n, MuScalar.mu(node.exponent))
            return walk(node.base) ** node.exponent
        left, right = walk(node.left), walk(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right

    return walk(expr)


def parse_poly(source: str, names: Optional[Sequence[str]] = None, nvars: Optional[int] = None) -> HomPoly:
    return to_poly(parse(source), names=names, nvars=nvars)


_PRECEDENCE = {"+": 1, "-": 1, "*": 2}


def render_expr(expr: Expr) -> str:
    """Print an expression with the minimal parentheses the grammar needs."""

    def show(node: Expr, context: int) -> str:
        if isinstance(node, Num):
            text = str(node.value)
            plain = node.value.is_real() and node.value.re.denominator == 1 and node.value.re >= 0
            return text if plain else f"({text})"
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Mu):
            return "mu"
        if isinstance(node, Neg):
            text = f"-{show(node.operand, 2)}"
            return f"({text})" if context > 0 else text
        if isinstance(node, Pow):
            return f"{show(node.base, 3)}^{node.exponent}"
        prec = _PRECEDENCE[node.op]
        left = show(node.left, prec)
        right = show(node.right, prec if node.op == "+" else prec + 1)
        text = f"{left}*{right}" if node.op == "*" else f"{left} {node.op} {right}"
        return f"({text})" if prec < context else text

    return show(expr, 0)
