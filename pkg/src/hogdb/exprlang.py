"""Invariant expression mini-language: parser, printer, Kleene evaluator.

Grammar (full EBNF in docs/EXPR.md):

    expr    := and_expr { "or" and_expr }
    and_expr:= not_expr { "and" not_expr }
    not_expr:= "not" not_expr | cmp
    cmp     := sum [ ("<="|"<"|"="|"!="|">"|">=") sum ]
    sum     := term { ("+"|"-") term }
    term    := factor { ("*"|"/") factor }
    factor  := "-" factor | atom
    atom    := NUMBER | IDENT [ "(" "G" ")" ] | "(" expr ")"

Identifiers are registry short names; the functional sugar maps
"m(G)" to the matching number mu and "<name>(G)" to <name> otherwise.
Numeric atoms evaluate to exact rationals. Any subexpression touching
a PENDING, UNKNOWN, or UNDEFINED invariant value (or a division by
zero) becomes unknown, and unknowns propagate through comparisons and
the Kleene three-valued connectives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Union

from .invariants import BY_ID, InvariantId, InvariantValue, Kind


class TriBool(Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    UNKNOWN = "UNKNOWN"


class ExprError(ValueError):
    """Syntax or type error; offset is a 1-based column."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} at offset {offset}"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    inv: InvariantId


@dataclass(frozen=True)
class Neg:
    operand: "NumExpr"


@dataclass(frozen=True)
class Arith:
    op: str  # + - * /
    left: "NumExpr"
    right: "NumExpr"


@dataclass(frozen=True)
class Cmp:
    op: str  # <= < = != > >=
    left: "NumExpr"
    right: "NumExpr"


@dataclass(frozen=True)
class Not:
    operand: "BoolExpr"


@dataclass(frozen=True)
class And:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True)
class Or:
    left: "BoolExpr"
    right: "BoolExpr"


NumExpr = Union[Lit, Var, Neg, Arith]
BoolExpr = Union[Var, Cmp, Not, And, Or]
Expression = BoolExpr

# functional sugar: the paper-style m(G) is the matching number
_CALL_SUGAR = {inv: inv for inv in BY_ID}
_CALL_SUGAR["m"] = "mu"

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><=|>=|!=|[<>=+\-*/()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ExprError(f"unexpected character {rest[0]!r}", at + 1)
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num") + 1))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident") + 1))
        else:
            tokens.append(("op", m.group("op"), m.start("op") + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        if tok[0] != "end":
            self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            raise ExprError(f"expected {op!r}", offset)
        return self.take()

    def parse(self) -> Expression:
        node = self.or_expr()
        kind, value, offset = self.peek()
        if kind != "end":
            raise ExprError(f"unexpected {value!r}", offset)
        return self.as_bool(node, 1)

    def or_expr(self):
        node = self.and_expr()
        while self.at_keyword("or"):
            offset = self.take()[2]
            node = Or(self.as_bool(node, offset), self.as_bool(self.and_expr(), offset))
        return node

    def and_expr(self):
        node = self.not_expr()
        while self.at_keyword("and"):
            offset = self.take()[2]
            node = And(self.as_bool(node, offset), self.as_bool(self.not_expr(), offset))
        return node

    def not_expr(self):
        if self.at_keyword("not"):
            offset = self.take()[2]
            return Not(self.as_bool(self.not_expr(), offset))
        return self.comparison()

    def comparison(self):
        left = self.sum()
        kind, value, offset = self.peek()
        if kind == "op" and value in ("<=", "<", "=", "!=", ">", ">="):
            self.take()
            right = self.sum()
            return Cmp(value, self.as_num(left, offset), self.as_num(right, offset))
        return left

    def sum(self):
        node = self.term()
        while True:
            kind, value, offset = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                node = Arith(value, self.as_num(node, offset),
                             self.as_num(self.term(), offset))
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, value, offset = self.peek()
            if kind == "op" and value in "*/":
                self.take()
                node = Arith(value, self.as_num(node, offset),
                             self.as_num(self.factor(), offset))
            else:
                return node

    def factor(self):
        kind, value, offset = self.peek()
        if kind == "op" and value == "-":
            self.take()
            return Neg(self.as_num(self.factor(), offset))
        return self.atom()

    def atom(self):
        kind, value, offset = self.take()
        if kind == "num":
            return Lit(Fraction(value))
        if kind == "ident":
            if value in ("and", "or", "not"):
                raise ExprError(f"unexpected keyword {value!r}", offset)
            name = value
            if self.peek()[:2] == ("op", "("):
                self.take()
                akind, avalue, aoffset = self.take()
                if akind != "ident" or avalue != "G":
                    raise ExprError("expected G inside invariant call", aoffset)
                self.expect_op(")")
                name = _CALL_SUGAR.get(value)
                if name is None:
                    raise ExprError(f"unknown invariant {value!r}", offset)
            if name not in BY_ID:
                raise ExprError(f"unknown invariant {name!r}", offset)
            return Var(BY_ID[name])
        if kind == "op" and value == "(":
            node = self.or_expr()
            self.expect_op(")")
            return node
        raise ExprError("expected a value", offset)

    def at_keyword(self, word: str) -> bool:
        kind, value, _ = self.peek()
        return kind == "ident" and value == word

    @staticmethod
    def as_num(node, offset: int) -> NumExpr:
        if isinstance(node, (Cmp, Not, And, Or)):
            raise ExprError("boolean expression used as a number", offset)
        if isinstance(node, Var) and node.inv.kind is Kind.BOOLEAN:
            raise ExprError(f"boolean invariant {node.inv.id!r} used as a number", offset)
        return node

    @staticmethod
    def as_bool(node, offset: int) -> BoolExpr:
        if isinstance(node, (Lit, Neg, Arith)):
            raise ExprError("numeric expression used as a condition", offset)
        if isinstance(node, Var) and node.inv.kind is not Kind.BOOLEAN:
            raise ExprError(f"numeric invariant {node.inv.id!r} used as a condition", offset)
        return node


def parse_expression(text: str) -> Expression:
    """Parse to an immutable typed tree; raises ExprError with position."""
    return _Parser(text).parse()


# -- evaluation ---------------------------------------------------------------

def _numeric(e: NumExpr, values: Mapping[str, InvariantValue]) -> Fraction | None:
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        v = values.get(e.inv.id)
        if v is None or not v.is_computed or v.kind is not Kind.RATIONAL:
            return None
        return v.value
    if isinstance(e, Neg):
        x = _numeric(e.operand, values)
        return None if x is None else -x
    x = _numeric(e.left, values)
    y = _numeric(e.right, values)
    if x is None or y is None:
        return None
    if e.op == "+":
        return x + y
    if e.op == "-":
        return x - y
    if e.op == "*":
        return x * y
    if y == 0:
        return None  # division by zero is unknown, not an error
    return x / y


_CMP = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def evaluate(e: Expression, values: Mapping[str, InvariantValue]) -> TriBool:
    """Three-valued evaluation against a record's invariant values."""
    if isinstance(e, Var):
        v = values.get(e.inv.id)
        if v is None or not v.is_computed or v.kind is not Kind.BOOLEAN:
            return TriBool.UNKNOWN
        return TriBool.TRUE if v.value else TriBool.FALSE
    if isinstance(e, Cmp):
        x = _numeric(e.left, values)
        y = _numeric(e.right, values)
        if x is None or y is None:
            return TriBool.UNKNOWN
        return TriBool.TRUE if _CMP[e.op](x, y) else TriBool.FALSE
    if isinstance(e, Not):
        inner = evaluate(e.operand, values)
        if inner is TriBool.UNKNOWN:
            return TriBool.UNKNOWN
        return TriBool.FALSE if inner is TriBool.TRUE else TriBool.TRUE
    if isinstance(e, And):
        a = evaluate(e.left, values)
        b = evaluate(e.right, values)
        if a is TriBool.FALSE or b is TriBool.FALSE:
            return TriBool.FALSE
        if a is TriBool.TRUE and b is TriBool.TRUE:
            return TriBool.TRUE
        return TriBool.UNKNOWN
    if isinstance(e, Or):
        a = evaluate(e.left, values)
        b = evaluate(e.right, values)
        if a is TriBool.TRUE or b is TriBool.TRUE:
            return TriBool.TRUE
        if a is TriBool.FALSE and b is TriBool.FALSE:
            return TriBool.FALSE
        return TriBool.UNKNOWN
    raise TypeError(f"not a boolean expression: {e!r}")


# -- printing -----------------------------------------------------------------

def format_expression(e) -> str:
    """Parseable text form; parse(format(e)) evaluates identically to e."""
    return _fmt(e)


def _fmt(e) -> str:
    if isinstance(e, Lit):
        f = e.value
        if f.denominator == 1:
            return str(f.numerator) if f.numerator >= 0 else f"(0 - {-f.numerator})"
        s = f"{abs(f.numerator)}/{f.denominator}"
        return s if f.numerator >= 0 else f"(0 - {s})"
    if isinstance(e, Var):
        return e.inv.id
    if isinstance(e, Neg):
        return f"(-{_fmt_num_atom(e.operand)})"
    if isinstance(e, Arith):
        return f"({_fmt(e.left)} {e.op} {_fmt(e.right)})"
    if isinstance(e, Cmp):
        return f"{_fmt(e.left)} {e.op} {_fmt(e.right)}"
    if isinstance(e, Not):
        return f"not ({_fmt(e.operand)})"
    if isinstance(e, And):
        return f"({_fmt(e.left)}) and ({_fmt(e.right)})"
    if isinstance(e, Or):
        return f"({_fmt(e.left)}) or ({_fmt(e.right)})"
    raise TypeError(f"not an expression node: {e!r}")


def _fmt_num_atom(e) -> str:
    s = _fmt(e)
    return s if s.startswith("(") or not isinstance(e, Arith) else f"({s})"


def expression_identifiers(e) -> set[str]:
    """Registry short names mentioned anywhere in the tree."""
    if isinstance(e, Lit):
        return set()
    if isinstance(e, Var):
        return {e.inv.id}
    if isinstance(e, (Neg, Not)):
        return expression_identifiers(e.operand)
    return expression_identifiers(e.left) | expression_identifiers(e.right)
