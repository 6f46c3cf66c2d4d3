"""Arithmetic expression language for user-defined immersion components.

Grammar (lowest to highest binding):

    expr    := term (('+' | '-') term)*          left associative
    term    := power (('*' | '/') power)*        left associative
    power   := unary ('^' power)?                right associative
    unary   := '-' unary | atom                  unary minus binds above '^'
    atom    := NUMBER | NAME | NAME '(' args ')' | '(' expr ')'

Functions: sin, cos, tan, exp, log, sqrt (arity 1) and pow (arity 2).
Note the precedence choice: ``-x^2`` parses as ``(-x)^2``.

Errors carry a 1-based character offset and either an expected-token message
or, for unknown names, the list of declared parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ExprError

FUNCTIONS = {
    "sin": (1, math.sin),
    "cos": (1, math.cos),
    "tan": (1, math.tan),
    "exp": (1, math.exp),
    "log": (1, math.log),
    "sqrt": (1, math.sqrt),
    "pow": (2, math.pow),
}


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    child: "ExprAst"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple["ExprAst", ...]


ExprAst = Const | Param | Unary | Binary | Call


@dataclass(frozen=True)
class _Token:
    kind: str  # number | name | op | lparen | rparen | comma | end
    text: str
    offset: int  # 1-based character offset


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        start = i + 1
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            jx = i
            seen_dot = False
            while jx < n and (text[jx].isdigit() or (text[jx] == "." and not seen_dot)):
                seen_dot = seen_dot or text[jx] == "."
                jx += 1
            if jx < n and text[jx] in "eE":
                kx = jx + 1
                if kx < n and text[kx] in "+-":
                    kx += 1
                if kx < n and text[kx].isdigit():
                    jx = kx
                    while jx < n and text[jx].isdigit():
                        jx += 1
            tokens.append(_Token("number", text[i:jx], start))
            i = jx
        elif ch.isalpha() or ch == "_":
            jx = i
            while jx < n and (text[jx].isalnum() or text[jx] == "_"):
                jx += 1
            tokens.append(_Token("name", text[i:jx], start))
            i = jx
        elif ch in "+-*/^":
            tokens.append(_Token("op", ch, start))
            i += 1
        elif ch == "(":
            tokens.append(_Token("lparen", ch, start))
            i += 1
        elif ch == ")":
            tokens.append(_Token("rparen", ch, start))
            i += 1
        elif ch == ",":
            tokens.append(_Token("comma", ch, start))
            i += 1
        else:
            raise ExprError(f"unexpected character {ch!r}", start)
    tokens.append(_Token("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], parameters: tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.parameters = parameters

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprError(f"expected {what}", tok.offset)
        return self.advance()

    def parse(self) -> ExprAst:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError(f"unexpected token {tok.text!r}", tok.offset)
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.power()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = Binary(op, node, self.power())
        return node

    def power(self) -> ExprAst:
        node = self.unary()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            node = Binary("^", node, self.power())
        return node

    def unary(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Unary("-", self.unary())
        return self.atom()

    def atom(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if self.peek().kind == "lparen":
                if tok.text not in FUNCTIONS:
                    raise ExprError(
                        f"unknown function {tok.text!r}; known functions: "
                        + ", ".join(sorted(FUNCTIONS)), tok.offset)
                arity = FUNCTIONS[tok.text][0]
                self.advance()
                args = [self.expr()]
                while self.peek().kind == "comma":
                    self.advance()
                    args.append(self.expr())
                self.expect("rparen", "')'")
                if len(args) != arity:
                    raise ExprError(
                        f"function {tok.text!r} takes {arity} argument(s), "
                        f"got {len(args)}", tok.offset)
                return Call(tok.text, tuple(args))
            if tok.text not in self.parameters:
                declared = ", ".join(self.parameters) if self.parameters else "(none)"
                raise ExprError(
                    f"unknown identifier {tok.text!r}; declared parameters: "
                    f"{declared}", tok.offset)
            return Param(tok.text)
        if tok.kind == "lparen":
            self.advance()
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        raise ExprError("expected expression", tok.offset)


def parse_expression(text: str, parameters=()) -> ExprAst:
    """Parse ``text`` into an AST; names must be declared in ``parameters``."""
    return _Parser(_tokenize(text), tuple(parameters)).parse()


def evaluate(node: ExprAst, bindings: dict[str, float]) -> float:
    """Evaluate an AST at a parameter binding."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Param):
        return float(bindings[node.name])
    if isinstance(node, Unary):
        return -evaluate(node.child, bindings)
    if isinstance(node, Binary):
        a = evaluate(node.left, bindings)
        b = evaluate(node.right, bindings)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
        return a**b
    if isinstance(node, Call):
        fn = FUNCTIONS[node.fn][1]
        return fn(*(evaluate(arg, bindings) for arg in node.args))
    raise TypeError(f"not an expression node: {node!r}")
