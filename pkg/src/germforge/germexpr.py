"""Germ expression trees: a small recursive-descent parser and exact Taylor
expansion into jets.

Grammar (whitespace insignificant):

    expr     := term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := base ('^' unsigned-int)?
    base     := rational | ident | '(' expr ')' | func '(' expr ')'
    func     := 'sin' | 'cos' | 'exp'
    rational := int ('/' unsigned-int)?
    ident    := letter (letter|digit|'_')*
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .jets import Jet

FUNCTIONS = ("sin", "cos", "exp")


class GermSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class UnknownVariableError(ValueError):
    pass


class NonUnitDivisorError(ValueError):
    """Division by a germ vanishing at the origin."""


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Func:
    name: str
    arg: "Expr"


Expr = Union[Num, Var, BinOp, Pow, Func]


class _Parser:
    def __init__(self, text: str, variables):
        self.text = text
        self.pos = 0
        self.variables = tuple(variables)

    def error(self, message):
        raise GermSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.accept(ch):
            self.error("expected %r" % ch)

    def parse(self) -> Expr:
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return e

    def expr(self) -> Expr:
        if self.peek() == "-":
            self.pos += 1
            node = BinOp("-", Num(Fraction(0)), self.term())
        else:
            self.accept("+")
            node = self.term()
        while True:
            ch = self.peek()
            if ch and ch in "+-":
                self.pos += 1
                node = BinOp(ch, node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            ch = self.peek()
            if ch and ch in "*/":
                self.pos += 1
                node = BinOp(ch, node, self.factor())
            else:
                return node

    def factor(self) -> Expr:
        node = self.base()
        if self.peek() == "^":
            self.pos += 1
            node = Pow(node, self.unsigned_int())
        return node

    def unsigned_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def base(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch.isdigit():
            num = self.unsigned_int()
            self.skip_ws()
            if self.peek() == "/":
                save = self.pos
                self.pos += 1
                if self.peek().isdigit():
                    den = self.unsigned_int()
                    if den == 0:
                        self.error("zero denominator")
                    return Num(Fraction(num, den))
                self.pos = save
            return Num(Fraction(num))
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start : self.pos]
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(name, arg)
            if name not in self.variables:
                raise UnknownVariableError("unknown variable %r" % name)
            return Var(name)
        self.error("unexpected character %r" % ch)


def parse_germ(text: str, variables) -> Expr:
    """Parse `text` over the ordered variable list `variables`."""
    return _Parser(text, variables).parse()


def expr_to_string(e: Expr) -> str:
    """Render an expression tree back into the input grammar."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pow):
        return "%s^%d" % (_atom(e.base), e.exponent)
    if isinstance(e, Func):
        return "%s(%s)" % (e.name, expr_to_string(e.arg))
    if isinstance(e, BinOp):
        left = expr_to_string(e.left)
        right = expr_to_string(e.right)
        if e.op in "*/":
            left = _atom(e.left)
            right = _atom(e.right)
        elif e.op == "-":
            if isinstance(e.right, BinOp) and e.right.op in "+-":
                right = "(%s)" % right
        return "%s %s %s" % (left, e.op, right)
    raise TypeError(e)


def _atom(e: Expr) -> str:
    s = expr_to_string(e)
    if isinstance(e, (BinOp,)) or (isinstance(e, Num) and e.value < 0):
        return "(%s)" % s
    return s


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _series(name: str, u: Jet, k: int) -> Jet:
    """Compose a transcendental series with a jet vanishing at the origin."""
    if u.constant_term() != 0:
        raise NonUnitDivisorError(
            "%s() argument must vanish at the origin for exact rational "
            "expansion" % name
        )
    variables = u.variables
    acc = Jet.zero(variables, k)
    if name == "exp":
        acc = Jet.constant(1, variables, k)
    if u.is_zero():
        return acc
    ord_u = u.order()
    power = Jet.constant(1, variables, k)
    nmax = k // ord_u
    for n in range(1, nmax + 1):
        power = power * u
        if power.is_zero():
            break
        if name == "exp":
            coeff = Fraction(1, _factorial(n))
        elif name == "sin":
            if n % 2 == 0:
                continue
            coeff = Fraction((-1) ** ((n - 1) // 2), _factorial(n))
        elif name == "cos":
            if n % 2 == 1:
                continue
            coeff = Fraction((-1) ** (n // 2), _factorial(n))
        else:
            raise ValueError("unknown function %r" % name)
        acc = acc + power.scale(coeff)
    if name == "cos":
        acc = acc + Jet.constant(1, variables, k)
    return acc


def taylor_expand(e: Expr, variables, k: int) -> Jet:
    """Degree-<=k Taylor polynomial of the expression at the origin, exact
    over Q.  Divisors must be unit germs (nonzero constant term)."""
    variables = tuple(variables)

    def rec(node) -> Jet:
        if isinstance(node, Num):
            return Jet.constant(node.value, variables, k)
        if isinstance(node, Var):
            return Jet.variable(node.name, variables, k)
        if isinstance(node, Pow):
            return rec(node.base) ** node.exponent
        if isinstance(node, Func):
            return _series(node.name, rec(node.arg), k)
        if isinstance(node, BinOp):
            a = rec(node.left)
            b = rec(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if node.op == "/":
                if b.constant_term() == 0:
                    raise NonUnitDivisorError(
                        "division by a germ vanishing at the origin"
                    )
                return a * b.invert()
        raise TypeError(node)

    return rec(e)


def parse_and_expand(text: str, variables, k: int) -> Jet:
    return taylor_expand(parse_germ(text, variables), variables, k)
