"""Expression language for polynomial and rational inputs.

Grammar (precedence high to low, all binary operators left associative)::

    atom    := number ['i'] | 'z' | 'i' | '(' expr ')' | call
    call    := 'fall' '(' expr ',' int ')' | 'shift' '(' expr ',' expr ')'
             | 'delta' '(' expr [',' int] ')'
    power   := atom ('^' int)*
    unary   := '-' unary | '+' unary | power
    term    := unary (('*' | '/') unary)*
    expr    := term (('+' | '-') term)*

Decimals are read as exact rationals.  Operations whose operands are all
literal numbers are folded, so ``1/2`` and ``-3`` are single number nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..poly import Z, fall_expr
from ..rational import RationalFunction, as_rational
from ..scalar import GaussianRational, I, as_gr, format_scalar

__all__ = [
    "ExpressionSyntaxError",
    "Num",
    "Var",
    "BinOp",
    "Neg",
    "Pow",
    "Call",
    "parse",
    "unparse",
    "evaluate",
    "parse_function",
]


class ExpressionSyntaxError(SyntaxError):
    """Parse failure with the UTF-8 byte ``offset`` and the set of ``expected`` tokens."""

    def __init__(self, message: str, text: str, pos: int, expected: set[str] | frozenset = frozenset()):
        self.offset_bytes = len(text[:pos].encode("utf-8"))
        self.expected = sorted(expected)
        hint = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at byte {self.offset_bytes}{hint}")
        self.text = text
        self.offset = self.offset_bytes


@dataclass(frozen=True)
class Num:
    value: GaussianRational


@dataclass(frozen=True)
class Var:
    name: str = "z"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Node = Union[Num, Var, BinOp, Neg, Pow, Call]

_TOKEN = re.compile(r"(?P<num>(?:\d+(?:\.\d*)?|\.\d+)i?)(?![\w.])|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),])")
_FUNCS = {"fall", "shift", "delta"}
_ATOM_START = {"number", "z", "i", "(", "-", "+", "fall", "shift", "delta"}


@dataclass
class _Tok:
    kind: str  # num, name, op, end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            toks.append(_Tok("end", "", pos))
            return toks
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", text, pos, _ATOM_START | {"*", "/", "^", ")"})
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()


def _num_value(s: str) -> GaussianRational:
    imag = s.endswith("i")
    q = Fraction(s[:-1] if imag else s)
    return GaussianRational(0, q) if imag else GaussianRational(q)


def _fold(node: Node) -> Node:
    if isinstance(node, Neg) and isinstance(node.operand, Num):
        return Num(-node.operand.value)
    if isinstance(node, BinOp) and isinstance(node.left, Num) and isinstance(node.right, Num):
        a, b = node.left.value, node.right.value
        if node.op == "/":
            if b.is_zero():
                return node  # reported at evaluation time
            return Num(a / b)
        return Num({"+": a + b, "-": a - b, "*": a * b}[node.op])
    if isinstance(node, Pow) and isinstance(node.base, Num):
        return Num(node.base.value ** node.exp)
    return node


class _Parser:
    BP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
    UNARY_BP = 30

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, expected) -> None:
        raise ExpressionSyntaxError(msg, self.text, self.tok.pos, set(expected))

    def expect(self, op: str) -> None:
        if self.tok.kind == "op" and self.tok.text == op:
            self.advance()
        else:
            self.fail(f"unexpected {self._desc()}", {op})

    def _desc(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Node:
        node = self.expr(0)
        if self.tok.kind != "end":
            self.fail(f"unexpected {self._desc()}", {"+", "-", "*", "/", "^", "end of input"})
        return node

    def int_literal(self) -> int:
        t = self.tok
        if t.kind == "num" and re.fullmatch(r"\d+", t.text):
            self.advance()
            return int(t.text)
        self.fail(f"unexpected {self._desc()}", {"nonnegative integer literal"})

    def expr(self, rbp: int) -> Node:
        left = self.prefix()
        while True:
            t = self.tok
            if t.kind != "op" or t.text not in self.BP or self.BP[t.text] <= rbp:
                return left
            self.advance()
            if t.text == "^":
                left = _fold(Pow(left, self.int_literal()))
            else:
                left = _fold(BinOp(t.text, left, self.expr(self.BP[t.text])))

    def prefix(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(_num_value(t.text))
        if t.kind == "op" and t.text in "-+":
            self.advance()
            operand = self.expr(self.UNARY_BP)
            return _fold(Neg(operand)) if t.text == "-" else operand
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr(0)
            self.expect(")")
            return node
        if t.kind == "name":
            if t.text == "z":
                self.advance()
                return Var("z")
            if t.text == "i":
                self.advance()
                return Num(I)
            if t.text in _FUNCS:
                return self.call()
            self.fail(f"unknown name {t.text!r}", {"z", "i", "fall", "shift", "delta"})
        self.fail(f"unexpected {self._desc()}", _ATOM_START)

    def call(self) -> Node:
        name = self.advance().text
        self.expect("(")
        arg = self.expr(0)
        if name == "fall":
            self.expect(",")
            n = self.int_literal()
            if n < 1:
                self.i -= 1
                self.fail("fall needs n >= 1", {"positive integer literal"})
            args = (arg, n)
        elif name == "shift":
            self.expect(",")
            args = (arg, self.expr(0))
        else:
            args = (arg,)
            if self.tok.kind == "op" and self.tok.text == ",":
                self.advance()
                args = (arg, self.int_literal())
        self.expect(")")
        return Call(name, args)


def parse(text: str) -> Node:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_LEVEL = {"+": 1, "-": 1, "*": 2, "/": 2}


def _level(node: Node) -> int:
    if isinstance(node, BinOp):
        return _LEVEL[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    if isinstance(node, Num):
        v = node.value
        simple = (v.is_real() and v.re.denominator == 1 and v.re >= 0) or v == I
        return 5 if simple else 0
    return 5


def _wrap(node: Node, need: bool) -> str:
    s = unparse(node)
    return f"({s})" if need else s


def unparse(node: Node) -> str:
    """Print an AST so that :func:`parse` rebuilds the same tree."""
    if isinstance(node, Num):
        return format_scalar(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _level(node.operand) < 3)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _level(node.base) < 5)}^{node.exp}"
    if isinstance(node, BinOp):
        lv = _LEVEL[node.op]
        left = _wrap(node.left, _level(node.left) < lv)
        right = _wrap(node.right, _level(node.right) <= lv)
        sep = f" {node.op} " if lv == 1 else node.op
        return f"{left}{sep}{right}"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(unparse(a) if not isinstance(a, int) else str(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def evaluate(node: Node) -> RationalFunction:
    if isinstance(node, Num):
        return as_rational(node.value)
    if isinstance(node, Var):
        return as_rational(Z)
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    if isinstance(node, Pow):
        return evaluate(node.base) ** node.exp
    if isinstance(node, BinOp):
        a, b = evaluate(node.left), evaluate(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b.is_zero():
            raise ZeroDivisionError("division by zero in expression")
        return a / b
    if isinstance(node, Call):
        f = evaluate(node.args[0])
        if node.name == "fall":
            return f.fall(node.args[1])
        if node.name == "shift":
            c = evaluate(node.args[1])
            if not c.is_constant():
                raise ValueError("shift amount must be a constant")
            return f.shift(c.num.coeff(0))
        return f.delta(node.args[1] if len(node.args) > 1 else 1)
    raise TypeError(f"not an expression node: {node!r}")


def parse_function(text: str) -> RationalFunction:
    return evaluate(parse(text))
