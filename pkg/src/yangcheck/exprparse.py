"""Parser and printer for the small expression language of the CLI.

Grammar (standard precedence, ^ > * > additive; ^ takes a nonnegative
integer exponent):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := RATIONAL | 'c' | gen | '(' expr ')' | '-' atom
    gen    := ('E' | 'F') '[' SINT ',' SINT ']'

RATIONAL is INT or INT/INT; SINT allows a sign.  Every rejection carries a
line/column location, and print(parse(text)) is a fixed point of
parse-then-print.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pbw import Alphabet, UEAElement
from .poly import MultiPoly


class ExprError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_SINGLE = {"+", "-", "*", "^", "(", ")", "[", "]", ",", "/"}


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    k = 0
    while k < len(source):
        ch = source[k]
        if ch == "\n":
            line += 1
            col = 1
            k += 1
            continue
        if ch in " \t\r":
            col += 1
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < len(source) and source[k].isdigit():
                k += 1
            tokens.append(Token("int", source[start:k], line, col))
            col += k - start
            continue
        if ch.isalpha():
            start = k
            while k < len(source) and source[k].isalnum():
                k += 1
            tokens.append(Token("name", source[start:k], line, col))
            col += k - start
            continue
        if ch in _SINGLE:
            tokens.append(Token(ch, ch, line, col))
            col += 1
            k += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Param:
    pass


@dataclass(frozen=True)
class Gen:
    kind: str  # "E" or "F"
    i: int
    j: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprError(f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                            tok.line, tok.column)
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError(f"unexpected trailing input {tok.text!r}", tok.line, tok.column)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek().kind == "^":
            self.advance()
            tok = self.expect("int")
            node = Pow(node, int(tok.text))
        return node

    def signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        tok = self.expect("int")
        return sign * int(tok.text)

    def atom(self):
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            return Neg(self.atom())
        if tok.kind == "int":
            self.advance()
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("int")
                if int(den.text) == 0:
                    raise ExprError("zero denominator", den.line, den.column)
                return Num(Fraction(int(tok.text), int(den.text)))
            return Num(Fraction(int(tok.text)))
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            if tok.text == "c":
                self.advance()
                return Param()
            if tok.text in ("E", "F"):
                self.advance()
                self.expect("[")
                i = self.signed_int()
                self.expect(",")
                j = self.signed_int()
                self.expect("]")
                return Gen(tok.text, i, j)
            raise ExprError(f"unknown symbol {tok.text!r}", tok.line, tok.column)
        raise ExprError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.column)


def parse_expr(source: str):
    """Parse to an AST; raises ExprError with a location on bad input."""
    return _Parser(tokenize(source)).parse()


_PREC = {"+": 1, "-": 1, "*": 2}


def print_expr(node) -> str:
    text, _ = _print(node)
    return text


def _print(node):
    if isinstance(node, Num):
        q = node.value
        if q.denominator == 1:
            return (str(q.numerator), 4) if q >= 0 else (f"-{-q.numerator}", 0)
        text = f"{abs(q.numerator)}/{q.denominator}"
        return (text, 3) if q >= 0 else (f"-{text}", 0)
    if isinstance(node, Param):
        return "c", 4
    if isinstance(node, Gen):
        return f"{node.kind}[{node.i},{node.j}]", 4
    if isinstance(node, Neg):
        text, prec = _print(node.operand)
        if prec < 2:
            text = f"({text})"
        return f"-{text}", 0
    if isinstance(node, Pow):
        text, prec = _print(node.base)
        if prec < 4:
            text = f"({text})"
        return f"{text}^{node.exponent}", 3
    if isinstance(node, BinOp):
        lt, lp = _print(node.left)
        rt, rp = _print(node.right)
        prec = _PREC[node.op]
        if lp < prec:
            lt = f"({lt})"
        # subtraction and division of equal precedence need right parens
        if rp < prec or (node.op == "-" and rp == prec) or (node.op == "*" and rp < 2):
            rt = f"({rt})"
        return f"{lt} {node.op} {rt}" if prec == 1 else f"{lt}{node.op}{rt}", prec
    raise TypeError(f"not an expression node: {node!r}")


def to_element(node, alphabet: Alphabet) -> UEAElement:
    """Evaluate an AST to an enveloping-algebra element over `alphabet`."""
    spec = alphabet.spec
    if isinstance(node, Num):
        return UEAElement.scalar(alphabet, Fraction(node.value))
    if isinstance(node, Param):
        return UEAElement.scalar(alphabet, MultiPoly.variable("c"))
    if isinstance(node, Gen):
        expected = "E" if spec.family == "A" else "F"
        if node.kind != expected:
            raise ValueError(
                f"generator {node.kind}[{node.i},{node.j}] does not belong to {spec.to_string()}"
            )
        if node.i not in spec.index_set() or node.j not in spec.index_set():
            raise ValueError(f"index out of range for {spec.to_string()}: [{node.i},{node.j}]")
        return UEAElement.generator(alphabet, node.i, node.j)
    if isinstance(node, Neg):
        return -to_element(node.operand, alphabet)
    if isinstance(node, Pow):
        return to_element(node.base, alphabet) ** node.exponent
    if isinstance(node, BinOp):
        left = to_element(node.left, alphabet)
        right = to_element(node.right, alphabet)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not an expression node: {node!r}")
