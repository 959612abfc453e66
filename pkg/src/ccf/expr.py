"""A small exact expression language for quaternions, Jordan ratios, phi, lambda and cf.

Grammar (EBNF)::

    expr     = term { ("+" | "-") term } ;
    term     = power { ("*" | "/") power } ;
    power    = unary [ "^" exponent ] ;
    exponent = INT | "(" [ "-" ] INT ")" ;
    unary    = "-" unary | postfix ;
    postfix  = primary { "*" } ;                 (* trailing star = conjugation *)
    primary  = NUMBER | "i" | "j" | "k" | "sqrt2" | "√2"
             | "(" expr ")"
             | "{" expr ":" expr "}"              (* Jordan ratio *)
             | "{" expr "," expr "}"              (* Jordan product *)
             | IDENT "(" expr { "," expr } ")" ;  (* phi lambda cf ldiv conj *)

A ``*`` is conjugation when the next non-blank character cannot start an
operand (digit, letter, ``√``, ``(``, ``{``), so ``u* - v`` is ``conj(u) - v``
and ``u*(-v)`` is a product. ``u / v`` is the right fraction ``u v^-1``;
``ldiv(u, v)`` is the left fraction ``u^-1 v``. Positions are character
offsets into the input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import formula
from .formula import CFResult, DegenerateValence, InadmissibleQuadruple
from .quaternion import ONE_Q, Quat, RatioConvention, jordan_product, jordan_ratio, label
from .scalar import SQRT2, DivisionByZero

MAX_DEPTH = 100
MAX_EXPONENT = 4096
MAX_BITS = 200_000
MAX_NUMBER_LENGTH = 1000

FUNCTIONS = {"phi": 2, "lambda": 1, "cf": 4, "ldiv": 2, "conj": 1}
BASIS = ("i", "j", "k")


class ExprError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at {position})")


class LexError(ExprError):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, position: int, expected: frozenset = frozenset()):
        self.expected = expected
        if expected:
            message += "; expected one of " + " ".join(sorted(expected))
        super().__init__(message, position)


class DomainError(ExprError):
    pass


class ExprDivisionByZero(ExprError, DivisionByZero):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


_NUMBER = re.compile(r"\d+(?:\.\d+)?")
_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_SINGLE = {"+": "op", "-": "op", "−": "op", "/": "op", "^": "op", "{": "lbrace", "}": "rbrace",
           ":": "colon", ",": "comma", "(": "lparen", ")": "rparen"}


def _operand_start(ch: str) -> bool:
    return ch.isdigit() or ch.isalpha() or ch in "√({_"


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isascii() and ch.isdigit():
            m = _NUMBER.match(text, pos)
            if m.end() - pos > MAX_NUMBER_LENGTH:
                raise LexError("numeric literal too long", pos)
            tokens.append(Token("number", m.group(), pos, m.end()))
            pos = m.end()
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            m = _WORD.match(text, pos)
            word = m.group()
            kind = "sqrt2" if word == "sqrt2" else "basis" if word in BASIS else "ident"
            tokens.append(Token(kind, word, pos, m.end()))
            pos = m.end()
        elif ch == "√":
            if text.startswith("√2", pos) and not text[pos + 2:pos + 3].isdigit():
                tokens.append(Token("sqrt2", "√2", pos, pos + 2))
                pos += 2
            else:
                raise LexError("only √2 is supported", pos)
        elif ch == "*":
            rest = text[pos + 1:].lstrip()
            kind = "op" if rest and _operand_start(rest[0]) else "star"
            tokens.append(Token(kind, "*", pos, pos + 1))
            pos += 1
        elif ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], "-" if ch == "−" else ch, pos, pos + 1))
            pos += 1
        else:
            raise LexError(f"unexpected character {ch!r}", pos)
    return tokens


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    """``kind`` is one of num basis sqrt2 neg add sub mul div pow conj
    jordan ratio phi lambda cf ldiv."""

    kind: str
    args: tuple = ()
    value: object = None
    span: tuple[int, int] = field(default=(0, 0), compare=False)


_BINARY = {"+": "add", "-": "sub", "*": "mul", "/": "div"}


class _Parser:
    def __init__(self, tokens: list[Token], length: int):
        self.tokens = tokens
        self.pos = 0
        self.length = length
        self.depth = 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def where(self) -> int:
        tok = self.peek()
        return tok.start if tok else self.length

    def fail(self, expected) -> ParseError:
        tok = self.peek()
        what = f"unexpected {tok.text!r}" if tok else "unexpected end of input"
        return ParseError(what, self.where(), frozenset(expected))

    def expect(self, kind: str, text: str | None = None) -> Token:
        if not self.at(kind, text):
            raise self.fail([text or kind])
        tok = self.peek()
        self.pos += 1
        return tok

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.where())

    def expr(self) -> Node:
        left = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.expect("op")
            right = self.term()
            left = Node(_BINARY[op.text], (left, right), span=(left.span[0], right.span[1]))
        return left

    def term(self) -> Node:
        left = self.power()
        while self.at("op", "*") or self.at("op", "/"):
            op = self.expect("op")
            right = self.power()
            left = Node(_BINARY[op.text], (left, right), span=(left.span[0], right.span[1]))
        return left

    def power(self) -> Node:
        base = self.unary()
        if not self.at("op", "^"):
            return base
        self.expect("op", "^")
        if self.at("number"):
            tok = self.expect("number")
            end = tok.end
            n = self._int(tok)
        elif self.at("lparen"):
            self.expect("lparen")
            negative = self.at("op", "-")
            if negative:
                self.expect("op", "-")
            n = self._int(self.expect("number"))
            end = self.expect("rparen").end
            n = -n if negative else n
        else:
            raise self.fail(["number", "("])
        return Node("pow", (base,), n, span=(base.span[0], end))

    def _int(self, tok: Token) -> int:
        if "." in tok.text:
            raise ParseError("exponent must be an integer", tok.start)
        return int(tok.text)

    def unary(self) -> Node:
        if self.at("op", "-"):
            self.enter()
            tok = self.expect("op", "-")
            inner = self.unary()
            self.depth -= 1
            return Node("neg", (inner,), span=(tok.start, inner.span[1]))
        node = self.primary()
        while self.at("star"):
            tok = self.expect("star")
            node = Node("conj", (node,), span=(node.span[0], tok.end))
        return node

    def primary(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise self.fail(["number", "i", "j", "k", "sqrt2", "(", "{", "function"])
        if tok.kind == "number":
            self.pos += 1
            return Node("num", (), Fraction(tok.text), span=(tok.start, tok.end))
        if tok.kind == "basis":
            self.pos += 1
            return Node("basis", (), tok.text, span=(tok.start, tok.end))
        if tok.kind == "sqrt2":
            self.pos += 1
            return Node("sqrt2", span=(tok.start, tok.end))
        if tok.kind == "lparen":
            self.enter()
            self.pos += 1
            inner = self.expr()
            close = self.expect("rparen")
            self.depth -= 1
            return Node(inner.kind, inner.args, inner.value, span=(tok.start, close.end))
        if tok.kind == "lbrace":
            self.enter()
            self.pos += 1
            u = self.expr()
            if self.at("colon"):
                kind = "ratio"
            elif self.at("comma"):
                kind = "jordan"
            else:
                raise self.fail([":", ","])
            self.pos += 1
            v = self.expr()
            close = self.expect("rbrace")
            self.depth -= 1
            return Node(kind, (u, v), span=(tok.start, close.end))
        if tok.kind == "ident":
            if tok.text not in FUNCTIONS:
                raise ParseError(f"unknown function {tok.text!r}", tok.start, frozenset(FUNCTIONS))
            self.enter()
            self.pos += 1
            self.expect("lparen")
            args = [self.expr()]
            while self.at("comma"):
                self.pos += 1
                args.append(self.expr())
            close = self.expect("rparen")
            self.depth -= 1
            if len(args) != FUNCTIONS[tok.text]:
                raise ParseError(f"{tok.text} takes {FUNCTIONS[tok.text]} arguments, got {len(args)}", tok.start)
            return Node(tok.text, tuple(args), span=(tok.start, close.end))
        raise self.fail(["number", "i", "j", "k", "sqrt2", "(", "{", "function"])


def parse(source: str | list[Token]) -> Node:
    if isinstance(source, str):
        tokens, length = tokenize(source), len(source)
    else:
        tokens, length = source, (source[-1].end if source else 0)
    p = _Parser(tokens, length)
    node = p.expr()
    if p.peek() is not None:
        raise p.fail(["operator", "end of input"])
    return node


# -- formatting ---------------------------------------------------------------


def _decimal(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    places = 0
    while (x * 10 ** places).denominator != 1:
        places += 1
        if places > 64:
            raise ValueError(f"{x} has no short terminating decimal form")
    digits = str(abs(x * 10 ** places).numerator).rjust(places + 1, "0")
    sign = "-" if x < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_ast(node: Node) -> str:
    """Fully parenthesized source text that parses back to an equal tree."""
    k, a = node.kind, node.args
    if k == "num":
        return _decimal(node.value)
    if k == "basis":
        return node.value
    if k == "sqrt2":
        return "sqrt2"
    if k == "neg":
        return f"(-{format_ast(a[0])})"
    if k in ("add", "sub", "mul", "div"):
        op = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[k]
        return f"({format_ast(a[0])}{op}{format_ast(a[1])})"
    if k == "pow":
        n = node.value
        return f"({format_ast(a[0])}^{n if n >= 0 else f'(-{-n})'})"
    if k == "conj":
        return f"({format_ast(a[0])}*)"
    if k == "ratio":
        return "{" + f"{format_ast(a[0])}:{format_ast(a[1])}" + "}"
    if k == "jordan":
        return "{" + f"{format_ast(a[0])},{format_ast(a[1])}" + "}"
    return f"{k}(" + ",".join(format_ast(x) for x in a) + ")"


# -- evaluation ---------------------------------------------------------------


def _bits(q: Quat) -> int:
    return max(max(abs(x).bit_length() for x in q.n), q.d.bit_length())


def evaluate(node: Node, convention: RatioConvention = RatioConvention.PLAIN) -> Quat | CFResult:
    """Exact value of ``node``; ``cf(...)`` yields a :class:`CFResult`."""
    k, pos = node.kind, node.span[0]
    if k == "cf":
        quad = [_q_value(x, convention) for x in node.args]
        try:
            return formula.cf_check(*quad, convention)
        except InadmissibleQuadruple as exc:
            raise DomainError(str(exc), pos) from exc
    return _quat(node, convention)


def _quat(node: Node, convention: RatioConvention) -> Quat:
    k, a, pos = node.kind, node.args, node.span[0]
    if k == "num":
        return ONE_Q.scale(node.value)
    if k == "basis":
        return Quat.basis(node.value)
    if k == "sqrt2":
        return ONE_Q.scale(SQRT2)
    if k == "cf":
        raise DomainError("cf(...) is a truth value, not a quaternion", pos)
    args = [_quat(x, convention) for x in a]
    if k == "neg":
        return -args[0]
    if k == "add":
        return args[0] + args[1]
    if k == "sub":
        return args[0] - args[1]
    if k == "mul":
        return args[0] * args[1]
    if k in ("div", "ldiv"):
        u, v = args
        if k == "ldiv":
            u, v = v, u  # u^-1 v
            if not v:
                raise ExprDivisionByZero("left division by zero", pos)
            return v.inverse() * u
        if not v:
            raise ExprDivisionByZero("division by zero", a[1].span[0])
        return u * v.inverse()
    if k == "pow":
        n = node.value
        if abs(n) > MAX_EXPONENT or _bits(args[0]) * abs(n) > MAX_BITS:
            raise DomainError("exponent too large", pos)
        if n < 0 and not args[0]:
            raise ExprDivisionByZero("negative power of zero", pos)
        return args[0] ** n
    if k == "conj":
        return args[0].conj()
    if k == "jordan":
        return jordan_product(*args)
    if k == "ratio":
        return jordan_ratio(args[0], args[1], convention)
    if k == "lambda":
        return formula.lambda_map(args[0])
    if k == "phi":
        x, y = args
        for value, sub in zip(args, a):
            if not formula.in_q(value):
                raise DomainError(f"phi argument {label(value)} is not in Q", sub.span[0])
        try:
            return formula.phi(x, y).value
        except DegenerateValence as exc:
            raise DomainError(str(exc), pos) from exc
    raise DomainError(f"unknown node {k}", pos)


def _q_value(node: Node, convention: RatioConvention) -> Quat:
    value = _quat(node, convention)
    if not formula.in_q(value):
        raise DomainError(f"cf argument {label(value)} is not in Q", node.span[0])
    return value


def eval_text(text: str, convention: RatioConvention = RatioConvention.PLAIN) -> Quat | CFResult:
    return evaluate(parse(text), convention)


def result_json(value: Quat | CFResult) -> dict:
    if isinstance(value, CFResult):
        return {
            "value": value.holds,
            "label": value.describe(),
            "lhs": value.lhs.to_json(),
            "rhs": value.rhs.to_json(),
        }
    return {"value": value.to_json(), "label": label(value)}


def result_text(value: Quat | CFResult) -> str:
    return value.describe() if isinstance(value, CFResult) else label(value)
