"""Multivector expressions.

Grammar (postfix binds tightest, then unary minus, then ``*``/``/``, then
``+``/``-``)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary | "/" unary)*
    unary   := ("-" | "+") unary | postfix
    postfix := primary ("'" | "^" | "!" | "~" | "#")*
    primary := NUMBER | NUMBER "i" | "i" | BLADE | "(" expr ")"

``BLADE`` is ``e`` (the identity), ``e`` followed by strictly increasing
digits (``e12``), or the bracketed form ``e[3,10,12]``. The right operand of
``/`` must be a nonzero constant (no blades). Postfix operators:

====  =========================
 '    reversion
 ^    grade involution
 !    Hermitian conjugation
 ~    complex conjugation
 #    triangle conjugation
====  =========================
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import (Multivector, Signature, blade_mask, complex_conjugation,
                      grade_involution, hermitian_conjugation, reversion,
                      triangle_conjugation)
from .coeff import EXACT, FLOAT, GaussianRational
from .errors import ParseError, ValidationError

POSTFIX_OPS = {
    "'": reversion,
    "^": grade_involution,
    "!": hermitian_conjugation,
    "~": complex_conjugation,
    "#": triangle_conjugation,
}


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Imaginary:
    value: Fraction  # the literal means value * i


@dataclass(frozen=True)
class Blade:
    indices: tuple


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expression"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Postfix:
    op: str
    operand: "Expression"


Expression = Union[Number, Imaginary, Blade, Unary, Binary, Postfix]


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]\d+)?)(?P<imag>i)?
  | (?P<unit>i(?![A-Za-z0-9_]))
  | (?P<blade>e(?:\[[^\]]*\]|\d*)(?![A-Za-z_]))
  | (?P<op>[-+*/()'^!~\#])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int
    value: object = None


def _blade_indices(text: str, pos: int) -> tuple:
    body = text[1:]
    if body.startswith("["):
        inner = body[1:-1].strip()
        if not inner:
            raise ParseError("empty bracketed blade", pos)
        try:
            idx = tuple(int(s) for s in inner.split(","))
        except ValueError:
            raise ParseError(f"bad bracketed blade {text!r}", pos) from None
    else:
        idx = tuple(int(ch) for ch in body)
    if any(a < 1 for a in idx):
        raise ParseError(f"blade indices start at 1 in {text!r}", pos)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ParseError(f"blade indices must be strictly increasing in {text!r}", pos)
    return idx


def tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if m.group("number") is not None:
            value = Fraction(m.group("number"))
            out.append(_Tok("imag" if m.group("imag") else "number", m.group(0), pos, value))
        elif kind == "unit":
            out.append(_Tok("imag", "i", pos, Fraction(1)))
        elif kind == "blade":
            out.append(_Tok("blade", m.group(0), pos, _blade_indices(m.group(0), pos)))
        elif kind == "op":
            out.append(_Tok("op", m.group(0), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def accept(self, *ops: str) -> _Tok | None:
        t = self.tok
        if t.kind == "op" and t.text in ops:
            self.i += 1
            return t
        return None

    def expect(self, op: str):
        if self.accept(op) is None:
            t = self.tok
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {op!r}, found {found}", t.pos)

    def parse(self) -> Expression:
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self) -> Expression:
        node = self.term()
        while True:
            t = self.accept("+", "-")
            if t is None:
                return node
            node = Binary(t.text, node, self.term())

    def term(self) -> Expression:
        node = self.unary()
        while True:
            t = self.accept("*", "/")
            if t is None:
                return node
            start = self.tok.pos
            right = self.unary()
            if t.text == "/":
                if not is_constant(right):
                    raise ParseError("division is only allowed by a scalar literal", start)
                if not constant_value(right):
                    raise ParseError("division by zero", start)
            node = Binary(t.text, node, right)

    def unary(self) -> Expression:
        t = self.accept("-", "+")
        if t is None:
            return self.postfix()
        operand = self.unary()
        return Unary("-", operand) if t.text == "-" else operand

    def postfix(self) -> Expression:
        node = self.primary()
        while True:
            t = self.accept(*POSTFIX_OPS)
            if t is None:
                return node
            node = Postfix(t.text, node)

    def primary(self) -> Expression:
        t = self.tok
        if t.kind == "number":
            self.i += 1
            return Number(t.value)
        if t.kind == "imag":
            self.i += 1
            return Imaginary(t.value)
        if t.kind == "blade":
            self.i += 1
            if self.sig is not None and t.value and t.value[-1] > self.sig.n:
                raise ParseError(f"blade {t.text} uses index {t.value[-1]} > n = {self.sig.n}", t.pos)
            return Blade(t.value)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected a number, blade or '(', found {found}", t.pos)


def parse(text: str, sig: Signature | None = None) -> Expression:
    """Parse ``text``; blade indices are checked against ``sig`` when given."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text, sig).parse()


def is_constant(node: Expression) -> bool:
    if isinstance(node, (Number, Imaginary)):
        return True
    if isinstance(node, Blade):
        return False
    if isinstance(node, (Unary, Postfix)):
        return is_constant(node.operand)
    return is_constant(node.left) and is_constant(node.right)


def constant_value(node: Expression) -> GaussianRational:
    """Exact value of a blade-free expression."""
    if isinstance(node, Number):
        return GaussianRational(node.value)
    if isinstance(node, Imaginary):
        return GaussianRational(0, node.value)
    if isinstance(node, Unary):
        return -constant_value(node.operand)
    if isinstance(node, Postfix):
        v = constant_value(node.operand)
        # every conjugation fixes scalars except complex/Hermitian conjugation
        return v.conjugate() if node.op in "!~" else v
    if isinstance(node, Binary):
        a, b = constant_value(node.left), constant_value(node.right)
        return {"+": a + b, "-": a - b, "*": a * b}[node.op] if node.op != "/" else a / b
    raise ValidationError(f"{node!r} is not a constant")


# ---------------------------------------------------------------------------
# evaluation and printing


def _literal(value: GaussianRational, mode: str):
    return value if mode == EXACT else complex(value)


def evaluate(node: Expression, sig: Signature, mode: str = FLOAT) -> Multivector:
    """Fold the tree through the algebra operations."""
    if isinstance(node, Number):
        return Multivector.scalar(sig, _literal(GaussianRational(node.value), mode), mode)
    if isinstance(node, Imaginary):
        return Multivector.scalar(sig, _literal(GaussianRational(0, node.value), mode), mode)
    if isinstance(node, Blade):
        if node.indices and node.indices[-1] > sig.n:
            raise ValidationError(f"blade index {node.indices[-1]} exceeds n = {sig.n}")
        return Multivector(sig, {blade_mask(node.indices): 1}, mode)
    if isinstance(node, Unary):
        return -evaluate(node.operand, sig, mode)
    if isinstance(node, Postfix):
        return POSTFIX_OPS[node.op](evaluate(node.operand, sig, mode))
    if isinstance(node, Binary):
        left = evaluate(node.left, sig, mode)
        if node.op == "/":
            return left / _literal(constant_value(node.right), mode)
        right = evaluate(node.right, sig, mode)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise ValidationError(f"unknown expression node {node!r}")


def parse_and_evaluate(text: str, sig: Signature, mode: str = FLOAT) -> Multivector:
    return evaluate(parse(text, sig), sig, mode)


def _decimal(x: Fraction) -> str:
    # literals come from decimal text, so the denominator divides some 10^k
    shift = 0
    while (10 ** shift) % x.denominator:
        shift += 1
        if shift > 4 * x.denominator.bit_length() + 4:
            raise ValidationError(f"{x} has no finite decimal expansion")
    digits = str(x.numerator * 10 ** shift // x.denominator)
    if shift == 0:
        return digits
    digits = digits.rjust(shift + 1, "0")
    return digits[:-shift] + "." + digits[-shift:]


def to_source(node: Expression) -> str:
    """Render ``node`` so that ``parse(to_source(node)) == node``."""
    if isinstance(node, Number):
        return _decimal(node.value)
    if isinstance(node, Imaginary):
        return _decimal(node.value) + "i"
    if isinstance(node, Blade):
        if not node.indices:
            return "e"
        if node.indices[-1] >= 10:
            return "e[" + ",".join(map(str, node.indices)) + "]"
        return "e" + "".join(map(str, node.indices))
    if isinstance(node, Unary):
        inner = to_source(node.operand)
        if isinstance(node.operand, Binary):
            inner = f"({inner})"
        return "-" + inner
    if isinstance(node, Postfix):
        inner = to_source(node.operand)
        if isinstance(node.operand, (Binary, Unary)):
            inner = f"({inner})"
        return inner + node.op
    if isinstance(node, Binary):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    raise ValidationError(f"unknown expression node {node!r}")
