"""Text syntax for pseudorandom-object expressions.

Grammar (whitespace is insignificant)::

    expr := term { 'x' term }
    term := 'L' '[' int {',' int} ']' | 'N' '(' nat ')' | 'G' '(' nat ')'
          | 'H' '(' nat ',' nat ',' expr ')' | 'HP' '(' nat ',' nat ',' expr ')'
          | 'E' '(' nat ',' real ',' expr ')' | '(' expr ')'

``real`` is a decimal (``0.95``) or a fraction (``1/8``) and is kept exact.
Products associate to the left.  Prime-power requirements of ``H``/``HP`` are
checked by :func:`build_pro`, not by the parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .bits import BitSource
from .errors import ProExprSyntaxError
from .expander import walk_pro
from .hashfam import hash_pro, hash_pro_rand
from .pro import Pro, geom_pro, list_pro, nat_pro, prod_pro


@dataclass(frozen=True)
class L:
    values: tuple


@dataclass(frozen=True)
class N:
    n: int


@dataclass(frozen=True)
class G:
    nmax: int


@dataclass(frozen=True)
class H:
    k: int
    n: int
    sub: "ProExpr"


@dataclass(frozen=True)
class HP:
    k: int
    n: int
    sub: "ProExpr"


@dataclass(frozen=True)
class E:
    l: int
    lam: Fraction
    sub: "ProExpr"


@dataclass(frozen=True)
class Prod:
    left: "ProExpr"
    right: "ProExpr"


ProExpr = Union[L, N, G, H, HP, E, Prod]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, expected=()):
        raise ProExprSyntaxError(message, len(self.text[:self.pos].encode()), expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek_word(self) -> str:
        self.skip()
        end = self.pos
        while end < len(self.text) and self.text[end].isupper():
            end += 1
        return self.text[self.pos:end]

    def expect(self, tok: str):
        self.skip()
        if not self.text.startswith(tok, self.pos):
            self.error(f"expected {tok!r}", [tok])
        self.pos += len(tok)

    def digits(self, expected) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            self.error("expected a number", expected)
        return self.text[start:self.pos]

    def nat(self) -> int:
        return int(self.digits(["<nat>"]))

    def int_(self) -> int:
        self.skip()
        sign = 1
        if self.text.startswith("-", self.pos):
            self.pos += 1
            sign = -1
        return sign * int(self.digits(["<int>"]))

    def real(self) -> Fraction:
        whole = self.digits(["<real>"])
        if self.text.startswith(".", self.pos):
            self.pos += 1
            return Fraction(f"{whole}.{self.digits(['<digit>'])}")
        self.skip()
        if self.text.startswith("/", self.pos):
            self.pos += 1
            den = self.nat()
            if den == 0:
                self.pos -= 1
                self.error("zero denominator", ["<nat>"])
            return Fraction(int(whole), den)
        return Fraction(int(whole))

    def expr(self) -> ProExpr:
        node = self.term()
        while self._accept("x"):
            node = Prod(node, self.term())
        return node

    def term(self) -> ProExpr:
        word = self.peek_word()
        if not word:
            if self.text.startswith("(", self.pos):
                self.pos += 1
                node = self.expr()
                self.expect(")")
                return node
            self.error("expected a term", ["(", "E", "G", "H", "HP", "L", "N"])
        self.pos += len(word)
        if word == "L":
            self.expect("[")
            values = [self.int_()]
            while self._accept(","):
                values.append(self.int_())
            self.expect("]")
            return L(tuple(values))
        if word in ("N", "G"):
            self.expect("(")
            v = self.nat()
            self.expect(")")
            return N(v) if word == "N" else G(v)
        if word in ("H", "HP", "E"):
            self.expect("(")
            a = self.nat()
            self.expect(",")
            b = self.real() if word == "E" else self.nat()
            self.expect(",")
            sub = self.expr()
            self.expect(")")
            return {"H": H, "HP": HP, "E": E}[word](a, b, sub)
        self.pos -= len(word)
        self.error(f"unknown constructor {word!r}", ["(", "E", "G", "H", "HP", "L", "N"])

    def _accept(self, tok) -> bool:
        self.skip()
        if self.text.startswith(tok, self.pos):
            self.pos += len(tok)
            return True
        return False


def parse_pro_expr(text: str) -> ProExpr:
    """Parse ``text``; raises :class:`ProExprSyntaxError` with a byte offset."""
    parser = _Parser(text)
    node = parser.expr()
    parser.skip()
    if parser.pos != len(text):
        parser.error("trailing input", ["x", "<end>"])
    return node


def _render_real(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_pro_expr(node: ProExpr) -> str:
    """Canonical text; parsing it gives back an equal tree."""
    if isinstance(node, L):
        return "L[" + ",".join(map(str, node.values)) + "]"
    if isinstance(node, N):
        return f"N({node.n})"
    if isinstance(node, G):
        return f"G({node.nmax})"
    if isinstance(node, (H, HP)):
        return f"{type(node).__name__}({node.k},{node.n},{render_pro_expr(node.sub)})"
    if isinstance(node, E):
        return f"E({node.l},{_render_real(node.lam)},{render_pro_expr(node.sub)})"
    if isinstance(node, Prod):
        right = render_pro_expr(node.right)
        if isinstance(node.right, Prod):
            right = f"({right})"
        return f"{render_pro_expr(node.left)} x {right}"
    raise TypeError(f"not an expression node: {node!r}")


def build_pro(node: ProExpr, bits: Optional[BitSource] = None) -> Pro:
    """Construct the object; ``HP`` nodes draw their modulus from ``bits``."""
    if isinstance(node, L):
        return list_pro(node.values)
    if isinstance(node, N):
        return nat_pro(node.n)
    if isinstance(node, G):
        return geom_pro(node.nmax)
    if isinstance(node, H):
        return hash_pro(node.k, node.n, build_pro(node.sub, bits))
    if isinstance(node, HP):
        return hash_pro_rand(node.k, node.n, build_pro(node.sub, bits), bits)
    if isinstance(node, E):
        return walk_pro(node.l, float(node.lam), build_pro(node.sub, bits))
    if isinstance(node, Prod):
        return prod_pro(build_pro(node.left, bits), build_pro(node.right, bits))
    raise TypeError(f"not an expression node: {node!r}")
