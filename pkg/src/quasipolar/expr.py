"""Ring expressions: a small constructor language and its parser.

Grammar (whitespace-insensitive, parentheses required around sub-expressions)::

    expr := "Zmod" INT | "ZeroMul" INT | "Mat" INT "(" expr ")"
          | "Product" "(" expr ("," expr)* ")" | "Dorroh" "(" expr ";" expr ")"
          | "Corner" "(" expr ")" "e=" INT | "Ideal" "(" expr ")" "a=" INT
          | "Quotient" "(" expr ")" "a=" INT | "PairRing" "(" expr ")"
          | "File" PATH

``str(expr)`` gives the canonical spaced form; ``expr.name`` the same text
with whitespace removed, which still parses back to the same expression.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import constructions as C
from .errors import ParseError
from .ring import FiniteGeneralRing


class RingExpr:
    def children(self) -> tuple[RingExpr, ...]:
        return ()

    def build(self) -> FiniteGeneralRing:
        raise NotImplementedError

    def evaluate(self) -> FiniteGeneralRing:
        return evaluate(self)

    @property
    def name(self) -> str:
        if isinstance(self, File):
            return "File" + self.path
        return "".join(str(self).split())


@dataclass(frozen=True)
class Zmod(RingExpr):
    n: int

    def __str__(self):
        return f"Zmod {self.n}"

    def build(self):
        return C.zmod(self.n)


@dataclass(frozen=True)
class ZeroMul(RingExpr):
    n: int

    def __str__(self):
        return f"ZeroMul {self.n}"

    def build(self):
        return C.zero_mul(self.n)


@dataclass(frozen=True)
class Mat(RingExpr):
    k: int
    sub: RingExpr

    def __str__(self):
        return f"Mat {self.k} ({self.sub})"

    def children(self):
        return (self.sub,)

    def build(self):
        return C.matrix_ring(evaluate(self.sub), self.k)


@dataclass(frozen=True)
class Product(RingExpr):
    subs: tuple[RingExpr, ...]

    def __str__(self):
        return "Product (" + ", ".join(map(str, self.subs)) + ")"

    def children(self):
        return self.subs

    def build(self):
        return C.direct_product(*(evaluate(s) for s in self.subs))


@dataclass(frozen=True)
class Dorroh(RingExpr):
    coeffs: RingExpr
    ideal: RingExpr

    def __str__(self):
        return f"Dorroh ({self.coeffs}; {self.ideal})"

    def children(self):
        return (self.coeffs, self.ideal)

    def build(self):
        return C.dorroh(evaluate(self.coeffs), evaluate(self.ideal))


@dataclass(frozen=True)
class Corner(RingExpr):
    sub: RingExpr
    e: int

    def __str__(self):
        return f"Corner ({self.sub}) e={self.e}"

    def children(self):
        return (self.sub,)

    def build(self):
        return C.corner(evaluate(self.sub), self.e)


@dataclass(frozen=True)
class Ideal(RingExpr):
    sub: RingExpr
    a: int

    def __str__(self):
        return f"Ideal ({self.sub}) a={self.a}"

    def children(self):
        return (self.sub,)

    def build(self):
        return C.principal_ideal(evaluate(self.sub), self.a)


@dataclass(frozen=True)
class Quotient(RingExpr):
    sub: RingExpr
    a: int

    def __str__(self):
        return f"Quotient ({self.sub}) a={self.a}"

    def children(self):
        return (self.sub,)

    def build(self):
        return C.quotient(evaluate(self.sub), self.a)


@dataclass(frozen=True)
class PairRing(RingExpr):
    sub: RingExpr

    def __str__(self):
        return f"PairRing ({self.sub})"

    def children(self):
        return (self.sub,)

    def build(self):
        return C.pair_ring(evaluate(self.sub))


@dataclass(frozen=True)
class File(RingExpr):
    path: str

    def __str__(self):
        return f"File {self.path}"

    def build(self):
        from .ringfile import load_ring
        return load_ring(self.path)


@lru_cache(maxsize=256)
def evaluate(expr: RingExpr) -> FiniteGeneralRing:
    """Build the ring; equal expressions share one ring object (and its caches)."""
    return expr.build()


# parser

_KEYWORDS = ("Zmod", "ZeroMul", "Mat", "Product", "Dorroh", "Corner", "Ideal",
             "Quotient", "PairRing", "File")
_PATH_STOP = set("(),;") | set(" \t\r\n")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, msg: str):
        raise ParseError(msg, self.pos)

    def expect(self, literal: str):
        self.skip()
        if not self.text.startswith(literal, self.pos):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def peek(self, literal: str) -> bool:
        self.skip()
        return self.text.startswith(literal, self.pos)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an integer")
        return int(self.text[start:self.pos])

    def path(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _PATH_STOP:
            self.pos += 1
        if start == self.pos:
            self.fail("expected a path")
        return self.text[start:self.pos]

    def keyword(self) -> str:
        self.skip()
        for kw in _KEYWORDS:
            if self.text.startswith(kw, self.pos):
                self.pos += len(kw)
                return kw
        self.fail("expected a ring constructor")

    def paren(self) -> RingExpr:
        self.expect("(")
        inner = self.expr()
        self.expect(")")
        return inner

    def index_arg(self, letter: str) -> int:
        self.expect(letter)
        self.expect("=")
        return self.integer()

    def expr(self) -> RingExpr:
        kw = self.keyword()
        if kw == "Zmod":
            return Zmod(self.integer())
        if kw == "ZeroMul":
            return ZeroMul(self.integer())
        if kw == "Mat":
            k = self.integer()
            return Mat(k, self.paren())
        if kw == "Product":
            self.expect("(")
            subs = [self.expr()]
            while self.peek(","):
                self.expect(",")
                subs.append(self.expr())
            self.expect(")")
            return Product(tuple(subs))
        if kw == "Dorroh":
            self.expect("(")
            s = self.expr()
            self.expect(";")
            i = self.expr()
            self.expect(")")
            return Dorroh(s, i)
        if kw == "Corner":
            sub = self.paren()
            return Corner(sub, self.index_arg("e"))
        if kw == "Ideal":
            sub = self.paren()
            return Ideal(sub, self.index_arg("a"))
        if kw == "Quotient":
            sub = self.paren()
            return Quotient(sub, self.index_arg("a"))
        if kw == "PairRing":
            return PairRing(self.paren())
        return File(self.path())


def parse_ring_expr(text: str) -> RingExpr:
    p = _Parser(text)
    out = p.expr()
    p.skip()
    if p.pos != len(text):
        p.fail("unexpected trailing input")
    return out
