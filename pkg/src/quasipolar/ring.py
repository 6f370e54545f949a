"""Finite general rings as Cayley tables.

Elements are dense indices ``0 .. order-1``.  Nothing assumes that the zero
sits at index 0 or that indices mirror integer arithmetic; every operation
is a table lookup.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AxiomViolation, RingMismatch

# Constructors refuse to build rings larger than this.
MAX_ORDER = 1024


class Axiom(str, enum.Enum):
    ADD_ASSOC = "add-assoc"
    ADD_COMM = "add-comm"
    ADD_ZERO = "add-zero"
    ADD_NEG = "add-neg"
    MUL_ASSOC = "mul-assoc"
    DISTRIB = "distrib"


def _freeze(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int32)
    arr.setflags(write=False)
    return arr


class FiniteGeneralRing:
    """An associative ring, possibly without identity, given by its tables.

    Instances are immutable.  Use :func:`build_ring` for user supplied tables;
    the constructor itself trusts its input.
    """

    # set by subring / quotient constructors
    ambient_indices: tuple[int, ...] | None = None
    coset_labels: tuple[int, ...] | None = None

    def __init__(self, add_table, mul_table, zero: int, unity: int | None = None,
                 name: str = "ring"):
        self.add_table = _freeze(add_table)
        self.mul_table = _freeze(mul_table)
        self.order = int(self.add_table.shape[0])
        self.zero = int(zero)
        self.unity = None if unity is None else int(unity)
        self.name = name
        self.neg_table = _freeze(np.argmax(self.add_table == self.zero, axis=1))

    @classmethod
    def trusted(cls, add_table, mul_table, name: str = "ring") -> FiniteGeneralRing:
        """Wrap tables known to satisfy the axioms, detecting zero and unity."""
        add = np.asarray(add_table)
        mul = np.asarray(mul_table)
        zero = _find_identity(add)
        if zero is None:
            raise AxiomViolation(Axiom.ADD_ZERO, ())
        return cls(add, mul, zero, _find_identity(mul), name)

    def __repr__(self) -> str:
        unity = "none" if self.unity is None else self.unity
        return f"<FiniteGeneralRing {self.name} order={self.order} unity={unity}>"

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, index: int) -> Element:
        if not 0 <= index < self.order:
            raise IndexError(index)
        return Element(self, int(index))

    def elements(self) -> range:
        return range(self.order)

    @property
    def has_unity(self) -> bool:
        return self.unity is not None

    # derived tables, computed on first use

    @cached_property
    def sub_table(self) -> np.ndarray:
        return _freeze(self.add_table[:, self.neg_table])

    @cached_property
    def circle_table(self) -> np.ndarray:
        """``circle_table[a, b] == a + b - ab``."""
        return _freeze(self.sub_table[self.add_table, self.mul_table])

    @cached_property
    def commute_table(self) -> np.ndarray:
        return self.mul_table == self.mul_table.T

    @cached_property
    def is_commutative(self) -> bool:
        return bool(self.commute_table.all())

    # element arithmetic

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def int_multiple(self, k: int, a: int) -> int:
        """``k * a`` for any integer ``k`` (repeated addition)."""
        if k < 0:
            k, a = -k, self.neg(a)
        out = self.zero
        for _ in range(k):
            out = self.add(out, a)
        return out

    def power(self, a: int, k: int) -> int:
        if k < 1:
            raise ValueError("exponent must be >= 1 in a general ring")
        out = a
        for _ in range(k - 1):
            out = self.mul(out, a)
        return out

    def powers(self, a: int, upto: int | None = None) -> list[int]:
        """``[a, a^2, ..., a^upto]``; ``upto`` defaults to the order."""
        upto = self.order if upto is None else upto
        out = [a]
        for _ in range(upto - 1):
            out.append(self.mul(out[-1], a))
        return out

    def circle(self, a: int, b: int) -> int:
        return int(self.circle_table[a, b])

    def quasi_inverse(self, a: int) -> int | None:
        """The ``c`` with ``a∘c = 0 = c∘a``, if there is one (it is unique)."""
        hits = np.flatnonzero((self.circle_table[a] == self.zero)
                              & (self.circle_table[:, a] == self.zero))
        return int(hits[0]) if hits.size else None

    def nilpotency_index(self, a: int) -> int | None:
        x = a
        for k in range(1, self.order + 1):
            if x == self.zero:
                return k
            x = self.mul(x, a)
        return None

    def additive_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.zero:
            x = self.add(x, a)
            k += 1
        return k

    def commute(self, a: int, b: int) -> bool:
        return bool(self.commute_table[a, b])

    def tables_equal(self, other: FiniteGeneralRing) -> bool:
        return (np.array_equal(self.add_table, other.add_table)
                and np.array_equal(self.mul_table, other.mul_table))


@dataclass(frozen=True)
class Element:
    """An element of a specific ring, with the usual operators."""

    ring: FiniteGeneralRing
    index: int

    def __repr__(self) -> str:
        return f"{self.ring.name}[{self.index}]"

    def _peer(self, other: Element) -> int:
        if not isinstance(other, Element):
            return NotImplemented
        if other.ring is not self.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
        return other.index

    def __add__(self, other: Element) -> Element:
        return Element(self.ring, self.ring.add(self.index, self._peer(other)))

    def __sub__(self, other: Element) -> Element:
        return Element(self.ring, self.ring.sub(self.index, self._peer(other)))

    def __mul__(self, other: Element) -> Element:
        return Element(self.ring, self.ring.mul(self.index, self._peer(other)))

    def __rmul__(self, k: int) -> Element:
        if not isinstance(k, int):
            return NotImplemented
        return Element(self.ring, self.ring.int_multiple(k, self.index))

    def __neg__(self) -> Element:
        return Element(self.ring, self.ring.neg(self.index))

    def __pow__(self, k: int) -> Element:
        return Element(self.ring, self.ring.power(self.index, k))

    def circle(self, other: Element) -> Element:
        return Element(self.ring, self.ring.circle(self.index, self._peer(other)))


def arith(op_kind: str, a: Element, b: Element | int | None = None) -> Element:
    """Dispatch one of ``add, sub, neg, mul, int_multiple, power``.

    For ``int_multiple`` and ``power`` the second operand is an ``int``.
    """
    if op_kind == "neg":
        return -a
    if op_kind == "int_multiple":
        return b * a
    if op_kind == "power":
        return a ** b
    ops = {"add": Element.__add__, "sub": Element.__sub__, "mul": Element.__mul__}
    if op_kind not in ops:
        raise ValueError(f"unknown op {op_kind!r}")
    if not isinstance(b, Element):
        raise TypeError(f"{op_kind} needs two elements")
    return ops[op_kind](a, b)


def circle(a: Element, b: Element) -> Element:
    return a.circle(b)


def quasi_inverse(a: Element) -> Element | None:
    c = a.ring.quasi_inverse(a.index)
    return None if c is None else Element(a.ring, c)


def nilpotency_index(a: Element) -> int | None:
    return a.ring.nilpotency_index(a.index)


def _find_identity(table: np.ndarray) -> int | None:
    n = table.shape[0]
    ar = np.arange(n)
    hits = np.flatnonzero((table == ar).all(axis=1) & (table.T == ar).all(axis=1))
    return int(hits[0]) if hits.size else None


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(lhs != rhs)
    return tuple(int(i) for i in bad[0]) if bad.size else None


def validate_tables(add: np.ndarray, mul: np.ndarray, zero: int | None = None) -> int:
    """Check every ring axiom; return the zero index or raise AxiomViolation."""
    n = add.shape[0]
    for a in range(n):
        w = _first_mismatch(add[add[a]], add[a][add])
        if w is not None:
            raise AxiomViolation(Axiom.ADD_ASSOC, (a,) + w)
    w = _first_mismatch(add, add.T)
    if w is not None:
        raise AxiomViolation(Axiom.ADD_COMM, w)
    ar = np.arange(n)
    if zero is None:
        zero = _find_identity(add)
        if zero is None:
            raise AxiomViolation(Axiom.ADD_ZERO, ())
    elif not (np.array_equal(add[zero], ar) and np.array_equal(add[:, zero], ar)):
        raise AxiomViolation(Axiom.ADD_ZERO, (zero,))
    missing = np.flatnonzero(~(add == zero).any(axis=1))
    if missing.size:
        raise AxiomViolation(Axiom.ADD_NEG, (int(missing[0]),))
    for a in range(n):
        w = _first_mismatch(mul[mul[a]], mul[a][mul])
        if w is not None:
            raise AxiomViolation(Axiom.MUL_ASSOC, (a,) + w)
    for a in range(n):
        # a(b+c) = ab+ac and (b+c)a = ba+ca
        w = _first_mismatch(mul[a][add], add[np.ix_(mul[a], mul[a])])
        if w is None:
            w = _first_mismatch(mul[:, a][add], add[np.ix_(mul[:, a], mul[:, a])])
        if w is not None:
            raise AxiomViolation(Axiom.DISTRIB, (a,) + w)
    return int(zero)


def build_ring(add_table, mul_table, zero_hint: int | None = None,
               name: str = "ring") -> FiniteGeneralRing:
    """Validate user supplied tables and return the ring they describe."""
    add = np.asarray(add_table, dtype=np.int64)
    mul = np.asarray(mul_table, dtype=np.int64)
    if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] < 1:
        raise ValueError("add_table must be a non-empty square table")
    if mul.shape != add.shape:
        raise ValueError("mul_table must have the same shape as add_table")
    n = add.shape[0]
    for t in (add, mul):
        if t.min() < 0 or t.max() >= n:
            raise ValueError("table entries must be element indices")
    zero = validate_tables(add, mul, zero_hint)
    return FiniteGeneralRing(add, mul, zero, _find_identity(mul), name)
