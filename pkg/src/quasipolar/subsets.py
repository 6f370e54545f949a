"""Named element sets of a ring, computed lazily and cached per ring.

``J`` of a general ring is taken to be the largest quasiregular ideal,
computed as ``{a : the two-sided ideal generated by a lies inside Q}``.
"""
from __future__ import annotations

import enum
import threading
from typing import Callable, TypeVar

import numpy as np

from .bitset import Bitset
from .errors import RequiresUnity
from .ring import FiniteGeneralRing

T = TypeVar("T")


class SetKind(str, enum.Enum):
    UNITS = "Units"
    IDEMPOTENTS = "Idem"
    NIL = "Nil"
    Q = "Q"
    QN = "QN"
    QNIL = "Qnil"
    J = "J"
    JSHARP = "Jsharp"

    @property
    def requires_unity(self) -> bool:
        return self in _NEEDS_UNITY


_NEEDS_UNITY = {SetKind.UNITS, SetKind.QNIL, SetKind.JSHARP}


def additive_span(ring: FiniteGeneralRing, gens: np.ndarray) -> np.ndarray:
    """Boolean mask of the additive subgroup generated by ``gens`` (a mask)."""
    span = np.zeros(ring.order, dtype=bool)
    span[ring.zero] = True
    g = np.flatnonzero(gens)
    if g.size == 0:
        return span
    while True:
        grown = span.copy()
        grown[ring.add_table[np.ix_(np.flatnonzero(span), g)].ravel()] = True
        if grown.sum() == span.sum():
            return span
        span = grown


def ideal_closure_mask(ring: FiniteGeneralRing, a: int) -> np.ndarray:
    mul = ring.mul_table
    gens = np.zeros(ring.order, dtype=bool)
    gens[a] = True
    gens[mul[a]] = True
    gens[mul[:, a]] = True
    gens[mul[mul[:, a]].ravel()] = True
    return additive_span(ring, gens)


class SubsetCache:
    """Per-ring memo of element sets and per-element commutants.

    Every entry is a pure function of the ring, so a lost race only costs a
    duplicate computation; the lock keeps that from happening anyway.
    """

    def __init__(self, ring: FiniteGeneralRing):
        self.ring = ring
        self._masks: dict[SetKind, np.ndarray] = {}
        self._comm2: dict[int, np.ndarray] = {}
        self._closures: dict[int, np.ndarray] = {}
        self._memo: dict[object, object] = {}
        self._lock = threading.RLock()

    def memo(self, key, compute: Callable[[], T]) -> T:
        with self._lock:
            if key not in self._memo:
                self._memo[key] = compute()
            return self._memo[key]

    def comm_mask(self, a: int) -> np.ndarray:
        return self.ring.commute_table[a]

    def comm2_mask(self, a: int) -> np.ndarray:
        with self._lock:
            if a not in self._comm2:
                ct = self.ring.commute_table
                self._comm2[a] = ct[:, ct[a]].all(axis=1)
            return self._comm2[a]

    def closure_mask(self, a: int) -> np.ndarray:
        with self._lock:
            if a not in self._closures:
                self._closures[a] = ideal_closure_mask(self.ring, a)
            return self._closures[a]

    def mask(self, kind: SetKind) -> np.ndarray:
        kind = SetKind(kind)
        if kind in _NEEDS_UNITY and not self.ring.has_unity:
            raise RequiresUnity(f"{kind.value} needs a ring with identity ({self.ring.name})")
        with self._lock:
            if kind not in self._masks:
                out = getattr(self, "_compute_" + kind.name.lower())()
                out.setflags(write=False)
                self._masks[kind] = out
            return self._masks[kind]

    def get(self, kind: SetKind) -> Bitset:
        return Bitset.from_mask(self.mask(kind))

    def _compute_units(self):
        hit = self.ring.mul_table == self.ring.unity
        return (hit & hit.T).any(axis=1)

    def _compute_idempotents(self):
        ar = np.arange(self.ring.order)
        return self.ring.mul_table[ar, ar] == ar

    def _compute_nil(self):
        r = self.ring
        ar = np.arange(r.order)
        x = ar.copy()
        nil = np.zeros(r.order, dtype=bool)
        for _ in range(r.order):
            nil |= x == r.zero
            x = r.mul_table[x, ar]
        return nil

    def _compute_q(self):
        hit = self.ring.circle_table == self.ring.zero
        return (hit & hit.T).any(axis=1)

    def _compute_qn(self):
        q = self.mask(SetKind.Q)
        return (~self.ring.commute_table | q[self.ring.mul_table]).all(axis=1)

    def _compute_qnil(self):
        r = self.ring
        units = self.mask(SetKind.UNITS)
        one_plus = r.add_table[r.unity][r.mul_table]
        return (~r.commute_table | units[one_plus]).all(axis=1)

    def _compute_j(self):
        q = self.mask(SetKind.Q)
        out = np.zeros(self.ring.order, dtype=bool)
        for a in np.flatnonzero(q):
            out[a] = q[self.closure_mask(int(a))].all()
        return out

    def _compute_jsharp(self):
        r = self.ring
        j = self.mask(SetKind.J)
        ar = np.arange(r.order)
        x = ar.copy()
        out = np.zeros(r.order, dtype=bool)
        for _ in range(r.order):
            out |= j[x]
            x = r.mul_table[x, ar]
        return out


_attach_lock = threading.Lock()


def cache_of(ring: FiniteGeneralRing) -> SubsetCache:
    cache = ring.__dict__.get("_subset_cache")
    if cache is None:
        with _attach_lock:
            cache = ring.__dict__.setdefault("_subset_cache", SubsetCache(ring))
    return cache


def comm(ring: FiniteGeneralRing, a: int) -> Bitset:
    return Bitset.from_mask(cache_of(ring).comm_mask(a))


def comm2(ring: FiniteGeneralRing, a: int) -> Bitset:
    return Bitset.from_mask(cache_of(ring).comm2_mask(a))


def subset(ring: FiniteGeneralRing, kind: SetKind | str) -> Bitset:
    return cache_of(ring).get(SetKind(kind))


def ideal_closure(ring: FiniteGeneralRing, a: int) -> Bitset:
    return Bitset.from_mask(cache_of(ring).closure_mask(a))


def is_abelian(ring: FiniteGeneralRing) -> bool:
    """Every idempotent is central."""
    idem = cache_of(ring).mask(SetKind.IDEMPOTENTS)
    return bool(ring.commute_table[idem].all())
