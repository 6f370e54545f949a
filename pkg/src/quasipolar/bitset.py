"""Immutable sets of element indices packed into a Python int."""
from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np


class Bitset:
    __slots__ = ("_mask",)

    def __init__(self, mask: int = 0):
        self._mask = int(mask)

    @classmethod
    def of(cls, indices: Iterable[int]) -> Bitset:
        m = 0
        for i in indices:
            m |= 1 << int(i)
        return cls(m)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> Bitset:
        return cls.of(np.flatnonzero(mask))

    def to_mask(self, size: int) -> np.ndarray:
        out = np.zeros(size, dtype=bool)
        out[list(self)] = True
        return out

    def __contains__(self, i: int) -> bool:
        return i >= 0 and bool((self._mask >> i) & 1)

    def __iter__(self) -> Iterator[int]:
        m = self._mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return bin(self._mask).count("1")

    def __bool__(self) -> bool:
        return self._mask != 0

    def __and__(self, other: Bitset) -> Bitset:
        return Bitset(self._mask & other._mask)

    def __or__(self, other: Bitset) -> Bitset:
        return Bitset(self._mask | other._mask)

    def __sub__(self, other: Bitset) -> Bitset:
        return Bitset(self._mask & ~other._mask)

    def __le__(self, other: Bitset) -> bool:
        return self._mask & ~other._mask == 0

    def __ge__(self, other: Bitset) -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Bitset):
            return self._mask == other._mask
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._mask)

    def __repr__(self) -> str:
        return f"Bitset({sorted(self)})"

    def sorted(self) -> list[int]:
        return list(self)
