"""Element classification with mechanically re-checkable certificates.

All searches are exhaustive and scan candidates in ascending index order.
Searches whose answer is claimed to be unique (the spectral idempotent, the
generalized Drazin inverse, the pseudo Drazin inverse) keep scanning after
the first hit and raise :class:`AmbiguousInverse` on a second one.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field, fields
from typing import ClassVar

import numpy as np

from .errors import (AmbiguousInverse, CertificateError, InternalInvariantBroken,
                     RequiresUnity)
from .ring import FiniteGeneralRing
from .subsets import SetKind, cache_of


def _mask(ring: FiniteGeneralRing, kind: SetKind) -> np.ndarray:
    return cache_of(ring).mask(kind)


def _in(ring: FiniteGeneralRing, kind: SetKind, x: int) -> bool:
    return bool(_mask(ring, kind)[x])


def _comm(ring: FiniteGeneralRing, a: int) -> np.ndarray:
    return np.flatnonzero(cache_of(ring).comm_mask(a))


def _comm2(ring: FiniteGeneralRing, a: int) -> np.ndarray:
    return np.flatnonzero(cache_of(ring).comm2_mask(a))


def _in_comm2(ring: FiniteGeneralRing, a: int, x: int) -> bool:
    return bool(cache_of(ring).comm2_mask(a)[x])


def _idempotents(ring: FiniteGeneralRing) -> np.ndarray:
    return np.flatnonzero(_mask(ring, SetKind.IDEMPOTENTS))


def _need_unity(ring: FiniteGeneralRing, what: str) -> None:
    if not ring.has_unity:
        raise RequiresUnity(f"{what} is only defined in rings with identity ({ring.name})")


def _memoized(fn):
    @functools.wraps(fn)
    def wrapper(ring: FiniteGeneralRing, a: int):
        return cache_of(ring).memo((fn.__name__, int(a)), lambda: fn(ring, int(a)))
    return wrapper


# certificates


@dataclass(frozen=True)
class Certificate:
    """Witness data for one classification; re-verified on construction."""

    kind: ClassVar[str] = ""

    ring: FiniteGeneralRing = field(repr=False, compare=False)
    a: int

    def __post_init__(self):
        self.verify()

    def verify(self) -> None:
        raise NotImplementedError

    def _require(self, ok: bool, what: str) -> None:
        if not ok:
            raise CertificateError(f"{self.kind} certificate for {self.a} in "
                                   f"{self.ring.name}: {what} fails")

    def payload(self) -> dict[str, int]:
        out = {}
        for f in fields(self):
            if f.name in ("ring", "a"):
                continue
            v = getattr(self, f.name)
            if v is not None:
                out[f.name] = int(v)
        return out


@dataclass(frozen=True)
class StronglyRegular(Certificate):
    kind: ClassVar[str] = "SR"
    b: int
    # witness of the double-commutant form a = a^2 b' (None if absent)
    b_comm2: int | None = None

    def verify(self):
        R, a, b = self.ring, self.a, self.b
        self._require(R.mul(R.mul(a, b), a) == a, "a = aba")
        self._require(R.commute(a, b), "ab = ba")
        if self.b_comm2 is not None:
            self._require(_in_comm2(R, a, self.b_comm2), "b' in comm2(a)")
            self._require(R.mul(R.mul(a, a), self.b_comm2) == a, "a = a^2 b'")

    @property
    def b_in_comm2(self) -> bool:
        return _in_comm2(self.ring, self.a, self.b)


@dataclass(frozen=True)
class StronglyPiRegular(Certificate):
    kind: ClassVar[str] = "SPR"
    n: int
    x: int
    b: int
    p: int

    def verify(self):
        R, a, n, x, b, p = self.ring, self.a, self.n, self.x, self.b, self.p
        nil = _mask(R, SetKind.NIL)
        q = _mask(R, SetKind.Q)
        self._require(R.power(a, n) == R.mul(R.power(a, n + 1), x), "a^n = a^(n+1) x")
        self._require(R.commute(a, x), "ax = xa")
        self._require(R.mul(a, R.mul(b, b)) == b, "ab^2 = b")
        self._require(bool(nil[R.sub(R.mul(R.mul(a, a), b), a)]), "a^2 b - a nilpotent")
        self._require(_in_comm2(R, a, b), "b in comm2(a)")
        self._require(p == R.mul(a, b) and R.mul(p, p) == p, "p = ab idempotent")
        self._require(_in_comm2(R, a, p), "p in comm2(a)")
        self._require(bool(nil[R.sub(a, R.mul(a, p))]), "a - ap nilpotent")
        self._require(bool(q[R.add(a, p)]), "a + p quasiregular")


@dataclass(frozen=True)
class Quasipolar(Certificate):
    kind: ClassVar[str] = "QP"
    p: int
    r: int
    b: int

    def verify(self):
        R, a, p, r, b = self.ring, self.a, self.p, self.r, self.b
        qn = _mask(R, SetKind.QN)
        q = R.add(a, p)
        self._require(R.mul(p, p) == p, "p^2 = p")
        self._require(_in_comm2(R, a, p), "p in comm2(a)")
        self._require(R.circle(q, r) == R.zero == R.circle(r, q), "(a+p)∘r = 0 = r∘(a+p)")
        self._require(bool(qn[R.sub(a, R.mul(a, p))]), "a - ap quasinilpotent")
        self._require(b == R.sub(R.mul(r, p), p), "b = rp - p")
        self._require(_in_comm2(R, a, b), "b in comm2(a)")
        self._require(R.mul(a, R.mul(b, b)) == b, "ab^2 = b")
        self._require(bool(qn[R.sub(R.mul(R.mul(a, a), b), a)]), "a^2 b - a quasinilpotent")
        self._require(R.mul(a, b) == p, "p = ab")


@dataclass(frozen=True)
class StronglyClean(Certificate):
    kind: ClassVar[str] = "SC"
    e: int
    q: int
    q_inv: int

    def verify(self):
        R, a, e, q = self.ring, self.a, self.e, self.q
        self._require(R.mul(e, e) == e, "e^2 = e")
        self._require(R.add(e, q) == a, "a = e + q")
        self._require(R.commute(e, q), "eq = qe")
        self._require(R.circle(q, self.q_inv) == R.zero == R.circle(self.q_inv, q),
                      "q quasiregular")


@dataclass(frozen=True)
class Pseudopolar(Certificate):
    kind: ClassVar[str] = "PP"
    p: int
    k: int
    b: int
    s: int
    q: int

    def verify(self):
        R, a, p, k, b, s, q = self.ring, self.a, self.p, self.k, self.b, self.s, self.q
        j = _mask(R, SetKind.J)
        self._require(R.mul(p, p) == p and _in_comm2(R, a, p), "p^2 = p in comm2(a)")
        self._require(_in(R, SetKind.UNITS, R.add(a, p)), "a + p unit")
        self._require(bool(j[R.mul(R.power(a, k), p)]), "a^k p in J")
        self._require(R.mul(a, R.mul(b, b)) == b and _in_comm2(R, a, b),
                      "ab^2 = b in comm2(a)")
        a2b = R.mul(R.mul(a, a), b)
        self._require(bool(j[R.power(R.sub(a, a2b), k)]), "(a - a^2 b)^k in J")
        self._require(s == a2b and q == R.sub(a, a2b), "s = a^2 b, q = a - a^2 b")
        self._require(R.mul(R.mul(s, s), b) == s and _in_comm2(R, a, s),
                      "s = s^2 b in comm2(a)")
        self._require(_in(R, SetKind.JSHARP, q), "q in J#")
        self._require(R.mul(s, q) == R.zero == R.mul(q, s), "sq = qs = 0")


@dataclass(frozen=True)
class StronglyPiRadClean(Certificate):
    kind: ClassVar[str] = "SPRC"
    e: int
    n: int

    def verify(self):
        R, a, e, n = self.ring, self.a, self.e, self.n
        self._require(R.mul(e, e) == e and R.commute(a, e), "e^2 = e, ae = ea")
        self._require(_in(R, SetKind.UNITS, R.sub(a, e)), "a - e unit")
        self._require(_in(R, SetKind.J, R.mul(R.power(a, n), e)), "a^n e in J")


@dataclass(frozen=True)
class Semiregular(Certificate):
    kind: ClassVar[str] = "SEMIREG"
    b: int

    def verify(self):
        R, a, b = self.ring, self.a, self.b
        self._require(R.mul(R.mul(b, a), b) == b, "bab = b")
        self._require(_in(R, SetKind.J, R.sub(a, R.mul(R.mul(a, b), a))), "a - aba in J")


@dataclass(frozen=True)
class UnitalQuasipolar(Certificate):
    kind: ClassVar[str] = "UQP"
    p: int

    def verify(self):
        R, a, p = self.ring, self.a, self.p
        self._require(R.mul(p, p) == p and _in_comm2(R, a, p), "p^2 = p in comm2(a)")
        self._require(_in(R, SetKind.UNITS, R.add(a, p)), "a + p unit")
        self._require(_in(R, SetKind.QNIL, R.mul(a, p)), "ap quasinilpotent")


# searches


def sr_witnesses(ring: FiniteGeneralRing, a: int, within: str = "comm") -> np.ndarray:
    """All b in comm(a) with a = aba, or (within="comm2") all b in comm2(a) with a = a^2 b."""
    mul = ring.mul_table
    if within == "comm":
        B = _comm(ring, a)
        return B[mul[mul[a, B], a] == a]
    B = _comm2(ring, a)
    return B[mul[mul[a, a], B] == a]


@_memoized
def strongly_regular(ring: FiniteGeneralRing, a: int) -> StronglyRegular | None:
    hits = sr_witnesses(ring, a)
    if not hits.size:
        return None
    alt = sr_witnesses(ring, a, "comm2")
    return StronglyRegular(ring, a, int(hits[0]), int(alt[0]) if alt.size else None)


def spr_witness(ring: FiniteGeneralRing, a: int) -> tuple[int, int] | None:
    """Least n <= order and first x in comm(a) with a^n = a^(n+1) x."""
    X = _comm(ring, a)
    pw = ring.powers(a, ring.order + 1)
    for n in range(1, ring.order + 1):
        hits = X[ring.mul_table[pw[n], X] == pw[n - 1]]
        if hits.size:
            return n, int(hits[0])
    return None


def drazin_candidates(ring: FiniteGeneralRing, a: int, within: str = "comm2",
                      radical: SetKind = SetKind.NIL) -> np.ndarray:
    """All b in comm2(a) (or comm(a)) with ab^2 = b and a^2 b - a in ``radical``."""
    B = _comm2(ring, a) if within == "comm2" else _comm(ring, a)
    mul = ring.mul_table
    ok = mul[a, mul[B, B]] == B
    ok &= _mask(ring, radical)[ring.sub_table[mul[mul[a, a], B], a]]
    return B[ok]


def spectral_candidates(ring: FiniteGeneralRing, a: int, within: str = "comm2",
                        radical: SetKind = SetKind.NIL) -> np.ndarray:
    """All idempotents p in comm2(a) (or comm(a)) with a - ap in ``radical``, a + p in Q."""
    mask = cache_of(ring).comm2_mask(a) if within == "comm2" else cache_of(ring).comm_mask(a)
    P = _idempotents(ring)
    P = P[mask[P]]
    ok = _mask(ring, radical)[ring.sub_table[a, ring.mul_table[a, P]]]
    ok &= _mask(ring, SetKind.Q)[ring.add_table[a, P]]
    return P[ok]


def _unique(what: str, a: int, hits: np.ndarray) -> int | None:
    if hits.size > 1:
        raise AmbiguousInverse(what, a, int(hits[0]), int(hits[1]))
    return int(hits[0]) if hits.size else None


@_memoized
def strongly_pi_regular(ring: FiniteGeneralRing, a: int) -> StronglyPiRegular:
    found = spr_witness(ring, a)
    if found is None:
        raise InternalInvariantBroken(
            f"{a} in {ring.name} has no a^n = a^(n+1) x witness; impossible in a finite ring")
    n, x = found
    b = _unique("Drazin inverse", a, drazin_candidates(ring, a))
    if b is None:
        raise InternalInvariantBroken(f"{a} in {ring.name} is strongly pi-regular "
                                      "but has no Drazin inverse")
    return StronglyPiRegular(ring, a, n, x, b, ring.mul(a, b))


@_memoized
def gdrazin_inverse(ring: FiniteGeneralRing, a: int) -> int | None:
    """The generalized Drazin inverse found by direct search, or None."""
    return _unique("generalized Drazin inverse", a,
                   drazin_candidates(ring, a, radical=SetKind.QN))


def quasipolar_idempotents(ring: FiniteGeneralRing, a: int) -> np.ndarray:
    return spectral_candidates(ring, a, radical=SetKind.QN)


@_memoized
def quasipolar(ring: FiniteGeneralRing, a: int) -> Quasipolar | None:
    p = _unique("quasipolar idempotent", a, quasipolar_idempotents(ring, a))
    if p is None:
        return None
    r = ring.quasi_inverse(ring.add(a, p))
    return Quasipolar(ring, a, p, r, ring.sub(ring.mul(r, p), p))


def quasipolar_from_idempotent(ring: FiniteGeneralRing, a: int, p: int) -> Quasipolar:
    """Certificate built around a given idempotent; raises CertificateError if unfit."""
    r = ring.quasi_inverse(ring.add(a, p))
    if r is None:
        raise CertificateError(f"a + p is not quasiregular for a={a}, p={p}")
    return Quasipolar(ring, a, p, r, ring.sub(ring.mul(r, p), p))


def pseudo_inverse(ring: FiniteGeneralRing, a: int) -> tuple[int, int] | None:
    """Least m and first c with ac = ca, a^m = a^(m+1) c and c = c^2 a."""
    C = _comm(ring, a)
    mul = ring.mul_table
    C = C[mul[mul[C, C], a] == C]
    pw = ring.powers(a, ring.order + 1)
    for m in range(1, ring.order + 1):
        hits = C[mul[pw[m], C] == pw[m - 1]]
        if hits.size:
            return m, int(hits[0])
    return None


@_memoized
def decompose_spr(ring: FiniteGeneralRing, a: int) -> tuple[int, int] | None:
    """a = s + n with s strongly regular, n nilpotent and sn = ns = 0."""
    found = pseudo_inverse(ring, a)
    if found is None:
        return None
    _, c = found
    R = ring
    s = R.mul(R.mul(a, c), a)
    n = R.sub(a, s)
    checks = {
        "s strongly regular": strongly_regular(R, s) is not None,
        "n nilpotent": _in(R, SetKind.NIL, n),
        "sn = ns = 0": R.mul(s, n) == R.zero == R.mul(n, s),
        "s + n = a": R.add(s, n) == a,
    }
    for what, ok in checks.items():
        if not ok:
            raise CertificateError(f"decompose_spr({a}) in {R.name}: {what} fails")
    return s, n


def quasipolar_from_sq(ring: FiniteGeneralRing, a: int, s: int, q: int) -> Quasipolar:
    """The converse construction: from a = s + q build the idempotent sy."""
    R = ring
    if R.add(s, q) != a:
        raise CertificateError("s + q != a")
    ys = sr_witnesses(R, s, "comm2")
    if not ys.size:
        raise CertificateError(f"{s} is not strongly regular")
    return quasipolar_from_idempotent(R, a, R.mul(s, int(ys[0])))


@_memoized
def decompose_qp(ring: FiniteGeneralRing, a: int) -> tuple[int, int] | None:
    """a = s + q with s strongly regular in comm2(a), q quasinilpotent, sq = qs = 0."""
    cert = quasipolar(ring, a)
    if cert is None:
        return None
    R = ring
    s = R.mul(R.mul(a, a), cert.b)
    q = R.sub(a, s)
    checks = {
        "s strongly regular": strongly_regular(R, s) is not None,
        "s in comm2(a)": _in_comm2(R, a, s),
        "q quasinilpotent": _in(R, SetKind.QN, q),
        "sq = qs = 0": R.mul(s, q) == R.zero == R.mul(q, s),
        "converse reproduces p": quasipolar_from_sq(R, a, s, q).p == cert.p,
    }
    for what, ok in checks.items():
        if not ok:
            raise CertificateError(f"decompose_qp({a}) in {R.name}: {what} fails")
    return s, q


@_memoized
def strongly_clean(ring: FiniteGeneralRing, a: int) -> StronglyClean | None:
    q_mask = _mask(ring, SetKind.Q)
    for e in _idempotents(ring):
        q = ring.sub(a, int(e))
        if q_mask[q] and ring.commute(int(e), q):
            return StronglyClean(ring, a, int(e), q, ring.quasi_inverse(q))
    return None


def _least_exponent(ring: FiniteGeneralRing, a: int, tail: int, target: np.ndarray) -> int | None:
    """Least k <= order with a^k * tail in ``target``."""
    x = a
    for k in range(1, ring.order + 1):
        if target[ring.mul(x, tail)]:
            return k
        x = ring.mul(x, a)
    return None


def pseudo_drazin_candidates(ring: FiniteGeneralRing, a: int) -> np.ndarray:
    """All b in comm2(a) with ab^2 = b and (a - a^2 b)^k in J for some k."""
    B = _comm2(ring, a)
    mul = ring.mul_table
    ok = mul[a, mul[B, B]] == B
    ok &= _mask(ring, SetKind.JSHARP)[ring.sub_table[a, mul[mul[a, a], B]]]
    return B[ok]


def _inverse(ring: FiniteGeneralRing, u: int) -> int:
    hits = np.flatnonzero((ring.mul_table[u] == ring.unity)
                          & (ring.mul_table[:, u] == ring.unity))
    return int(hits[0])


@_memoized
def pseudopolar(ring: FiniteGeneralRing, a: int) -> Pseudopolar | None:
    _need_unity(ring, "pseudopolarity")
    units = _mask(ring, SetKind.UNITS)
    j = _mask(ring, SetKind.J)
    for p in _idempotents(ring):
        p = int(p)
        if not (_in_comm2(ring, a, p) and units[ring.add(a, p)]):
            continue
        k = _least_exponent(ring, a, p, j)
        if k is None:
            continue
        # b = (a + p)^-1 (1 - p)
        b = ring.mul(_inverse(ring, ring.add(a, p)), ring.sub(ring.unity, p))
        searched = _unique("pseudo Drazin inverse", a, pseudo_drazin_candidates(ring, a))
        if searched != b:
            raise CertificateError(f"pseudo Drazin inverse of {a}: formula {b} "
                                   f"vs search {searched}")
        s = ring.mul(ring.mul(a, a), b)
        return Pseudopolar(ring, a, p, k, b, s, ring.sub(a, s))
    return None


@_memoized
def strongly_pi_rad_clean(ring: FiniteGeneralRing, a: int) -> StronglyPiRadClean | None:
    _need_unity(ring, "strong pi-rad cleanness")
    units = _mask(ring, SetKind.UNITS)
    j = _mask(ring, SetKind.J)
    for e in _idempotents(ring):
        e = int(e)
        if ring.commute(a, e) and units[ring.sub(a, e)]:
            n = _least_exponent(ring, a, e, j)
            if n is not None:
                return StronglyPiRadClean(ring, a, e, n)
    return None


@_memoized
def semiregular(ring: FiniteGeneralRing, a: int) -> Semiregular | None:
    _need_unity(ring, "semiregularity")
    mul = ring.mul_table
    B = np.arange(ring.order)
    ok = mul[mul[B, a], B] == B
    ok &= _mask(ring, SetKind.J)[ring.sub_table[a, mul[mul[a, B], a]]]
    hits = B[ok]
    return Semiregular(ring, a, int(hits[0])) if hits.size else None


@_memoized
def unital_quasipolar(ring: FiniteGeneralRing, a: int) -> UnitalQuasipolar | None:
    _need_unity(ring, "unital quasipolarity")
    units = _mask(ring, SetKind.UNITS)
    qnil = _mask(ring, SetKind.QNIL)
    for p in _idempotents(ring):
        p = int(p)
        if _in_comm2(ring, a, p) and units[ring.add(a, p)] and qnil[ring.mul(a, p)]:
            return UnitalQuasipolar(ring, a, p)
    return None


def spr_quasi_inverse_formula(ring: FiniteGeneralRing, a: int, n: int, x: int, p: int) -> int:
    """r = tp - t + a^(n-1) x^n p + p with t = a + ... + a^(n-1).

    Closed-form candidate for the quasi-inverse of a + p, built from the
    witness a^n = a^(n+1) x.  Callers compare it against the searched
    quasi-inverse; disagreement is reported, not raised.
    """
    R = ring
    t = R.zero
    for i in range(1, n):
        t = R.add(t, R.power(a, i))
    tail = R.mul(R.power(x, n), p)
    if n > 1:
        tail = R.mul(R.power(a, n - 1), tail)
    r = R.sub(R.mul(t, p), t)
    return R.add(R.add(r, tail), p)


NOTIONS = ("SR", "SPR", "QP", "SC", "PP", "SPRC", "SEMIREG", "UQP")
UNITAL_NOTIONS = frozenset({"PP", "SPRC", "SEMIREG", "UQP"})

_BY_NOTION = {
    "SR": strongly_regular,
    "SPR": strongly_pi_regular,
    "QP": quasipolar,
    "SC": strongly_clean,
    "PP": pseudopolar,
    "SPRC": strongly_pi_rad_clean,
    "SEMIREG": semiregular,
    "UQP": unital_quasipolar,
}


def classify(ring: FiniteGeneralRing, a: int, notion: str) -> Certificate | None:
    return _BY_NOTION[notion](ring, a)


def everywhere(ring: FiniteGeneralRing, notion: str) -> bool:
    return all(classify(ring, a, notion) is not None for a in ring.elements())
