"""Ring constructors.

Every constructor returns a ring built with ``FiniteGeneralRing.trusted``:
the outputs satisfy the axioms by construction, and the test-suite checks
that claim with full validation.

Index conventions (documented because ``e=<idx>`` style arguments depend on
them):

* ``zmod(n)``: index ``i`` is the residue ``i``.
* ``matrix_ring(R, k)``: row-major over entries, the (0, 0) entry being the
  most significant digit and digits being R's indices.
* ``direct_product``, ``dorroh``, ``pair_ring``: pairs ``(x, y)`` map to
  ``x * |second| + y`` (first factor most significant).
* ``corner``, ``principal_ideal``, ``subring``: carrier sorted by the index in
  the ambient ring.
* ``quotient``: cosets ordered by their smallest member.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (BimoduleViolation, CharacteristicMismatch,
                     FeasibilityExceeded, NotIdempotent, SemanticError)
from .ring import MAX_ORDER, FiniteGeneralRing
from .subsets import SetKind, additive_span, cache_of


def _check_cap(order: int, cap: int | None) -> None:
    cap = MAX_ORDER if cap is None else cap
    if order > cap:
        raise FeasibilityExceeded(order, cap)


def zmod(n: int) -> FiniteGeneralRing:
    if n < 1:
        raise SemanticError(f"Zmod needs n >= 1, got {n}")
    _check_cap(n, None)
    ar = np.arange(n)
    return FiniteGeneralRing.trusted((ar[:, None] + ar) % n, (ar[:, None] * ar) % n,
                                     f"Zmod{n}")


def zero_mul(n: int) -> FiniteGeneralRing:
    if n < 1:
        raise SemanticError(f"ZeroMul needs n >= 1, got {n}")
    _check_cap(n, None)
    ar = np.arange(n)
    return FiniteGeneralRing.trusted((ar[:, None] + ar) % n, np.zeros((n, n), int),
                                     f"ZeroMul{n}")


def _matrix_digits(n: int, k: int) -> np.ndarray:
    return np.array(list(itertools.product(range(n), repeat=k * k)),
                    dtype=np.int64).reshape(-1, k * k)


def matrix_index(R: FiniteGeneralRing, k: int, entries) -> int:
    """Index of the matrix with the given row-major entries in ``matrix_ring(R, k)``."""
    entries = list(entries)
    if len(entries) != k * k:
        raise ValueError("need k*k entries")
    return reduce(lambda acc, d: acc * R.order + int(d), entries, 0)


def matrix_entries(R: FiniteGeneralRing, k: int, index: int) -> list[int]:
    out = []
    for _ in range(k * k):
        index, d = divmod(index, R.order)
        out.append(d)
    return out[::-1]


def matrix_ring(R: FiniteGeneralRing, k: int, cap: int | None = None) -> FiniteGeneralRing:
    if k < 1:
        raise SemanticError(f"Mat needs k >= 1, got {k}")
    n = R.order
    _check_cap(n ** (k * k), cap)
    digits = _matrix_digits(n, k)
    weights = n ** np.arange(k * k - 1, -1, -1)
    X = digits[:, None, :]
    Y = digits[None, :, :]
    add = R.add_table[X, Y] @ weights
    Xm = X.reshape(-1, 1, k, k)
    Ym = Y.reshape(1, -1, k, k)
    prod = np.empty((len(digits), len(digits), k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            acc = R.mul_table[Xm[..., i, 0], Ym[..., 0, j]]
            for l in range(1, k):
                acc = R.add_table[acc, R.mul_table[Xm[..., i, l], Ym[..., l, j]]]
            prod[..., i, j] = acc
    mul = prod.reshape(len(digits), len(digits), k * k) @ weights
    return FiniteGeneralRing.trusted(add, mul, f"Mat{k}({R.name})")


def _pair_tables(A: np.ndarray, B: np.ndarray, nb: int) -> np.ndarray:
    na = A.shape[0]
    t = A[:, None, :, None] * nb + B[None, :, None, :]
    return t.reshape(na * nb, na * nb)


def direct_product(*rings: FiniteGeneralRing, cap: int | None = None) -> FiniteGeneralRing:
    if not rings:
        raise SemanticError("Product needs at least one factor")
    _check_cap(int(np.prod([r.order for r in rings])), cap)
    add, mul = rings[0].add_table, rings[0].mul_table
    for r in rings[1:]:
        add = _pair_tables(add, r.add_table, r.order)
        mul = _pair_tables(mul, r.mul_table, r.order)
    name = "Product(" + ",".join(r.name for r in rings) + ")"
    return FiniteGeneralRing.trusted(add, mul, name)


@dataclass(frozen=True)
class BimoduleAction:
    """``left[s, v] = s·v`` and ``right[v, s] = v·s`` for s in S, v in I."""

    left: np.ndarray
    right: np.ndarray


def integer_action(S: FiniteGeneralRing, I: FiniteGeneralRing) -> BimoduleAction:
    """The action of S = Z_m on I by integer multiples; needs m·I = 0."""
    if not S.has_unity:
        raise SemanticError("the coefficient ring of a Dorroh extension needs an identity")
    # integer label of each s in S, from the multiples of 1_S
    label = {}
    x, k = S.zero, 0
    while x not in label:
        label[x] = k
        x, k = S.add(x, S.unity), k + 1
    m = k
    if len(label) != S.order:
        raise SemanticError("default action needs S additively generated by its identity")
    bad = [v for v in I.elements() if I.int_multiple(m, v) != I.zero]
    if bad:
        raise CharacteristicMismatch(
            f"{m}·{bad[0]} != 0 in {I.name}; the Z_{m} action is not defined")
    mults = np.array([[I.int_multiple(label[s], v) for v in I.elements()]
                      for s in S.elements()], dtype=np.int64)
    return BimoduleAction(mults, mults.T.copy())


def validate_action(S: FiniteGeneralRing, I: FiniteGeneralRing,
                    action: BimoduleAction) -> None:
    """Exhaustively check the bimodule axioms and the compatibility laws."""
    L, Rt = np.asarray(action.left), np.asarray(action.right)
    if L.shape != (S.order, I.order) or Rt.shape != (I.order, S.order):
        raise ValueError("action tables have the wrong shape")
    Ia, Im, Sa, Sm = I.add_table, I.mul_table, S.add_table, S.mul_table
    s = np.arange(S.order)
    v = np.arange(I.order)
    S1, S2, V = s[:, None, None], s[None, :, None], v[None, None, :]
    Va, Vb, Sx = v[:, None, None], v[None, :, None], s[None, None, :]
    laws = {
        "(s+r)v = sv+rv": (L[Sa[S1, S2], V], Ia[L[S1, V], L[S2, V]]),
        "(sr)v = s(rv)": (L[Sm[S1, S2], V], L[S1, L[S2, V]]),
        "v(s+r) = vs+vr": (Rt[V, Sa[S1, S2]], Ia[Rt[V, S1], Rt[V, S2]]),
        "v(sr) = (vs)r": (Rt[V, Sm[S1, S2]], Rt[Rt[V, S1], S2]),
        "s(v+w) = sv+sw": (L[Sx, Ia[Va, Vb]], Ia[L[Sx, Va], L[Sx, Vb]]),
        "(v+w)s = vs+ws": (Rt[Ia[Va, Vb], Sx], Ia[Rt[Va, Sx], Rt[Vb, Sx]]),
        "(sv)r = s(vr)": (Rt[L[S1, V], S2], L[S1, Rt[V, S2]]),
        "(vw)s = v(ws)": (Rt[Im[Va, Vb], Sx], Im[Va, L[Sx, Vb]]),
        "(vs)w = v(sw)": (Im[Rt[Va, Sx], Vb], Im[Va, L[Sx, Vb]]),
        "(sv)w = s(vw)": (Im[L[Sx, Va], Vb], L[Sx, Im[Va, Vb]]),
    }
    for law, (lhs, rhs) in laws.items():
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            raise BimoduleViolation(law, tuple(int(i) for i in bad[0]))
    if S.has_unity:
        if not (np.array_equal(L[S.unity], v) and np.array_equal(Rt[:, S.unity], v)):
            raise BimoduleViolation("1v = v = v1", (S.unity,))


def dorroh_index(S: FiniteGeneralRing, I: FiniteGeneralRing, s: int, v: int) -> int:
    return s * I.order + v


def dorroh_embedding(S: FiniteGeneralRing, I: FiniteGeneralRing) -> np.ndarray:
    """Indices of ``(0, v)`` for every ``v`` in I."""
    return S.zero * I.order + np.arange(I.order)


def dorroh(S: FiniteGeneralRing, I: FiniteGeneralRing,
           action: BimoduleAction | None = None,
           cap: int | None = None) -> FiniteGeneralRing:
    """Ideal extension S ⊕ I with (s, v)(r, w) = (sr, sw + vr + vw)."""
    if not S.has_unity:
        raise SemanticError("the coefficient ring of a Dorroh extension needs an identity")
    _check_cap(S.order * I.order, cap)
    if action is None:
        action = integer_action(S, I)
    validate_action(S, I, action)
    nI = I.order
    idx = np.arange(S.order * nI)
    s, v = idx // nI, idx % nI
    s1, v1, s2, v2 = s[:, None], v[:, None], s[None, :], v[None, :]
    add = S.add_table[s1, s2] * nI + I.add_table[v1, v2]
    second = I.add_table[I.add_table[action.left[s1, v2], action.right[v1, s2]],
                         I.mul_table[v1, v2]]
    mul = S.mul_table[s1, s2] * nI + second
    return FiniteGeneralRing.trusted(add, mul, f"Dorroh({S.name};{I.name})")


def subring(ring: FiniteGeneralRing, carrier, name: str) -> FiniteGeneralRing:
    """Restrict the tables to ``carrier``, which must be closed under + and ·."""
    c = np.array(sorted(int(x) for x in carrier), dtype=np.int64)
    pos = np.full(ring.order, -1, dtype=np.int64)
    pos[c] = np.arange(c.size)
    add = pos[ring.add_table[np.ix_(c, c)]]
    mul = pos[ring.mul_table[np.ix_(c, c)]]
    if (add < 0).any() or (mul < 0).any():
        raise SemanticError(f"carrier of {name} is not closed under the ring operations")
    out = FiniteGeneralRing.trusted(add, mul, name)
    out.ambient_indices = tuple(int(x) for x in c)
    return out


def corner_carrier(I: FiniteGeneralRing, e: int) -> list[int]:
    return sorted(set(int(x) for x in I.mul_table[I.mul_table[e], e]))


def corner(I: FiniteGeneralRing, e: int) -> FiniteGeneralRing:
    if not 0 <= e < I.order:
        raise SemanticError(f"element {e} out of range for {I.name}")
    if I.mul(e, e) != e:
        raise NotIdempotent(f"{e} is not idempotent in {I.name}")
    return subring(I, corner_carrier(I, e), f"Corner({I.name})e={e}")


def principal_ideal(I: FiniteGeneralRing, a: int) -> FiniteGeneralRing:
    if not 0 <= a < I.order:
        raise SemanticError(f"element {a} out of range for {I.name}")
    carrier = np.flatnonzero(cache_of(I).closure_mask(a))
    return subring(I, carrier, f"Ideal({I.name})a={a}")


def pair_ring(R: FiniteGeneralRing, cap: int | None = None) -> FiniteGeneralRing:
    """Pairs with componentwise + and (a, b)(c, d) = (ac, ad)."""
    n = R.order
    _check_cap(n * n, cap)
    idx = np.arange(n * n)
    a, b = idx // n, idx % n
    add = R.add_table[a[:, None], a[None, :]] * n + R.add_table[b[:, None], b[None, :]]
    mul = R.mul_table[a[:, None], a[None, :]] * n + R.mul_table[a[:, None], b[None, :]]
    return FiniteGeneralRing.trusted(add, mul, f"PairRing({R.name})")


def quotient(I: FiniteGeneralRing, a: int) -> FiniteGeneralRing:
    """I modulo the two-sided ideal generated by ``a``."""
    if not 0 <= a < I.order:
        raise SemanticError(f"element {a} out of range for {I.name}")
    ideal = np.flatnonzero(cache_of(I).closure_mask(a))
    label = np.full(I.order, -1, dtype=np.int64)
    reps = []
    for x in I.elements():
        if label[x] < 0:
            label[I.add_table[x, ideal]] = len(reps)
            reps.append(x)
    reps = np.array(reps)
    add = label[I.add_table[np.ix_(reps, reps)]]
    mul = label[I.mul_table[np.ix_(reps, reps)]]
    out = FiniteGeneralRing.trusted(add, mul, f"Quotient({I.name})a={a}")
    out.coset_labels = tuple(int(x) for x in label)
    return out


def additive_exponent(I: FiniteGeneralRing) -> int:
    """Least m >= 1 with m·x = 0 for every x (the characteristic)."""
    return int(np.lcm.reduce([I.additive_order(x) for x in I.elements()]))


# isomorphism search, meant for small rings only

ISO_MAX_ORDER = 16


def _invariants(R: FiniteGeneralRing):
    c = cache_of(R)
    orders = sorted(R.additive_order(x) for x in R.elements())
    return (R.order, R.has_unity, R.is_commutative, orders,
            int(c.mask(SetKind.IDEMPOTENTS).sum()), int(c.mask(SetKind.NIL).sum()))


def _additive_generators(R: FiniteGeneralRing) -> list[int]:
    gens: list[int] = []
    span = np.zeros(R.order, dtype=bool)
    span[R.zero] = True
    for x in R.elements():
        if not span[x]:
            gens.append(x)
            mask = np.zeros(R.order, dtype=bool)
            mask[gens] = True
            span = additive_span(R, mask)
    return gens


def find_isomorphism(R: FiniteGeneralRing, S: FiniteGeneralRing,
                     max_order: int = ISO_MAX_ORDER) -> list[int] | None:
    """Return ``h`` with ``h[x]`` the image of x, or None if R and S differ.

    Backtracks over images of an additive generating set of R.
    """
    if max(R.order, S.order) > max_order:
        raise FeasibilityExceeded(max(R.order, S.order), max_order)
    if _invariants(R) != _invariants(S):
        return None
    gens = _additive_generators(R)
    s_orders = [S.additive_order(y) for y in S.elements()]
    choices = [[y for y in S.elements() if s_orders[y] == R.additive_order(g)]
               for g in gens]
    for images in itertools.product(*choices):
        h = _extend_additively(R, S, gens, images)
        if h is None:
            continue
        if np.array_equal(S.mul_table[h[:, None], h[None, :]], h[R.mul_table]):
            return [int(x) for x in h]
    return None


def _extend_additively(R, S, gens, images) -> np.ndarray | None:
    h = np.full(R.order, -1, dtype=np.int64)
    h[R.zero] = S.zero
    frontier = [R.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(gens, images):
                y = R.add(x, g)
                hy = S.add(int(h[x]), img)
                if h[y] < 0:
                    h[y] = hy
                    nxt.append(y)
                elif h[y] != hy:
                    return None
        frontier = nxt
    if (h < 0).any() or len(set(h.tolist())) != R.order:
        return None
    return h


def is_isomorphic(R: FiniteGeneralRing, S: FiniteGeneralRing) -> bool:
    return find_isomorphism(R, S) is not None
