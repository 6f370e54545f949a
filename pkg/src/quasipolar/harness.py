"""Theorem registry and runner.

Each registered check evaluates one result over a ring (per element, per
idempotent, or once per ring) and yields pass/fail records.  Reports
serialize to::

    CHECK <id> <ring> <element|*> <pass|fail|skip> [key=value ...]
    SUMMARY checked=<n> failed=<n> skipped=<n>
"""
from __future__ import annotations

import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import classification as cl
from . import constructions as C
from .errors import CharacteristicMismatch, FeasibilityExceeded, RingError
from .expr import (Corner, Dorroh, Ideal, Mat, PairRing, Product, RingExpr, ZeroMul,
                   Zmod, evaluate, parse_ring_expr)
from .ring import FiniteGeneralRing
from .subsets import SetKind, cache_of, is_abelian

PER_ELEMENT = "per-element"
PER_IDEMPOTENT = "per-idempotent"
PER_RING = "per-ring"
CROSS_RING = "cross-ring"


@dataclass(frozen=True)
class Context:
    expr: RingExpr
    ring: FiniteGeneralRing

    @property
    def cache(self):
        return cache_of(self.ring)

    def mask(self, kind: SetKind) -> np.ndarray:
        return self.cache.mask(kind)


Outcome = tuple[bool, dict]


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    scope: str
    requires_unity: bool
    checker: Callable[[Context, int | None], Outcome]
    statement: str
    # cross-ring checks supply their own iteration domain
    domain: Callable[[Context], Iterable[int | None]] | None = None
    # returns a skip reason when the check does not apply to this ring
    applies: Callable[[Context], str | None] | None = None

    def items(self, ctx: Context) -> Iterable[int | None]:
        if self.domain is not None:
            return self.domain(ctx)
        if self.scope == PER_RING:
            return [None]
        if self.scope == PER_IDEMPOTENT:
            return [int(e) for e in np.flatnonzero(ctx.mask(SetKind.IDEMPOTENTS))]
        return list(ctx.ring.elements())


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    return "_".join(str(v).split())


@dataclass(frozen=True)
class CheckRecord:
    theorem: str
    ring: str
    element: int | None
    status: str
    payload: tuple[tuple[str, str], ...] = ()

    def line(self) -> str:
        elem = "*" if self.element is None else str(self.element)
        parts = ["CHECK", self.theorem, self.ring, elem, self.status]
        parts += [f"{k}={v}" for k, v in self.payload]
        return " ".join(parts)

    @property
    def sort_key(self):
        return (self.theorem, self.ring, -1 if self.element is None else self.element)


def _record(check_id, ring_name, element, status, payload: dict) -> CheckRecord:
    return CheckRecord(check_id, ring_name, element, status,
                       tuple((k, _fmt(v)) for k, v in payload.items()))


@dataclass
class TheoremReport:
    records: list[CheckRecord] = field(default_factory=list)
    # wall time per (theorem id, ring name); kept out of the text form
    timings: dict[tuple[str, str], float] = field(default_factory=dict)
    infeasible: list[str] = field(default_factory=list)

    @property
    def checked(self) -> int:
        return sum(r.status != "skip" for r in self.records)

    @property
    def failed(self) -> int:
        return sum(r.status == "fail" for r in self.records)

    @property
    def skipped(self) -> int:
        return sum(r.status == "skip" for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == "fail"]

    def select(self, theorem: str | None = None, ring: str | None = None) -> list[CheckRecord]:
        return [r for r in self.records
                if (theorem is None or r.theorem == theorem)
                and (ring is None or r.ring == ring)]

    def summary_line(self) -> str:
        return f"SUMMARY checked={self.checked} failed={self.failed} skipped={self.skipped}"

    def text(self) -> str:
        return "\n".join([r.line() for r in self.records] + [self.summary_line()]) + "\n"


# helpers

def _qp_everywhere(ring):
    return cl.everywhere(ring, "QP")


def _idx_in(mask, x) -> bool:
    return bool(mask[x])


# per-element checks


def check_l21(ctx, a):
    R = ctx.ring
    g = cl.quasipolar(R, a)
    u = cl.unital_quasipolar(R, a)
    pay = {"p_general": None if g is None else g.p, "p_unital": None if u is None else u.p}
    ok = (g is None) == (u is None)
    if ok and g is not None:
        ok = g.p == R.sub(R.unity, u.p)
    return ok, {k: v for k, v in pay.items() if v is not None}


def check_l25(ctx, a):
    R = ctx.ring
    c = R.quasi_inverse(a)
    if c is None:
        return True, {"vacuous": True}
    comm_a = ctx.cache.comm_mask(a)
    ok = bool(R.commute_table[c][comm_a].all())
    return ok, {"c": c}


def check_l26(ctx, a):
    R = ctx.ring
    right = np.flatnonzero(R.circle_table[a] == R.zero)
    left = np.flatnonzero(R.circle_table[:, a] == R.zero)
    ok = True
    if right.size and left.size:
        ok = right.size == 1 and left.size == 1 and right[0] == left[0]
    return ok, {"right": right.tolist(), "left": left.tolist()}


def check_l27(ctx, a):
    R = ctx.ring
    qn, q = ctx.mask(SetKind.QN), ctx.mask(SetKind.Q)
    if not qn[a]:
        return True, {"vacuous": True}
    na = R.neg(a)
    ok = bool(q[a] and q[na] and qn[na])
    return ok, {"a_in_Q": bool(q[a]), "neg_in_Q": bool(q[na]), "neg_in_QN": bool(qn[na])}


def check_c29(ctx, a):
    R = ctx.ring
    if cl.quasipolar(R, a) is None:
        return True, {"vacuous": True}
    na = R.neg(a)
    b, nb = cl.gdrazin_inverse(R, a), cl.gdrazin_inverse(R, na)
    ok = cl.quasipolar(R, na) is not None and nb == R.neg(b)
    return ok, {"b": b, "b_neg": nb}


def check_t28(ctx, a):
    R = ctx.ring
    cert = cl.quasipolar(R, a)
    b = cl.gdrazin_inverse(R, a)
    if cert is None or b is None:
        return (cert is None and b is None), {"quasipolar": cert is not None, "gd": b}
    ok = cert.b == b and cert.p == R.mul(a, b)
    return ok, {"b": b, "p": cert.p, "r": cert.r}


def check_t210(ctx, a):
    R = ctx.ring
    w = cl.spr_witness(R, a)
    p2 = cl.spectral_candidates(R, a, "comm2")
    p3 = cl.spectral_candidates(R, a, "comm")
    b4 = cl.drazin_candidates(R, a, "comm2")
    b5 = cl.drazin_candidates(R, a, "comm")
    exists = [w is not None, p2.size > 0, p3.size > 0, b4.size > 0, b5.size > 0]
    pay = {"exists": exists}
    ok = len(set(exists)) == 1
    # uniqueness of p and b, and agreement of the comm / comm2 variants
    ok &= max(p2.size, p3.size, b4.size, b5.size) <= 1
    ok &= p2.tolist() == p3.tolist() and b4.tolist() == b5.tolist()
    if ok and w is not None:
        n, x = w
        p, b = int(p2[0]), int(b4[0])
        pay.update(n=n, x=x, p=p, b=b)
        ok &= p == R.mul(a, b)
        ok &= b == R.mul(R.power(a, n), R.power(x, n + 1))
        r = R.quasi_inverse(R.add(a, p))
        r_formula = cl.spr_quasi_inverse_formula(R, a, n, x, p)
        # reported only, never counted as a failure
        pay["r_formula"] = "agree" if r_formula == r else "disagree"
    return bool(ok), pay


def check_c212(ctx, a):
    R = ctx.ring
    spr = cl.spr_witness(R, a) is not None
    sc = cl.strongly_clean(R, a)
    ok = (not spr) or sc is not None
    return ok, {} if sc is None else {"e": sc.e, "q": sc.q}


def check_l213(ctx, a):
    R = ctx.ring
    left = cl.sr_witnesses(R, a, "comm")
    right = cl.sr_witnesses(R, a, "comm2")
    return (left.size > 0) == (right.size > 0), {"comm": left.size, "comm2": right.size}


def check_t214(ctx, a):
    R = ctx.ring
    spr = cl.spr_witness(R, a) is not None
    dec = cl.decompose_spr(R, a)
    if dec is None:
        return not spr, {"spr": spr}
    s, n = dec
    # converse: a^k = a^(k+1) y with k the nilpotency index of n, y in comm2(s)
    k = R.nilpotency_index(n)
    y = int(cl.sr_witnesses(R, s, "comm2")[0])
    ok = spr and R.power(a, k) == R.mul(R.power(a, k + 1), y) and R.commute(a, y)
    return ok, {"s": s, "n": n, "k": k}


def check_c215(ctx, a):
    R = ctx.ring
    if cl.spr_witness(R, a) is None:
        return True, {"vacuous": True}
    for k, ak in enumerate(R.powers(a), start=1):
        if cl.strongly_regular(R, ak) is not None:
            return True, {"k": k}
    return False, {}


def check_t216(ctx, a):
    R = ctx.ring
    qp = cl.quasipolar(R, a)
    dec = cl.decompose_qp(R, a)
    if dec is None:
        return qp is None, {"quasipolar": qp is not None}
    s, q = dec
    back = cl.quasipolar_from_sq(R, a, s, q)
    return qp is not None and back.b == qp.b, {"s": s, "q": q, "p": back.p}


def _pp_decomposition_search(R, a):
    """First s in comm2(a) with s strongly regular, a - s in J#, sq = qs = 0."""
    jsharp = cache_of(R).mask(SetKind.JSHARP)
    for s in np.flatnonzero(cache_of(R).comm2_mask(a)):
        s = int(s)
        q = R.sub(a, s)
        if (jsharp[q] and R.mul(s, q) == R.zero == R.mul(q, s)
                and cl.strongly_regular(R, s) is not None):
            return s, q
    return None


def check_t41(ctx, a):
    R = ctx.ring
    pp = cl.pseudopolar(R, a)
    dec = _pp_decomposition_search(R, a) if pp is None else (pp.s, pp.q)
    if pp is None or dec is None:
        return pp is None and dec is None, {"pseudopolar": pp is not None}
    s, q = dec
    # converse: p = 1 - sy with y in comm2(s), s = s^2 y
    y = int(cl.sr_witnesses(R, s, "comm2")[0])
    p = R.sub(R.unity, R.mul(s, y))
    n = R.nilpotency_index(q)
    ok = (R.mul(p, p) == p and bool(ctx.cache.comm2_mask(a)[p])
          and bool(ctx.mask(SetKind.UNITS)[R.add(a, p)]))
    jmask = ctx.mask(SetKind.J)
    ok &= any(jmask[R.mul(R.power(a, k), p)] for k in range(1, R.order + 1))
    return bool(ok) and p == pp.p, {"s": s, "q": q, "p": p, "k": pp.k, "q_nil_index": n}


# per-ring checks


def check_p218(ctx, _):
    R = ctx.ring
    sr = cl.everywhere(R, "SR")
    qp = _qp_everywhere(R)
    qn_zero = ctx.mask(SetKind.QN).sum() == 1
    return sr == (qp and qn_zero), {"all_SR": sr, "all_QP": qp, "QN_zero": bool(qn_zero)}


def check_p221(ctx, _):
    R = ctx.ring
    spr = all(cl.spr_witness(R, a) is not None for a in R.elements())
    qp = _qp_everywhere(R)
    qn, nil = ctx.mask(SetKind.QN), ctx.mask(SetKind.NIL)
    qn_in_nil = bool((~qn | nil).all())
    ok = spr == (qp and qn_in_nil)
    # finite rings are strongly pi-regular, so QN = Nil must come out
    ok &= bool(np.array_equal(qn, nil))
    return ok, {"all_SPR": spr, "all_QP": qp, "QN_in_Nil": qn_in_nil,
                "QN_eq_Nil": bool(np.array_equal(qn, nil))}


def check_t223(ctx, _):
    R = ctx.ring
    qp = _qp_everywhere(R)
    qnil, j = ctx.mask(SetKind.QNIL), ctx.mask(SetKind.J)
    qnil_in_j = bool((~qnil | j).all())
    semi = cl.everywhere(R, "SEMIREG")
    abelian = is_abelian(R)
    ok = not (qp and qnil_in_j) or semi
    if abelian:
        ok &= not semi or (qp and qnil_in_j)
    return ok, {"all_QP": qp, "Qnil_in_J": qnil_in_j, "semiregular": semi,
                "abelian": abelian}


def check_c42(ctx, _):
    R = ctx.ring
    spr = all(cl.spr_witness(R, a) is not None for a in R.elements())
    pp = cl.everywhere(R, "PP")
    j, nil = ctx.mask(SetKind.J), ctx.mask(SetKind.NIL)
    j_nil = bool((~j | nil).all())
    return spr == (pp and j_nil), {"all_SPR": spr, "all_PP": pp, "J_nil": j_nil}


def check_t43(ctx, _):
    R = ctx.ring
    pp = cl.everywhere(R, "PP")
    jsharp_eq_j = bool(np.array_equal(ctx.mask(SetKind.JSHARP), ctx.mask(SetKind.J)))
    semi = cl.everywhere(R, "SEMIREG")
    abelian = is_abelian(R)
    ok = not (pp and jsharp_eq_j) or semi
    if abelian:
        ok &= not semi or (pp and jsharp_eq_j)
    return ok, {"all_PP": pp, "Jsharp_eq_J": jsharp_eq_j, "semiregular": semi,
                "abelian": abelian}


def check_t44(ctx, _):
    R = ctx.ring
    pp = cl.everywhere(R, "PP")
    sprc = cl.everywhere(R, "SPRC")
    qp = _qp_everywhere(R)
    return pp == (sprc and qp), {"all_PP": pp, "all_SPRC": sprc, "all_QP": qp}


# per-idempotent checks


def _corner_of(ctx, e):
    return ctx.cache.memo(("corner", e), lambda: C.corner(ctx.ring, e))


def check_l34(ctx, e):
    K = _corner_of(ctx, e)
    amb = np.array(K.ambient_indices)
    inside = set(amb[cache_of(K).mask(SetKind.QN)].tolist())
    outside = set(amb[ctx.mask(SetKind.QN)[amb]].tolist())
    return inside == outside, {"corner_order": K.order, "QN_corner": sorted(inside),
                               "carrier_meet_QN": sorted(outside)}


def check_t35(ctx, e):
    R = ctx.ring
    K = _corner_of(ctx, e)
    if not _qp_everywhere(R):
        return True, {"vacuous": True}
    amb = list(K.ambient_indices)
    pos = {x: i for i, x in enumerate(amb)}
    for i, a in enumerate(amb):
        cert = cl.quasipolar(K, i)
        if cert is None:
            return False, {"element": a}
        # epe, built from the ambient certificate, is the corner's idempotent
        p = cl.quasipolar(R, a).p
        epe = R.mul(R.mul(e, p), e)
        if pos.get(epe) != cert.p:
            return False, {"element": a, "epe": epe, "corner_p": amb[cert.p]}
    return True, {"corner_order": K.order}


def check_c36(ctx, e):
    R = ctx.ring
    if not all(cl.unital_quasipolar(R, a) is not None for a in R.elements()):
        return True, {"vacuous": True}
    K = _corner_of(ctx, e)
    ok = all(cl.unital_quasipolar(K, a) is not None for a in K.elements())
    return ok, {"corner_order": K.order}


def check_c45(ctx, e):
    R = ctx.ring
    if not cl.everywhere(R, "PP"):
        return True, {"vacuous": True}
    K = _corner_of(ctx, e)
    return cl.everywhere(K, "PP"), {"corner_order": K.order}


# cross-ring checks


def _dorroh_unitization(ctx):
    def build():
        m = C.additive_exponent(ctx.ring)
        S = C.zmod(m)
        return S, C.dorroh(S, ctx.ring)
    return ctx.cache.memo(("dorroh-unitization",), build)


def check_p31(ctx, a):
    I = ctx.ring
    S, E = _dorroh_unitization(ctx)
    emb = C.dorroh_embedding(S, I)
    inner = cl.quasipolar(I, a)
    outer = cl.quasipolar(E, int(emb[a]))
    pay = {"m": S.order, "in_I": inner is not None, "in_E": outer is not None}
    if inner is None or outer is None:
        return inner is None and outer is None, pay
    ok = outer.p == emb[inner.p] and outer.b == emb[inner.b]
    pay.update(p=inner.p, b=inner.b)
    return bool(ok), pay


def _first_generators(ctx):
    """One generator per distinct principal ideal, the smallest index first."""
    seen, out = set(), []
    for a in ctx.ring.elements():
        key = ctx.cache.closure_mask(a).tobytes()
        if key not in seen:
            seen.add(key)
            out.append(a)
    return out


def check_t32(ctx, a):
    R = ctx.ring
    if not _qp_everywhere(R):
        return True, {"vacuous": True}
    A = C.principal_ideal(R, a)
    return _qp_everywhere(A), {"ideal_order": A.order, "unity": A.has_unity}


def _e33_applies(ctx):
    if not isinstance(ctx.expr, PairRing):
        return "not-a-pair-ring"
    base = evaluate(ctx.expr.sub)
    if not base.has_unity:
        return "base-not-unital"
    c = cache_of(base)
    if not np.array_equal(~c.mask(SetKind.UNITS), c.mask(SetKind.J)):
        return "base-not-local"
    return None


def check_e33(ctx, x):
    I = ctx.ring
    R = evaluate(ctx.expr.sub)
    n = R.order
    a, b = divmod(x, n)
    jI = ctx.mask(SetKind.J)
    cert = cl.quasipolar(I, x)
    if cert is None:
        return False, {"quasipolar": False}
    if cache_of(R).mask(SetKind.J)[a]:
        return bool(jI[x]) and cert.p == I.zero, {"in_J": bool(jI[x]), "p": cert.p}
    # a is a unit of the local ring: p = (1, a^-1 b).  a + p lands in J(I)
    # when the residue field is Z2 (a in 1 + J); in general only in Q(I).
    a_inv = cl._inverse(R, a)
    p = R.unity * n + R.mul(a_inv, b)
    residue_two = 2 * int(cache_of(R).mask(SetKind.J).sum()) == R.order
    target = jI if residue_two else ctx.mask(SetKind.Q)
    ok = cert.p == p and bool(target[I.add(x, p)]) and I.sub(x, I.mul(x, p)) == I.zero
    return ok, {"p": cert.p, "expected_p": p, "sum_in": "J" if residue_two else "Q"}


REGISTRY: dict[str, TheoremCheck] = {}


def _register(*checks: TheoremCheck) -> None:
    for c in checks:
        REGISTRY[c.id] = c


_register(
    TheoremCheck("L2.1", PER_ELEMENT, True, check_l21,
                 "unital and general quasipolarity agree with p_general = 1 - p_unital"),
    TheoremCheck("L2.5", PER_ELEMENT, False, check_l25,
                 "the quasi-inverse of a commutes with everything a commutes with"),
    TheoremCheck("L2.6", PER_ELEMENT, False, check_l26,
                 "left and right circle inverses coincide"),
    TheoremCheck("L2.7", PER_ELEMENT, False, check_l27,
                 "a in QN implies a, -a in Q and -a in QN"),
    TheoremCheck("C2.9", PER_ELEMENT, False, check_c29,
                 "a quasipolar implies -a quasipolar with negated inverse"),
    TheoremCheck("T2.8", PER_ELEMENT, False, check_t28,
                 "quasipolar iff generalized Drazin invertible; b = rp - p is unique"),
    TheoremCheck("T2.10", PER_ELEMENT, False, check_t210,
                 "five characterizations of strong pi-regularity; unique p and b"),
    TheoremCheck("C2.12", PER_ELEMENT, False, check_c212,
                 "strongly pi-regular implies strongly clean"),
    TheoremCheck("L2.13", PER_ELEMENT, False, check_l213,
                 "a = aba with b in comm(a) iff a = a^2 b with b in comm2(a)"),
    TheoremCheck("T2.14", PER_ELEMENT, False, check_t214,
                 "strongly pi-regular iff a = s + n, s strongly regular, n nilpotent, sn = ns = 0"),
    TheoremCheck("C2.15", PER_ELEMENT, False, check_c215,
                 "strongly pi-regular implies a^k strongly regular"),
    TheoremCheck("T2.16", PER_ELEMENT, False, check_t216,
                 "quasipolar iff a = s + q, s strongly regular in comm2(a), q in QN"),
    TheoremCheck("P2.18", PER_RING, False, check_p218,
                 "strongly regular iff quasipolar and QN = 0"),
    TheoremCheck("P2.21", PER_RING, False, check_p221,
                 "strongly pi-regular iff quasipolar and QN in Nil"),
    TheoremCheck("T2.23", PER_RING, True, check_t223,
                 "quasipolar and Qnil in J implies semiregular; converse when abelian"),
    TheoremCheck("P3.1", CROSS_RING, False, check_p31,
                 "a quasipolar in I iff (0, a) quasipolar in E(Z_m; I)",
                 domain=lambda ctx: list(ctx.ring.elements())),
    TheoremCheck("T3.2", CROSS_RING, False, check_t32,
                 "ideals of a quasipolar general ring are quasipolar",
                 domain=_first_generators),
    TheoremCheck("E3.3", CROSS_RING, False, check_e33,
                 "pair ring over a local ring: explicit quasipolar idempotents",
                 domain=lambda ctx: list(ctx.ring.elements()), applies=_e33_applies),
    TheoremCheck("L3.4", PER_IDEMPOTENT, False, check_l34,
                 "QN(eIe) = eIe meet QN(I)"),
    TheoremCheck("T3.5", PER_IDEMPOTENT, False, check_t35,
                 "eIe is quasipolar, with idempotent epe"),
    TheoremCheck("C3.6", PER_IDEMPOTENT, True, check_c36,
                 "eRe of a quasipolar ring is quasipolar"),
    TheoremCheck("T4.1", PER_ELEMENT, True, check_t41,
                 "pseudopolar iff a = s + q, s strongly regular in comm2(a), q in J#"),
    TheoremCheck("C4.2", PER_RING, True, check_c42,
                 "strongly pi-regular iff pseudopolar and J nil"),
    TheoremCheck("T4.3", PER_RING, True, check_t43,
                 "pseudopolar and J# = J implies semiregular; converse when abelian"),
    TheoremCheck("T4.4", PER_RING, True, check_t44,
                 "pseudopolar iff strongly pi-rad clean and quasipolar"),
    TheoremCheck("C4.5", PER_IDEMPOTENT, True, check_c45,
                 "eRe of a pseudopolar ring is pseudopolar"),
)


def default_corpus() -> list[RingExpr]:
    z2 = Zmod(2)
    e11 = C.matrix_index(C.zmod(2), 2, [1, 0, 0, 0])
    return ([Zmod(n) for n in (2, 3, 4, 5, 6, 7, 8, 9, 12)]
            + [Mat(2, z2), Mat(2, Zmod(3)), Product((Zmod(4), z2)), Ideal(Zmod(8), 2),
               PairRing(Zmod(4)), Dorroh(z2, ZeroMul(2)), Corner(Mat(2, z2), e11),
               ZeroMul(4)])


def resolve_ids(theorem_ids: str | Sequence[str]) -> list[str]:
    if theorem_ids == "all":
        return list(REGISTRY)
    if isinstance(theorem_ids, str):
        theorem_ids = [t for t in theorem_ids.replace(",", " ").split() if t]
    unknown = [t for t in theorem_ids if t not in REGISTRY]
    if unknown:
        raise KeyError(f"unknown theorem ids: {', '.join(unknown)}")
    return list(theorem_ids)


def _run_one(check: TheoremCheck, ctx: Context, items=None) -> list[CheckRecord]:
    name = ctx.expr.name
    if check.requires_unity and not ctx.ring.has_unity:
        return [_record(check.id, name, None, "skip", {"reason": "no-unity"})]
    if check.applies is not None:
        reason = check.applies(ctx)
        if reason is not None:
            return [_record(check.id, name, None, "skip", {"reason": reason})]
    out = []
    for x in (check.items(ctx) if items is None else items):
        try:
            ok, payload = check.checker(ctx, x)
        except (RingError, IndexError, ValueError) as exc:
            ok, payload = False, {"error": f"{type(exc).__name__}:{exc}"}
        out.append(_record(check.id, name, x, "pass" if ok else "fail", payload))
    return out


def _run_ring(expr: RingExpr, ids: list[str]) -> tuple[list[CheckRecord], dict, bool]:
    timings = {}
    try:
        ring = evaluate(expr)
    except FeasibilityExceeded as exc:
        recs = [_record(t, expr.name, None, "skip",
                        {"reason": "feasibility", "order": exc.order}) for t in ids]
        return recs, timings, True
    ctx = Context(expr, ring)
    records = []
    for t in ids:
        start = time.perf_counter()
        records += _run_one(REGISTRY[t], ctx)
        timings[(t, expr.name)] = time.perf_counter() - start
    return records, timings, False


def run_suite(corpus: Sequence[RingExpr] | None = None,
              theorem_ids: str | Sequence[str] = "all", jobs: int = 1) -> TheoremReport:
    """Evaluate every applicable (theorem, ring, element) triple."""
    corpus = default_corpus() if corpus is None else list(corpus)
    ids = resolve_ids(theorem_ids)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(lambda e: _run_ring(e, ids), corpus))
    else:
        results = [_run_ring(e, ids) for e in corpus]
    report = TheoremReport()
    for expr, (recs, timings, infeasible) in zip(corpus, results):
        report.records += recs
        report.timings.update(timings)
        if infeasible:
            report.infeasible.append(expr.name)
    report.records.sort(key=lambda r: r.sort_key)
    return report


def run_check(theorem_id: str, expr: RingExpr | str,
              element: int | None = None) -> list[CheckRecord]:
    """Single-check entry point; ``element=None`` runs the whole domain."""
    if isinstance(expr, str):
        expr = parse_ring_expr(expr)
    check = REGISTRY[theorem_id]
    ctx = Context(expr, evaluate(expr))
    items = None if element is None else [element]
    return _run_one(check, ctx, items)


def replay(line: str) -> list[CheckRecord]:
    """Re-run the check named by a ``CHECK`` report line."""
    parts = line.split()
    if len(parts) < 5 or parts[0] != "CHECK":
        raise ValueError(f"not a CHECK line: {line!r}")
    element = None if parts[3] == "*" else int(parts[3])
    return run_check(parts[1], parts[2], element)


def check_prop31(I: RingExpr | FiniteGeneralRing) -> list[CheckRecord]:
    """Compare quasipolarity of each a in I with that of (0, a) in E(Z_m; I)."""
    if isinstance(I, FiniteGeneralRing):
        expr, ring = None, I
    else:
        expr, ring = I, evaluate(I)
    m = C.additive_exponent(ring)
    if any(ring.int_multiple(m, v) != ring.zero for v in ring.elements()):
        raise CharacteristicMismatch(f"{m}·I != 0")
    ctx = Context(expr if expr is not None else _Named(ring.name), ring)
    return _run_one(REGISTRY["P3.1"], ctx)


@dataclass(frozen=True)
class _Named(RingExpr):
    label: str

    @property
    def name(self) -> str:
        return self.label
