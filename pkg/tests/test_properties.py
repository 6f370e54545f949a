from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from quasipolar import (FiniteGeneralRing, SetKind, build_ring, comm2, dumps, evaluate,
                        gdrazin_inverse, loads, quasipolar, subset)
from quasipolar.expr import Dorroh, Mat, PairRing, Product, ZeroMul, Zmod

small = st.one_of(
    st.integers(1, 8).map(Zmod),
    st.integers(1, 4).map(ZeroMul),
    st.integers(2, 3).map(lambda n: PairRing(Zmod(n))),
    st.just(Mat(2, Zmod(2))),
    st.just(Dorroh(Zmod(2), ZeroMul(2))),
    st.just(Dorroh(Zmod(3), ZeroMul(3))),
)
exprs = st.one_of(small, st.tuples(small, small).map(Product)).filter(
    lambda e: evaluate(e).order <= 36)

cfg = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def ring_and_elements(draw, k=3):
    R = evaluate(draw(exprs))
    xs = [draw(st.integers(0, R.order - 1)) for _ in range(k)]
    return R, xs


@cfg
@given(ring_and_elements())
def test_circle_monoid(data):
    R, (a, b, c) = data
    assert R.circle(R.circle(a, b), c) == R.circle(a, R.circle(b, c))
    assert R.circle(a, R.zero) == a == R.circle(R.zero, a)


@cfg
@given(ring_and_elements(k=1))
def test_one_sided_circle_inverses_agree(data):
    R, (a,) = data
    right = set(np.flatnonzero(R.circle_table[a] == R.zero).tolist())
    left = set(np.flatnonzero(R.circle_table[:, a] == R.zero).tolist())
    if right and left:
        assert right == left and len(right) == 1


@cfg
@given(ring_and_elements(k=1))
def test_gdrazin_defining_identities(data):
    R, (a,) = data
    b = gdrazin_inverse(R, a)
    assert b is not None  # finite rings are strongly pi-regular
    assert R.mul(a, R.mul(b, b)) == b
    assert b in comm2(R, a)
    assert R.sub(R.mul(R.mul(a, a), b), a) in subset(R, SetKind.QN)
    assert gdrazin_inverse(R, R.neg(a)) == R.neg(b)


def _relabel(R: FiniteGeneralRing, perm: np.ndarray) -> FiniteGeneralRing:
    # element x of R becomes perm[x]
    inv = np.argsort(perm)
    add = perm[R.add_table[np.ix_(inv, inv)]]
    mul = perm[R.mul_table[np.ix_(inv, inv)]]
    return build_ring(add, mul)


@cfg
@given(exprs, st.randoms(use_true_random=False))
def test_relabelling_commutes_with_everything(expr, rnd):
    R = evaluate(expr)
    perm = np.arange(R.order)
    rnd.shuffle(perm)
    S = _relabel(R, perm)
    assert S.zero == perm[R.zero]
    assert S.unity == (None if R.unity is None else perm[R.unity])
    kinds = [SetKind.Q, SetKind.QN, SetKind.J, SetKind.NIL, SetKind.IDEMPOTENTS]
    if R.has_unity:
        kinds += [SetKind.UNITS, SetKind.JSHARP]
    for kind in kinds:
        assert subset(S, kind) == {int(perm[x]) for x in subset(R, kind)}
    for a in R.elements():
        c, d = quasipolar(R, a), quasipolar(S, int(perm[a]))
        assert d.p == perm[c.p] and d.b == perm[c.b]


@cfg
@given(exprs)
def test_ringfile_round_trip(expr):
    R = evaluate(expr)
    text = dumps(R)
    back = loads(text)
    assert back.tables_equal(R) and dumps(back) == text
