from __future__ import annotations

import numpy as np
import pytest

from quasipolar import (Axiom, AxiomViolation, RingMismatch, build_ring, circle, evaluate,
                        parse_ring_expr, quasi_inverse, zmod)
from quasipolar.ring import arith, nilpotency_index

import oracle


def _z(n):
    a = np.arange(n)
    return (a[:, None] + a) % n, (a[:, None] * a) % n


def test_zmod4_unity_detected():
    R = build_ring(*_z(4))
    assert R.order == 4 and R.zero == 0 and R.unity == 1


def test_2z8_has_no_unity():
    els = [0, 2, 4, 6]
    pos = {v: i for i, v in enumerate(els)}
    add = [[pos[(x + y) % 8] for y in els] for x in els]
    mul = [[pos[(x * y) % 8] for y in els] for x in els]
    R = build_ring(add, mul)
    assert R.unity is None and not R.has_unity


def test_zero_need_not_be_index_zero():
    # Z3 relabelled so that the integer v sits at index (v + 2) % 3
    lab = {v: (v + 2) % 3 for v in range(3)}
    add = np.zeros((3, 3), int)
    mul = np.zeros((3, 3), int)
    for x in range(3):
        for y in range(3):
            add[lab[x], lab[y]] = lab[(x + y) % 3]
            mul[lab[x], lab[y]] = lab[(x * y) % 3]
    R = build_ring(add, mul)
    assert R.zero == 2 and R.unity == 0
    assert R.neg(R.zero) == R.zero
    assert R.quasi_inverse(R.zero) == R.zero


def test_zero_hint_checked():
    add, mul = _z(3)
    assert build_ring(add, mul, zero_hint=0).zero == 0
    with pytest.raises(AxiomViolation) as exc:
        build_ring(add, mul, zero_hint=1)
    assert exc.value.kind is Axiom.ADD_ZERO


def test_mul_assoc_violation_reports_triple():
    add, _ = _z(3)
    a = np.arange(3)
    mul = (a[:, None] - a) % 3
    with pytest.raises(AxiomViolation) as exc:
        build_ring(add, mul)
    assert exc.value.kind is Axiom.MUL_ASSOC
    x, y, z = exc.value.witness
    assert mul[mul[x, y], z] != mul[x, mul[y, z]]


def test_non_abelian_add_rejected():
    # S3 as an additive table is associative with identity and inverses
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    idx = {p: i for i, p in enumerate(perms)}
    add = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    mul = np.zeros((6, 6), int)
    with pytest.raises(AxiomViolation) as exc:
        build_ring(add, mul)
    assert exc.value.kind is Axiom.ADD_COMM


@pytest.mark.parametrize("bad", [
    np.zeros((2, 3), int),
    np.full((2, 2), 5),
    np.zeros((0, 0), int),
])
def test_malformed_tables(bad):
    with pytest.raises(ValueError):
        build_ring(bad, bad)


def test_arith_examples():
    Z4 = zmod(4)
    assert arith("add", Z4[2], Z4[3]).index == 1
    assert arith("neg", Z4[0]).index == 0
    assert arith("sub", Z4[1], Z4[3]).index == 2
    assert arith("int_multiple", Z4[3], 3).index == 1
    assert arith("int_multiple", Z4[1], -1).index == 3
    I = evaluate(parse_ring_expr("Ideal (Zmod 8) a=2"))
    six = I.ambient_indices.index(6)
    assert arith("power", I[six], 3).index == I.zero
    assert I.ambient_indices[I.power(six, 2)] == 4
    with pytest.raises(ValueError):
        arith("bogus", Z4[0], Z4[1])


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        zmod(4)[1] + zmod(3)[1]
    with pytest.raises(RingMismatch):
        circle(zmod(4)[1], zmod(5)[1])


def test_power_needs_positive_exponent():
    with pytest.raises(ValueError):
        zmod(4).power(1, 0)


def test_circle_examples():
    Z4 = zmod(4)
    assert circle(Z4[2], Z4[2]).index == 0
    assert circle(Z4[1], Z4[1]).index == 1
    for x in Z4.elements():
        assert Z4.circle(0, x) == x == Z4.circle(x, 0)
    z4 = oracle.zmod(4)
    for x in range(4):
        for y in range(4):
            assert Z4.circle(x, y) == oracle.circle(z4, x, y)


def test_quasi_inverse_examples():
    Z4, Z6 = zmod(4), zmod(6)
    assert quasi_inverse(Z4[0]).index == 0
    assert quasi_inverse(Z4[2]).index == 2
    assert quasi_inverse(Z4[1]) is None
    assert Z6.quasi_inverse(2) == 2


def test_nilpotency_index_examples():
    Z4 = zmod(4)
    I = evaluate(parse_ring_expr("Ideal (Zmod 8) a=2"))
    assert nilpotency_index(Z4[0]) == 1
    assert nilpotency_index(Z4[2]) == 2
    assert nilpotency_index(Z4[1]) is None
    assert I.nilpotency_index(I.ambient_indices.index(6)) == 3


def test_element_operators():
    Z6 = zmod(6)
    a, b = Z6[4], Z6[5]
    assert (a + b).index == 3 and (a - b).index == 5 and (a * b).index == 2
    assert (-a).index == 2 and (a ** 2).index == 4 and (2 * b).index == 4
    assert a.circle(b).index == (4 + 5 - 20) % 6


def test_tables_are_read_only():
    R = zmod(3)
    with pytest.raises(ValueError):
        R.add_table[0, 0] = 1
