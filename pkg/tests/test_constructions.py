from __future__ import annotations

import numpy as np
import pytest

from quasipolar import (BimoduleAction, BimoduleViolation, FeasibilityExceeded, NotIdempotent,
                        SemanticError, corner, direct_product, dorroh, evaluate, is_isomorphic,
                        matrix_index, matrix_ring, pair_ring, parse_ring_expr, principal_ideal,
                        quotient, subset, zero_mul, zmod)
from quasipolar.constructions import (dorroh_embedding, dorroh_index, find_isomorphism,
                                      integer_action, matrix_entries)
from quasipolar.errors import CharacteristicMismatch
from quasipolar.ring import validate_tables


def _valid(R):
    validate_tables(R.add_table, R.mul_table)


def test_zmod_and_zero_mul():
    assert zmod(1).order == 1 and zmod(1).unity == 0
    Z = zero_mul(2)
    assert Z.mul(1, 1) == 0 and Z.unity is None
    with pytest.raises(SemanticError):
        zmod(0)


def test_matrix_ring():
    Z2 = zmod(2)
    M = matrix_ring(Z2, 2)
    _valid(M)
    assert M.order == 16 and len(subset(M, "Units")) == 6
    assert M.unity == matrix_index(Z2, 2, [1, 0, 0, 1])
    assert is_isomorphic(matrix_ring(Z2, 1), Z2)
    assert matrix_entries(Z2, 2, 3) == [0, 0, 1, 1]
    with pytest.raises(FeasibilityExceeded):
        matrix_ring(zmod(3), 3)
    with pytest.raises(FeasibilityExceeded):
        matrix_ring(zmod(2), 2, cap=8)


def test_matrix_multiplication_is_matrix_multiplication():
    Z3 = zmod(3)
    M = matrix_ring(Z3, 2)
    rng = np.random.default_rng(0)
    for _ in range(50):
        x, y = rng.integers(0, 81, size=2)
        A = np.array(matrix_entries(Z3, 2, int(x))).reshape(2, 2)
        B = np.array(matrix_entries(Z3, 2, int(y))).reshape(2, 2)
        assert matrix_entries(Z3, 2, M.mul(int(x), int(y))) == ((A @ B) % 3).ravel().tolist()


def test_dorroh_zero_mul():
    S, I = zmod(2), zero_mul(2)
    E = dorroh(S, I)
    _valid(E)
    assert E.order == 4
    assert E.unity == dorroh_index(S, I, 1, 0)
    assert subset(E, "J") == {dorroh_index(S, I, 0, 0), dorroh_index(S, I, 0, 1)}
    # Z2[x]/(x^2): additive group Z2 x Z2 with a nonzero square-zero element
    assert not is_isomorphic(E, zmod(4))
    assert not is_isomorphic(E, direct_product(zmod(2), zmod(2)))


@pytest.mark.parametrize("text", ["Ideal (Zmod 8) a=2", "ZeroMul 3", "PairRing (Zmod 2)",
                                  "Mat 2 (Zmod 2)"])
def test_dorroh_general(text):
    from quasipolar.constructions import additive_exponent
    I = evaluate(parse_ring_expr(text))
    S = zmod(additive_exponent(I))
    E = dorroh(S, I)
    _valid(E)
    assert E.order == S.order * I.order and E.has_unity
    emb = dorroh_embedding(S, I)
    for x in I.elements():
        for y in I.elements():
            assert E.mul(int(emb[x]), int(emb[y])) == emb[I.mul(x, y)]
    # E / ({0} x I) recovers S
    gen = _ideal_generator(E, emb)
    assert is_isomorphic(quotient(E, gen), S)


def _ideal_generator(E, emb):
    # {0} x I is generated, as an ideal, by its elements; pick any one whose
    # closure is the whole embedded copy
    from quasipolar.subsets import ideal_closure
    target = set(int(v) for v in emb)
    for v in emb:
        if ideal_closure(E, int(v)) == target:
            return int(v)
    pytest.skip("{0} x I is not principal here")


def test_dorroh_characteristic_mismatch():
    with pytest.raises(CharacteristicMismatch):
        dorroh(zmod(2), zmod(4))


def test_dorroh_custom_action_validated():
    S, I = zmod(2), zero_mul(2)
    good = integer_action(S, I)
    dorroh(S, I, good)
    bad = BimoduleAction(np.array([[0, 0], [0, 0]]), good.right)
    with pytest.raises(BimoduleViolation):
        dorroh(S, I, bad)


def test_corner():
    Z2 = zmod(2)
    M = matrix_ring(Z2, 2)
    e11 = matrix_index(Z2, 2, [1, 0, 0, 0])
    K = corner(M, e11)
    assert K.order == 2 and is_isomorphic(K, Z2)
    assert corner(M, M.unity).tables_equal(M)
    assert corner(M, M.zero).order == 1
    with pytest.raises(NotIdempotent):
        corner(M, 2)


def test_matrix_index_three_is_idempotent():
    # the row-major labelling makes [[0,0],[1,1]] index 3, which is idempotent
    M = evaluate(parse_ring_expr("Mat 2 (Zmod 2)"))
    assert M.mul(3, 3) == 3
    assert evaluate(parse_ring_expr("Corner (Mat 2 (Zmod 2)) e=3")).order == 2


def test_principal_ideal():
    Z8 = zmod(8)
    A = principal_ideal(Z8, 2)
    assert A.ambient_indices == (0, 2, 4, 6) and A.unity is None
    assert principal_ideal(Z8, 0).order == 1
    assert principal_ideal(Z8, 1).tables_equal(Z8)


def test_pair_ring():
    P = pair_ring(zmod(4))
    _valid(P)
    assert P.order == 16 and P.unity is None
    assert subset(P, "Idem") == {0, 4, 5, 6, 7}
    # isomorphic to the row ring [[R, R], [0, 0]] inside M2(R)
    Z4 = zmod(4)
    M = matrix_ring(Z4, 2)
    rows = [matrix_index(Z4, 2, [a, b, 0, 0]) for a in range(4) for b in range(4)]
    for x in P.elements():
        for y in P.elements():
            assert rows[P.mul(x, y)] == M.mul(rows[x], rows[y])
            assert rows[P.add(x, y)] == M.add(rows[x], rows[y])


def test_products_and_quotients():
    assert is_isomorphic(direct_product(zmod(2), zmod(3)), zmod(6))
    assert not is_isomorphic(zmod(4), direct_product(zmod(2), zmod(2)))
    assert is_isomorphic(quotient(zmod(8), 2), zmod(2))
    assert is_isomorphic(quotient(zmod(12), 4), zmod(4))
    P = direct_product(zmod(4), zmod(2))
    _valid(P)
    assert P.unity == 1 * 2 + 1


def test_isomorphism_is_a_map():
    R = direct_product(zmod(3), zmod(2))
    S = zmod(6)
    h = find_isomorphism(R, S)
    assert sorted(h) == list(range(6))
    for x in R.elements():
        for y in R.elements():
            assert h[R.add(x, y)] == S.add(h[x], h[y])
            assert h[R.mul(x, y)] == S.mul(h[x], h[y])
