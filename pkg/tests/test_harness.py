from __future__ import annotations

import pytest

from quasipolar import (REGISTRY, check_prop31, default_corpus, evaluate, replay, run_check,
                        run_suite)
from quasipolar import harness as H
from quasipolar.expr import Ideal, Mat, PairRing, ZeroMul, Zmod, parse_ring_expr

REQUIRED = ("L2.1 L2.5 L2.6 L2.7 T2.8 T2.10 T2.14 C2.15 T2.16 P2.18 P2.21 T2.23 P3.1 T3.2 "
            "L3.4 T3.5 T4.1 C4.2 T4.3 T4.4 C4.5").split()


def test_registry_covers_required_ids():
    assert set(REQUIRED) <= set(REGISTRY)
    scopes = {c.scope for c in REGISTRY.values()}
    assert scopes <= {H.PER_ELEMENT, H.PER_IDEMPOTENT, H.PER_RING, H.CROSS_RING}


def test_default_corpus_shape():
    corpus = default_corpus()
    orders = [evaluate(e).order for e in corpus]
    assert Zmod(4) in corpus and max(orders) == 81 and len(corpus) == 17
    assert sum(orders) == sum(len(evaluate(e)) for e in corpus)


def test_gdrazin_check_on_zmod4():
    rep = run_suite([Zmod(4)], "T2.8")
    assert rep.checked == 4 and rep.failed == 0
    b = {r.element: dict(r.payload)["b"] for r in rep.records}
    assert b == {0: "0", 1: "1", 2: "0", 3: "3"}


def test_quasinilpotent_check_whole_corpus():
    rep = run_suite(None, "L2.7")
    assert rep.failed == 0 and rep.checked == sum(evaluate(e).order for e in default_corpus())


def test_corner_and_ideal_checks():
    rep = run_suite([Mat(2, Zmod(2))], "L3.4")
    assert rep.failed == 0 and rep.checked == 8
    rep = run_suite([PairRing(Zmod(4))], ["T3.2"])
    assert rep.failed == 0 and rep.checked > 1


def test_unity_checks_skip_on_general_rings():
    rep = run_suite([ZeroMul(4)], ["L2.1", "T4.4", "L2.5"])
    skipped = [r for r in rep.records if r.status == "skip"]
    assert {r.theorem for r in skipped} == {"L2.1", "T4.4"}
    assert all(dict(r.payload)["reason"] == "no-unity" for r in skipped)
    assert rep.skipped == 2 and rep.checked == 4


def test_feasibility_is_recorded_not_fatal():
    rep = run_suite([Mat(3, Zmod(3)), Zmod(2)], ["L2.6"])
    assert rep.infeasible == ["Mat3(Zmod3)"]
    assert rep.failed == 0 and rep.checked == 2 and rep.skipped == 1
    assert "reason=feasibility" in rep.text()


def test_report_format_and_determinism():
    a = run_suite([Zmod(6), Ideal(Zmod(8), 2)], "all").text()
    b = run_suite([Ideal(Zmod(8), 2), Zmod(6)], "all", jobs=2).text()
    assert a == b
    lines = a.splitlines()
    assert lines[-1].startswith("SUMMARY checked=")
    for line in lines[:-1]:
        parts = line.split()
        assert parts[0] == "CHECK" and parts[1] in REGISTRY
        assert parts[4] in ("pass", "fail", "skip")
        assert parts[3] == "*" or parts[3].isdigit()
        assert all("=" in p for p in parts[5:])


def test_replay_round_trip():
    rep = run_suite([Zmod(12)], ["T2.10"])
    line = rep.records[5].line()
    (again,) = replay(line)
    assert again.line() == line
    assert run_check("P2.18", "Zmod 6")[0].status == "pass"


def test_replay_reproduces_an_injected_failure(monkeypatch):
    def broken(ctx, a):
        return a != 2, {"a": a}

    monkeypatch.setitem(REGISTRY, "X0", H.TheoremCheck("X0", H.PER_ELEMENT, False, broken, "x"))
    rep = run_suite([Zmod(4)], ["X0"])
    (fail,) = rep.failures()
    assert fail.line() == "CHECK X0 Zmod4 2 fail a=2"
    assert [r.line() for r in replay(fail.line())] == [fail.line()]


def test_checker_errors_become_failures(monkeypatch):
    from quasipolar.errors import AmbiguousInverse

    def boom(ctx, a):
        raise AmbiguousInverse("b", a, 1, 2)

    monkeypatch.setitem(REGISTRY, "X1", H.TheoremCheck("X1", H.PER_RING, False, boom, "x"))
    rep = run_suite([Zmod(2)], ["X1"])
    assert rep.failed == 1 and "error=AmbiguousInverse" in rep.text()


def test_unknown_theorem_id():
    with pytest.raises(KeyError):
        run_suite([Zmod(2)], ["T9.9"])


def test_quasi_inverse_formula_is_only_logged():
    rep = run_suite([Zmod(12), Mat(2, Zmod(2))], ["T2.10"])
    assert rep.failed == 0
    assert all(dict(r.payload)["r_formula"] in ("agree", "disagree") for r in rep.records)


@pytest.mark.parametrize("text", ["Ideal (Zmod 8) a=2", "ZeroMul 2", "ZeroMul 1"])
def test_check_prop31(text):
    recs = check_prop31(parse_ring_expr(text))
    assert recs and all(r.status == "pass" for r in recs)
    assert len(recs) == evaluate(parse_ring_expr(text)).order


def test_check_prop31_zero_mul_element():
    (_, one) = check_prop31(ZeroMul(2))
    pay = dict(one.payload)
    assert pay["in_I"] == pay["in_E"] == "true" and pay["m"] == "2"


def test_pair_ring_check_on_local_bases():
    rep = run_suite([PairRing(Zmod(4)), PairRing(Zmod(3)), PairRing(Zmod(6))], ["E3.3"])
    assert rep.failed == 0
    assert rep.checked == 16 + 9
    (skip,) = [r for r in rep.records if r.status == "skip"]
    assert skip.ring == "PairRing(Zmod6)"


def test_pair_ring_sum_is_quasiregular_not_radical_over_z3():
    from quasipolar import subset
    I = evaluate(PairRing(Zmod(3)))
    recs = run_check("E3.3", PairRing(Zmod(3)), 3)
    assert recs[0].status == "pass" and dict(recs[0].payload)["sum_in"] == "Q"
    # (1, 0) + (1, 0) = (2, 0) is quasiregular but not in J(I)
    assert 6 in subset(I, "Q") and 6 not in subset(I, "J")
