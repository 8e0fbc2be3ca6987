import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle
from omegastar.chaindyn import FiniteSystem, unit_metric, validate_chain
from omegastar.seqbuild import (
    AbelianNormalForm, ActionRule, FactorialCycles, FreeReduction, GroupCross, IndexedSequence,
    Nat, NatCross, NoChainError, NotFoundError, RowsByZ, SchemeMismatch, SequenceError,
    build_group_like, build_r_like, build_s_like, build_t_like, dense_enumeration,
    extract_chain, extract_self_chain, group_rules, inverse_flows, parse_window,
    tail_dense_check, verify_p_like, verify_phi_like,
)

C3 = FiniteSystem(("a", "b", "c"), {"a": "b", "b": "c", "c": "a"}, unit_metric(3))
TWO = FiniteSystem(("a", "b"), {"a": "b", "b": "a"}, unit_metric(2))
FIXED = FiniteSystem(("p",), {"p": "p"}, unit_metric(1))


def bridged_five() -> FiniteSystem:
    # a 2-cycle and a 3-cycle, with b and c at distance 1/2
    states = tuple("abcde")
    metric = [[Fraction(0 if i == j else 1) for j in range(5)] for i in range(5)]
    metric[1][2] = metric[2][1] = Fraction(1, 2)
    return FiniteSystem(states, {"a": "b", "b": "a", "c": "d", "d": "e", "e": "c"}, metric)


def nat_sequence(points) -> IndexedSequence:
    return IndexedSequence(Nat(len(points)), {(n,): x for n, x in enumerate(points)})


def orbit(sys, start, length):
    out = [start]
    while len(out) < length:
        out.append(sys.map[out[-1]])
    return out


# --- schemes and rules ------------------------------------------------------

def test_scheme_orders_and_membership():
    assert Nat(3).indices() == [(0,), (1,), (2,)]
    assert NatCross(2, 2).indices() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert RowsByZ(1, 1).indices() == [(0, 0), (0, -1), (0, 1)]
    assert len(FactorialCycles(4).indices()) == 1 + 2 + 6 + 24
    assert not RowsByZ(2, 3).contains((0, 4))


def test_rules_follow_their_formulas():
    assert ActionRule("r").apply((3, 5), FactorialCycles(3)) == (3, 0)
    assert ActionRule("t").apply((1, -2), RowsByZ(2, 2)) == (1, -1)
    assert ActionRule("u").apply((4, 0), NatCross(5, 5)) == (4, 1)
    gc = GroupCross(("g", "G"), 2, 1, FreeReduction((("g", "G"),)))
    assert ActionRule("g", "G").apply((("g",), 0), gc) == ((), 0)


def test_rule_scheme_mismatch():
    seq = nat_sequence(["a", "b"])
    with pytest.raises(SchemeMismatch):
        verify_p_like(seq, ActionRule("t"), C3, 1)


def test_out_of_window_images_are_skipped():
    report = verify_p_like(nat_sequence(orbit(C3, "a", 5)), ActionRule("s"), C3, 1)
    assert report.ok and report.skipped == 1 and report.checked == 4


def test_normal_forms():
    free = FreeReduction((("a", "A"),))
    assert free(("a", "b", "B", "A", "a")) == ("a", "b", "B")
    free2 = FreeReduction((("a", "A"), ("b", "B")))
    assert free2(("a", "b", "B", "A", "a")) == ("a",)
    ab = AbelianNormalForm((("a", "A"), ("b", "B")))
    assert ab(("b", "a", "B", "a")) == ("a", "a")
    assert ab(("A", "b")) == ("A", "b")


def test_parse_window():
    assert parse_window("t", "rows=3,width=4") == RowsByZ(3, 4)
    assert parse_window("r", "max_n=5") == FactorialCycles(5)
    with pytest.raises(SequenceError, match="width"):
        parse_window("t", "rows=3")


def test_sequence_json_round_trip():
    gc = GroupCross(("a", "A", "b", "B"), 2, 2, AbelianNormalForm((("a", "A"), ("b", "B"))))
    flows = inverse_flows({"a": {"p": "p"}, "b": {"p": "p"}}, {"a": "A", "b": "B"})
    seq = build_group_like(flows, FIXED, ["p"], gc)
    again = IndexedSequence.from_dict(json.loads(json.dumps(seq.to_dict())))
    assert again == seq


def test_missing_entries_rejected():
    with pytest.raises(SequenceError, match="unassigned"):
        IndexedSequence(Nat(3), {(0,): "a", (1,): "b"})


# --- verifiers --------------------------------------------------------------

def test_trivial_verifications():
    const = nat_sequence(["p"] * 4)
    assert verify_p_like(const, ActionRule("s"), FIXED, Fraction(1, 100)).ok
    fixed_rows = IndexedSequence(FactorialCycles(3), {i: "p" for i in FactorialCycles(3).indices()})
    assert verify_p_like(fixed_rows, ActionRule("r"), FIXED, Fraction(1, 100)).ok
    exact = nat_sequence(orbit(C3, "b", 10))
    for eps in (Fraction(1, 10), 1, 5):
        assert verify_p_like(exact, ActionRule("s"), C3, eps).ok


def test_tail_bound_reading():
    seq = nat_sequence(["a", "a", "b", "c", "a", "b"])
    report = verify_p_like(seq, ActionRule("s"), C3, 1)
    assert [v.index for v in report.violations] == [(0,)]
    assert report.tail_ok_from == (1,)
    # the last Nat entry has no in-window step, so it is always clean
    assert verify_p_like(nat_sequence(["a", "b", "b"]), ActionRule("s"), C3, 1).tail_ok_from == (2,)
    # a wrapping cycle row can put the last violation on the final index
    rows = IndexedSequence(FactorialCycles(2), {(1, 0): "a", (2, 0): "a", (2, 1): "a"})
    report = verify_p_like(rows, ActionRule("r"), TWO, 1)
    assert report.violations[-1].index == (2, 1) and report.tail_ok_from is None


def test_single_rule_list_matches_verify_p_like():
    seq = nat_sequence(["a", "c", "b", "c"])
    one = verify_p_like(seq, ActionRule("s"), C3, 1)
    many = verify_phi_like(seq, [ActionRule("s")], C3, 1)
    assert one.to_dict() == many.to_dict()


def four_rotation():
    four = cycle(4, metric=True)
    gc = GroupCross(("g", "G"), 2, 4, FreeReduction((("g", "G"),)))
    flows = inverse_flows({"g": four.map}, {"g": "G"})
    return four, gc, flows


def test_group_translate_has_no_violations():
    four, gc, flows = four_rotation()
    seq = build_group_like(flows, four, list(four.states), gc)
    assert verify_phi_like(seq, group_rules(gc), four, Fraction(1, 100), flows).ok


def test_corrupted_entry_flags_exactly_the_affected_steps():
    four, gc, flows = four_rotation()
    seq = build_group_like(flows, four, list(four.states), gc)
    target = (("g",), 2)
    assignment = dict(seq.assignment)
    assignment[target] = four.map[assignment[target]]
    bad = IndexedSequence(gc, assignment)
    # steps out of the corrupted index, and steps landing on it
    expected = set()
    for idx in gc.indices():
        for rule in group_rules(gc):
            img = rule.apply(idx, gc)
            if gc.contains(img) and target in (idx, img):
                expected.add((idx, rule.name))
    report = verify_phi_like(bad, group_rules(gc), four, Fraction(1, 2), flows)
    assert {(v.index, v.rule) for v in report.violations} == expected


def test_tail_dense_check():
    seq = nat_sequence(dense_enumeration(C3))
    assert tail_dense_check(seq, C3, "singleton", 3)
    assert not tail_dense_check(nat_sequence(["a"] * 4), C3, "singleton", 0)
    with pytest.raises(SequenceError):
        tail_dense_check(seq, C3, "singleton", len(seq))


# --- group-like -------------------------------------------------------------

def test_trivial_group_gives_the_dense_row():
    gc = GroupCross((), 2, 3)
    seq = build_group_like({}, C3, ["c", "a", "b"], gc)
    assert seq.states() == ["c", "a", "b"]


def test_commuting_generators_share_rows():
    states = tuple(f"{i}.{j}" for i in range(2) for j in range(3))
    a = {f"{i}.{j}": f"{(i + 1) % 2}.{j}" for i in range(2) for j in range(3)}
    b = {f"{i}.{j}": f"{i}.{(j + 1) % 3}" for i in range(2) for j in range(3)}
    torus = FiniteSystem(states, a, unit_metric(6))
    nf = AbelianNormalForm((("a", "A"), ("b", "B")))
    gc = GroupCross(("a", "A", "b", "B"), 2, 6, nf)
    flows = inverse_flows({"a": a, "b": b}, {"a": "A", "b": "B"})
    seq = build_group_like(flows, torus, list(states), gc)
    ab, ba = nf(("a", "b")), nf(("b", "a"))
    assert ab == ba
    for n in range(6):
        d = states[n]
        assert seq[(ab, n)] == a[b[d]] == b[a[d]]
        assert seq[((), n)] == d
    assert verify_phi_like(seq, group_rules(gc), torus, Fraction(1, 3), flows).ok


def test_group_like_rejects_non_bijections():
    gc = GroupCross(("g",), 1, 1)
    with pytest.raises(SequenceError, match="bijection"):
        build_group_like({"g": {"a": "a", "b": "a", "c": "a"}}, C3, ["a"], gc)


@settings(max_examples=40)
@given(st.permutations(range(5)), st.permutations(range(5)), st.integers(1, 5))
def test_free_group_tables_are_exact(p, q, horizon):
    states = tuple("abcde")
    sys = FiniteSystem(states, {x: x for x in states}, unit_metric(5))
    flows = inverse_flows({"a": {states[i]: states[p[i]] for i in range(5)},
                           "b": {states[i]: states[q[i]] for i in range(5)}},
                          {"a": "A", "b": "B"})
    gc = GroupCross(("a", "A", "b", "B"), 2, horizon, FreeReduction((("a", "A"), ("b", "B"))))
    seq = build_group_like(flows, sys, list(states), gc)
    assert [seq[((), n)] for n in range(horizon)] == list(states[:horizon])
    assert verify_phi_like(seq, group_rules(gc), sys, Fraction(1, 100), flows).ok


# --- t-like -----------------------------------------------------------------

def test_t_like_on_a_bijection_is_the_exact_orbit():
    seq = build_t_like(C3, ["a", "b"], RowsByZ(2, 3))
    for n, d in enumerate(["a", "b"]):
        for z in range(-3, 4):
            x = d
            for _ in range(z % 3):
                x = C3.map[x]
            assert seq[(n, z)] == x
    assert verify_p_like(seq, ActionRule("t"), C3, Fraction(1, 100)).ok


def test_t_like_needs_a_surjection():
    # b, c -> a and a -> b misses c, so it is not onto
    sys = FiniteSystem(("a", "b", "c"), {"a": "b", "b": "a", "c": "a"}, unit_metric(3))
    with pytest.raises(SequenceError, match="surjective"):
        build_t_like(sys, ["a"], RowsByZ(1, 2))


# --- s-like -----------------------------------------------------------------

def test_s_like_on_a_cycle_is_the_orbit():
    seq = build_s_like(C3, ["a", "b", "c", "a"], [1, Fraction(1, 2), Fraction(1, 3)])
    assert seq.states() == ["a", "b", "c", "a"]
    assert verify_p_like(seq, ActionRule("s"), C3, Fraction(1, 3)).ok


def test_s_like_bridged_system():
    sys = bridged_five()
    seq = build_s_like(sys, dense_enumeration(sys), [1] * 10)
    report = verify_p_like(seq, ActionRule("s"), sys, 1)
    assert report.ok
    assert tail_dense_check(seq, sys, "singleton", len(seq) // 2)


def test_s_like_tail_bounds_with_a_decreasing_schedule():
    sys = bridged_five()
    sched = [Fraction(3, 2), Fraction(5, 4), 1, 1, 1, 1, 1, 1, 1, 1]
    seq = build_s_like(sys, dense_enumeration(sys), sched)
    for k, start in enumerate(seq.segments):
        report = verify_p_like(seq, ActionRule("s"), sys, sched[k])
        assert report.tail_ok_position is not None and report.tail_ok_position <= start


def test_s_like_names_the_failing_pair():
    sys = FiniteSystem(("a", "b"), {"a": "a", "b": "b"}, unit_metric(2))
    with pytest.raises(NoChainError, match=r"'a' to 'b' \(pair 0\)"):
        build_s_like(sys, ["a", "b"], [1])


def test_builders_are_deterministic():
    sys = bridged_five()
    one = build_s_like(sys, dense_enumeration(sys), [1] * 10)
    two = build_s_like(sys, dense_enumeration(sys), [1] * 10)
    assert json.dumps(one.to_dict()) == json.dumps(two.to_dict())


# --- r-like -----------------------------------------------------------------

def test_r_like_fixed_point():
    seq = build_r_like(FIXED, ["p"], [1], FactorialCycles(4))
    assert set(seq.states()) == {"p"}
    assert verify_p_like(seq, ActionRule("r"), FIXED, Fraction(1, 100)).ok


def test_r_like_two_cycle_rows():
    seq = build_r_like(TWO, ["a"], [1], FactorialCycles(4))
    assert seq.segments == (2,)
    assert seq[(1, 0)] == "a"
    for n in range(2, 5):
        row = [seq[(n, m)] for m in range(math.factorial(n))]
        assert row == ["a", "b"] * (math.factorial(n) // 2)
    report = verify_p_like(seq, ActionRule("r"), TWO, 1)
    assert {v.index[0] for v in report.violations} == {1}
    assert report.tail_ok_from == (2, 0)


def test_r_like_chain_lengths_increase_and_divide():
    sys = FiniteSystem(tuple("abcd"), {"a": "b", "b": "a", "c": "d", "d": "c"}, unit_metric(4))
    seq = build_r_like(sys, dense_enumeration(sys), [1] * 9, FactorialCycles(6))
    lengths = seq.segments
    assert all(x < y for x, y in zip(lengths, lengths[1:]))
    report = verify_p_like(seq, ActionRule("r"), sys, 1)
    assert all(v.index[0] < lengths[0] for v in report.violations)


def test_r_like_needs_self_chains():
    sink = FiniteSystem(("a", "b"), {"a": "b", "b": "b"}, unit_metric(2))
    with pytest.raises(NoChainError, match="'a' to itself"):
        build_r_like(sink, ["a"], [1], FactorialCycles(3))


# --- extraction -------------------------------------------------------------

def test_extract_chain_from_exact_orbit():
    seq = nat_sequence(orbit(C3, "a", 9))
    chain = extract_chain(seq, C3, "a", "a", Fraction(1, 2))
    assert chain.points == ("a", "b", "c", "a")


def test_extract_chain_from_bowen_sequence():
    sys = bridged_five()
    seq = build_s_like(sys, dense_enumeration(sys), [1] * 10)
    for a in sys.states:
        for b in sys.states:
            chain = extract_chain(seq, sys, a, b, 1)
            assert validate_chain(sys, chain)
            assert chain.points[0] == a and chain.points[-1] == b


def test_extract_chain_eps_too_small():
    sys = bridged_five()
    seq = build_s_like(sys, dense_enumeration(sys), [1] * 10)
    with pytest.raises(NotFoundError):
        extract_chain(seq, sys, "a", "c", Fraction(1, 4))


def test_extract_self_chain_examples():
    fixed_seq = build_r_like(FIXED, ["p"], [1], FactorialCycles(3))
    assert extract_self_chain(fixed_seq, FIXED, "p", 1).points == ("p", "p")
    seq = build_r_like(TWO, ["a"], [1], FactorialCycles(4))
    chain = extract_self_chain(seq, TWO, "a", 2)
    assert chain.points == ("a", "b", "a") and validate_chain(TWO, chain)


def test_extract_self_chain_not_found():
    sys = FiniteSystem(("a", "b"), {"a": "a", "b": "b"}, unit_metric(2))
    seq = build_r_like(sys, ["a"], [1], FactorialCycles(3))
    with pytest.raises(NotFoundError):
        extract_self_chain(seq, sys, "b", 1)
