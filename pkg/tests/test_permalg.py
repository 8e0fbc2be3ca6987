import pytest
from hypothesis import given, strategies as st

from omegastar.permalg import (
    OMEGA, ArithmeticFamily, AxiomTag, FactorialFamily, Fixed, IndependentError, LcmFamily,
    PermPresentation, PresentationError, Status, Target, Verdict, catalog, embeds_in,
    from_json, index, inverse, is_acyclic, is_chain_recurrent_star, is_chain_transitive_star,
    is_cyclic, is_pan_divisible, is_universal_CH, join, normalize, parse_name,
    quotient_necessary_delta, star_key, to_json,
)

counts = st.one_of(st.integers(0, 5), st.just(OMEGA))
families = st.one_of(
    st.builds(Fixed, st.integers(1, 12), counts),
    st.builds(FactorialFamily, st.integers(0, 4)),
    st.builds(LcmFamily, st.integers(0, 4)),
    st.builds(ArithmeticFamily, st.integers(1, 11), st.integers(0, 6)),
)
presentations = st.builds(PermPresentation, st.integers(0, 4), st.integers(0, 4), counts,
                          st.lists(families, max_size=4).map(tuple))


def test_omega_arithmetic():
    assert OMEGA + 3 == OMEGA and 2 * OMEGA == OMEGA and 0 * OMEGA == 0
    assert 7 < OMEGA and not OMEGA < OMEGA and OMEGA >= 100


def test_normalize_merges_opposite_orbits():
    p = normalize(PermPresentation(3, 1, 0))
    assert (p.n_orbits, p.bn_orbits, p.z_orbits) == (2, 0, 1)


def test_normalize_collects_fixed_periods():
    p = normalize(PermPresentation(0, 0, 0, (Fixed(3, 2), Fixed(2), Fixed(3, 1), Fixed(5, 0))))
    assert p.spectrum == (Fixed(2, 1), Fixed(3, 3))


@pytest.mark.parametrize("name, delta", [
    ("s", 1), ("s_inv", 1), ("z", 2), ("r", 0), ("c_4", 0), ("t", OMEGA),
    ("t_join_r", OMEGA), ("s_join_s_inv", 2),
])
def test_index_of_catalog(name, delta):
    assert index(catalog(name)) == delta


def test_pan_divisibility_examples():
    assert is_pan_divisible(catalog("r"))
    assert is_pan_divisible(PermPresentation(0, 0, 0, (LcmFamily(),)))
    assert not is_pan_divisible(catalog("c_3"))
    assert not is_pan_divisible(PermPresentation(0, 0, 0, (ArithmeticFamily(2, 0),)))
    # finitely many cycles never matter
    assert is_pan_divisible(PermPresentation(0, 0, 0, (Fixed(7, 4),)))


def test_acyclic_and_cyclic():
    assert is_acyclic(catalog("t")) and not is_cyclic(catalog("t"))
    assert not is_acyclic(catalog("t_join_r"))
    assert is_cyclic(catalog("r")) and is_cyclic(catalog("c_2"))
    assert not is_cyclic(catalog("s_join_s_inv"))


def test_universality_under_ch():
    assert is_universal_CH(catalog("t")).holds
    assert is_universal_CH(catalog("t_join_r")).holds
    for name in ("s", "r", "z", "c_3"):
        v = is_universal_CH(catalog(name))
        assert v.fails and v.axiom is AxiomTag.CH


def test_chain_transitive_star_only_shifts():
    assert is_chain_transitive_star(catalog("s")).holds
    assert is_chain_transitive_star(catalog("s_inv")).holds
    # a finite cyclic part alongside the shift is allowed
    assert is_chain_transitive_star(PermPresentation(1, 0, 0, (Fixed(3, 2),))).holds
    for name in ("z", "t", "r", "s_join_s_inv"):
        assert is_chain_transitive_star(catalog(name)).fails


def test_quotient_necessary_delta():
    assert quotient_necessary_delta(catalog("s"), catalog("z")).fails
    v = quotient_necessary_delta(catalog("z"), catalog("s"))
    assert v.status is Status.UNKNOWN


def test_embeds_in_examples():
    assert embeds_in(catalog("t"), Target.T_UP, AxiomTag.ZFC).holds
    assert embeds_in(catalog("r"), Target.T_UP, AxiomTag.OCA_MA).fails
    assert embeds_in(catalog("r"), Target.T_UP, AxiomTag.CH).holds
    assert embeds_in(catalog("c_5"), Target.R_UP, AxiomTag.OCA_MA).holds
    assert embeds_in(catalog("t"), Target.R_UP, AxiomTag.ZFC).fails
    assert embeds_in(catalog("s_join_s_inv"), Target.T_JOIN_R_UP, AxiomTag.ZFC).holds
    with pytest.raises(IndependentError):
        embeds_in(catalog("r"), Target.T_UP, AxiomTag.ZFC)
    with pytest.raises(IndependentError):
        embeds_in(catalog("s"), Target.R_UP, AxiomTag.ZFC)


def test_unknown_verdict_needs_a_reason():
    with pytest.raises(ValueError):
        Verdict(Status.UNKNOWN, AxiomTag.ZFC, "no idea")
    Verdict(Status.UNKNOWN, AxiomTag.ZFC, "open question: something")


@pytest.mark.parametrize("raw, expected", [
    ("c3", ("c", 3)), ("c_12", ("c", 12)), ("s^-1", ("s_inv", None)), ("t∨r", ("t_join_r", None)),
])
def test_parse_name(raw, expected):
    assert parse_name(raw) == expected


def test_unknown_names_rejected():
    for bad in ("q", "c_", "c"):
        with pytest.raises(PresentationError):
            catalog(bad)
    with pytest.raises(PresentationError):
        catalog("u")


def test_from_json_diagnostics():
    with pytest.raises(PresentationError, match=r"spectrum\[1\]"):
        from_json({"n": 1, "spectrum": [{"kind": "fixed", "period": 2}, {"kind": "wat"}]})
    with pytest.raises(PresentationError, match="'bn'"):
        from_json({"bn": -1})
    assert from_json({"name": "c_n", "parameter": 4}) == catalog("c_4")


@given(presentations)
def test_json_round_trip(p):
    assert from_json(to_json(p)) == p


@given(presentations)
def test_normalize_idempotent_and_index_invariant(p):
    q = normalize(p)
    assert normalize(q) == q
    assert index(q) == index(p)
    assert min(q.n_orbits, q.bn_orbits) == 0


@given(presentations)
def test_inverse_is_an_involution(p):
    assert inverse(inverse(p)) == normalize(p)
    assert index(inverse(p)) == index(p)


@given(presentations, presentations)
def test_join_is_commutative_and_adds_index(p, q):
    assert join(p, q) == join(q, p)
    assert index(join(p, q)) == index(p) + index(q)


@given(presentations)
def test_acyclicity_dichotomy(p):
    has_infinite = any(f.infinite for f in p.spectrum)
    assert embeds_in(p, Target.T_UP, AxiomTag.OCA_MA).holds != has_infinite


@given(presentations)
def test_recurrence_matches_finite_index(p):
    assert is_chain_recurrent_star(p).holds == (index(p) is not OMEGA)


@given(presentations)
def test_star_key_drops_only_finite_cycles(p):
    k = star_key(p)
    assert all(f.infinite for f in k.spectrum)
    assert index(k) == index(p)
    assert is_pan_divisible(k) == is_pan_divisible(p)


def _explicit_cycle_count(spectrum) -> dict:
    # realize the finite part as a permutation of 0..N-1 and count cycles per length
    perm, start = {}, 0
    for fam in spectrum:
        for _ in range(fam.multiplicity):
            for i in range(fam.period):
                perm[start + i] = start + (i + 1) % fam.period
            start += fam.period
    seen, lengths = set(), {}
    for x in perm:
        if x in seen:
            continue
        n, y = 0, x
        while y not in seen:
            seen.add(y)
            y = perm[y]
            n += 1
        lengths[n] = lengths.get(n, 0) + 1
    return lengths


def test_normalize_pools_cycles_against_explicit_count():
    raw = PermPresentation(3, 3, 2, (Fixed(2, 5), Fixed(2, 3)))
    p = normalize(raw)
    assert p == PermPresentation(0, 0, 5, (Fixed(2, 8),))
    assert _explicit_cycle_count(raw.spectrum) == {2: 8}
    assert normalize(PermPresentation(2, 1, 0)) == PermPresentation(1, 0, 1)
    assert normalize(catalog("t")) == catalog("t")


def test_inverse_and_join_examples():
    assert inverse(catalog("s")) == PermPresentation(0, 1, 0)
    assert inverse(catalog("t")) == catalog("t")
    assert inverse(PermPresentation(2, 0, 1, (Fixed(2, 3),))) == PermPresentation(0, 2, 1, (Fixed(2, 3),))
    assert join(catalog("t"), catalog("r")) == PermPresentation(0, 0, OMEGA, (FactorialFamily(1),))
    assert join(catalog("s"), catalog("empty")) == normalize(catalog("s"))
    assert index(join(catalog("s"), catalog("z"))) == 3


def test_index_bound_is_silent_above_t():
    for name in ("s", "z", "r", "c_2", "t_join_r"):
        assert quotient_necessary_delta(catalog("t"), catalog(name)).status is Status.UNKNOWN
