import random

import pytest
from hypothesis import given, settings, strategies as st

import brute
from conftest import convergent_sequence, shift
from subshiftkit import partial_action as pa
from subshiftkit.oracles import FAMILIES
from subshiftkit.shifts import iter_points
from subshiftkit.spectrum import (
    CERTIFIED_IN,
    FORBIDDEN,
    NECESSARY_ONLY,
    BasicOpenSpec,
    ExactPoint,
    RadiusTooSmall,
    SpectrumBall,
    basic_open_contains,
    limit_ball,
    membership_tests,
    spectral_translate,
    stem_at,
    stem_of,
    to_dot,
    validate_element,
    xi_ball,
)
from subshiftkit.words import UNIT, EvPeriodicWord, ball, positive_pair

P = EvPeriodicWord.periodic
NAMES = ["even", "golden", "sft001", "full2", "markov3"]


def brute_xi(S, x, radius):
    out = set()
    for g in ball(S.alphabet, radius):
        pair = positive_pair(g)
        if pair is None or not x.starts_with(pair.alpha):
            continue
        y = x.shift(len(pair.alpha))
        if brute.in_shift(S, y.prepend(pair.alpha)) and brute.in_shift(S, y.prepend(pair.beta)):
            out.add(g)
    return out


def point_strategy(name, max_desc=5):
    return st.sampled_from(brute.all_points(shift(name), max_desc))


@pytest.mark.parametrize("name", NAMES)
def test_xi_ball_matches_brute_force(name):
    S = shift(name)
    for x in brute.all_points(S, 4):
        assert xi_ball(S, x, 3).members == brute_xi(S, x, 3)


def test_xi_ball_examples():
    E = shift("even")
    A = E.alphabet
    assert A.parse_element("0^-1") in xi_ball(E, P(("1",)), 2).members
    assert xi_ball(E, P(("1",)), 0).members == {UNIT}
    F = shift("full2")
    members = xi_ball(F, P(("0",)), 2).members
    expected = {g for g in ball(A, 2) if positive_pair(g) and all(a == "0" for a in positive_pair(g).alpha)}
    assert members == expected
    with pytest.raises(ValueError):
        xi_ball(E, P(("1",)), -1)


@pytest.mark.parametrize("name", NAMES)
def test_stems(name):
    S = shift(name)
    for x in brute.all_points(S, 4):
        b = xi_ball(S, x, 3)
        assert stem_of(b) == x.prefix(3)
        for g in b.members:
            assert stem_at(b, g)[: len(positive_pair(g).beta)] == positive_pair(g).beta
    assert stem_of(xi_ball(S, brute.all_points(S, 1)[0], 0)) == ()


def test_stem_at_rejects_non_members():
    E = shift("even")
    b = xi_ball(E, P(("0",)), 2)
    with pytest.raises(ValueError):
        stem_at(b, E.alphabet.parse_element("1"))


def test_validation_clauses():
    E = shift("even")
    A = E.alphabet
    assert validate_element(xi_ball(E, P(("1",)), 3), E).value is True
    two = SpectrumBall.build(1, [UNIT, A.parse_element("0"), A.parse_element("1")], ExactPoint(P(("0",))))
    v = validate_element(two, E)
    assert v.value is False and v.witness["clause"] in ("unique-successor", "stem")
    stemless = SpectrumBall(1, frozenset([UNIT, A.parse_element("0"), A.parse_element("1")]), ("0",), ExactPoint(P(("0",))))
    assert validate_element(stemless, E).witness["clause"] == "unique-successor"
    no_unit = SpectrumBall(1, frozenset([A.parse_element("0")]), (), ExactPoint(P(("0",))))
    assert validate_element(no_unit, E).witness["clause"] == "unit"
    gap = SpectrumBall(2, frozenset([UNIT, A.parse_element("00"), A.parse_element("0")]), ("0", "0"), ExactPoint(P(("0",))))
    assert validate_element(gap, E).value is True
    hole = SpectrumBall(2, frozenset([UNIT, A.parse_element("00")]), ("0", "0"), ExactPoint(P(("0",))))
    assert validate_element(hole, E).witness["clause"] == "convexity"


@pytest.mark.parametrize("name", NAMES)
def test_exact_balls_validate(name):
    S = shift(name)
    for x in brute.all_points(S, 4):
        assert validate_element(xi_ball(S, x, 3), S).value is True


def test_translate_examples():
    E = shift("even")
    A = E.alphabet
    xi = xi_ball(E, P(("1",)), 3)
    assert spectral_translate(UNIT, xi).members == xi.members
    assert spectral_translate(A.parse_element("1"), xi).members == xi_ball(E, P(("1",)), 2).members
    with pytest.raises(ValueError):
        spectral_translate(A.parse_element("01"), xi_ball(E, P(("0",)), 3))


@pytest.mark.parametrize("name", ["even", "golden", "sft001"])
@settings(max_examples=200)
@given(data=st.data())
def test_equivariance(name, data):
    S = shift(name)
    x = data.draw(point_strategy(name))
    g = data.draw(st.sampled_from(ball(S.alphabet, 3)))
    R = 5
    xi = xi_ball(S, x, R)
    y = pa.apply(S, g, x)
    if y is None:
        assert g.inverse() not in xi.members
        return
    assert g.inverse() in xi.members
    assert spectral_translate(g, xi).members == xi_ball(S, y, R - len(g)).members


@pytest.mark.parametrize("name", ["even", "golden", "sft001"])
@settings(max_examples=200)
@given(data=st.data())
def test_xi_is_injective_beyond_description(name, data):
    S = shift(name)
    x = data.draw(point_strategy(name, 3))
    y = data.draw(point_strategy(name, 3))
    # past both preperiods, two periodic words agreeing on p + q letters are equal
    R = max(len(x.preperiod), len(y.preperiod)) + len(x.period) + len(y.period)
    if x != y:
        assert xi_ball(S, x, R).members != xi_ball(S, y, R).members


@pytest.mark.parametrize("name", ["even", "golden", "sft001"])
@settings(max_examples=200)
@given(data=st.data())
def test_stem_continuity(name, data):
    S = shift(name)
    x = data.draw(point_strategy(name))
    y = data.draw(point_strategy(name))
    R = data.draw(st.integers(0, 4))
    if xi_ball(S, x, R).members == xi_ball(S, y, R).members:
        assert x.prefix(R) == y.prefix(R)


def test_membership_examples():
    E = shift("even")
    G = shift("golden")
    A = E.alphabet
    assert membership_tests(E, P(("1",)), A.parse_element("0^-1")) == NECESSARY_ONLY
    assert membership_tests(G, P(("0",)), A.parse_element("1^-1")) == CERTIFIED_IN
    assert membership_tests(E, P(("0",)), A.parse_element("01^-10^-1")) == FORBIDDEN
    assert membership_tests(G, P(("0",)), A.parse_element("1^-11^-1")) == FORBIDDEN


@pytest.mark.parametrize("name", ["even", "golden", "sft001"])
def test_membership_classification_agrees_with_exact_balls(name):
    S = shift(name)
    for x in brute.all_points(S, 4):
        members = xi_ball(S, x, 3).members
        for g in ball(S.alphabet, 3):
            pair = positive_pair(g)
            if pair is None or not x.starts_with(pair.alpha):
                continue
            verdict = membership_tests(S, x, g)
            if verdict == FORBIDDEN:
                assert g not in members
            else:
                # the exact ball of the stem contains every non-forbidden element
                assert g in members


def test_basic_open_sets():
    E = shift("even")
    V = BasicOpenSpec((), (("0", "1"), ("0", "1", "1")))
    assert basic_open_contains(xi_ball(E, P(("1",)), 3), V)
    assert not basic_open_contains(xi_ball(E, P(("0",)), 3), V)
    with pytest.raises(RadiusTooSmall):
        basic_open_contains(xi_ball(E, P(("1",)), 2), V)
    for x in brute.all_points(E, 4):
        xi = xi_ball(E, x, 4)
        for alpha in [("1",), ("1", "1"), ("0",)]:
            if x.starts_with(alpha):
                assert basic_open_contains(xi, BasicOpenSpec(alpha, (alpha,)))


def test_even_limit_differs_from_every_exact_ball():
    E = shift("even")
    fam = FAMILIES["even-odd-ones"]
    b, report = limit_ball(E, fam.point, 2, limit=fam.limit, descriptor=fam.name)
    assert report["stabilized"] and report["index"] <= 10
    assert E.alphabet.parse_element("0^-1") not in b.members
    assert stem_of(b) == ("1", "1")
    assert validate_element(b, E).value is True
    assert b.members < xi_ball(E, P(("1",)), 2).members


def test_limit_of_constant_sequence():
    G = shift("golden")
    x = EvPeriodicWord.of(("1",), ("0",))
    b, report = limit_ball(G, lambda k: x, 3)
    assert report["index"] == 1 and b.members == xi_ball(G, x, 3).members
    assert b.stem_point() == x


def test_limit_reports_non_stabilization():
    F = shift("full2")
    alternating = lambda k: P(("0",)) if k % 2 else P(("1",))
    b, report = limit_ball(F, alternating, 2, k_max=12)
    assert b is None and report == {"stabilized": False, "k_max": 12, "window": 3}


@pytest.mark.parametrize("name", ["sft001", "golden"])
@settings(max_examples=200)
@given(seed=st.integers(0, 10**6))
def test_sft_limits_are_exact_balls(name, seed):
    S = shift(name)
    limit, seq = convergent_sequence(S, random.Random(seed))
    b, report = limit_ball(S, seq, 3)
    assert report["stabilized"]
    assert b.members == xi_ball(S, limit, 3).members
    # containment in the exact ball of the stem extended to the limit
    assert b.members <= xi_ball(S, limit, 3).members


@settings(max_examples=200)
@given(seed=st.integers(0, 10**6))
def test_even_limits_are_contained_in_the_ball_of_the_limit(seed):
    E = shift("even")
    limit, seq = convergent_sequence(E, random.Random(seed))
    b, report = limit_ball(E, seq, 3)
    assert report["stabilized"]
    assert b.members <= xi_ball(E, limit, 3).members
    assert stem_of(b) == limit.prefix(3)


def test_dot_output():
    E = shift("even")
    text = to_dot(xi_ball(E, P(("1",)), 2), E.alphabet)
    assert text.startswith("digraph spectrum {") and text.endswith("}\n")
    assert '"e" -> "1" [label="1", style=solid];' in text
    assert "style=dashed" in text
