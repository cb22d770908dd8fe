import itertools
import json
import re

import pytest
from hypothesis import assume, given, strategies as st

import brute
from conftest import ALL_NAMES, EXACT_NAMES
from subshiftkit.shifts import (
    DepthExceeded,
    Subshift,
    builtin,
    builtin_names,
    config_alive,
    contains_point,
    follower_config,
    follower_nonempty,
    follower_unique_point,
    from_spec,
    in_language,
    is_finite_type,
    is_surjective,
    iter_points,
    lambda_l,
    load_spec,
    survives,
)
from subshiftkit.words import EvPeriodicWord


def exact(name):
    return builtin(name)


small_sfts = st.builds(
    lambda n, forb: (n, forb),
    st.sampled_from([2, 3]),
    st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=3), min_size=0, max_size=4),
)


def make_sft(spec):
    n, forb = spec
    letters = [str(i) for i in range(n)]
    words = [tuple(str(i % n) for i in f) for f in forb]
    try:
        return Subshift(letters, "sft", forbidden=words)
    except ValueError:
        return None


def test_builtins_present():
    assert set(ALL_NAMES) <= set(builtin_names())


@pytest.mark.parametrize("name", EXACT_NAMES)
def test_language_matches_brute_force(name):
    S = exact(name)
    for n in range(9):
        for w in S.alphabet.words(n):
            assert in_language(S, w) == brute.in_language(S, w), w


@pytest.mark.parametrize("name", EXACT_NAMES)
def test_point_membership_matches_brute_force(name):
    S = exact(name)
    letters = list(S.alphabet)
    for total in range(1, 6):
        for cut in range(total):
            for pre in itertools.product(letters, repeat=cut):
                for per in itertools.product(letters, repeat=total - cut):
                    x = EvPeriodicWord.of(pre, per)
                    assert contains_point(S, x) == brute.in_shift(S, x), x


@pytest.mark.parametrize("name", EXACT_NAMES)
def test_iter_points_enumerates_exactly_the_small_points(name):
    S = exact(name)
    got = list(iter_points(S, frozenset([S.machine.start]), 6))
    assert len(got) == len(set(got))
    assert set(got) == set(brute.all_points(S, 6))
    assert [x.description_length for x in got] == sorted(x.description_length for x in got)


@given(small_sfts)
def test_random_sft_language_matches_brute_force(spec):
    S = make_sft(spec)
    assume(S is not None)
    for n in range(6):
        for w in S.alphabet.words(n):
            assert in_language(S, w) == brute.in_language(S, w)


def test_sft_membership_needs_extension():
    # "1" has no forbidden factor but nothing may follow it
    S = Subshift(["0", "1"], "sft", forbidden=[("1", "0"), ("1", "1")])
    assert not in_language(S, ("1",))
    assert in_language(S, ("0", "0"))


@pytest.mark.parametrize("name", ALL_NAMES)
@given(data=st.data())
def test_language_factorial_and_extendable(name, data):
    S = builtin(name)
    n = data.draw(st.integers(1, 10))
    w = ()
    for _ in range(n):
        w += (data.draw(st.sampled_from([a for a in S.alphabet if in_language(S, w + (a,))])),)
    for i in range(len(w)):
        for j in range(i, len(w) + 1):
            assert in_language(S, w[i:j])
    assert any(in_language(S, w + (a,)) for a in S.alphabet)


@pytest.mark.parametrize("name", ["even", "sft001", "golden", "markov3"])
@given(data=st.data())
def test_follower_semantics_match_brute_force(name, data):
    S = builtin(name)
    L = [w for n in range(1, 4) for w in S.alphabet.words(n) if in_language(S, w)]
    B = data.draw(st.lists(st.sampled_from(L), min_size=1, max_size=3))
    points = brute.all_points(S, 4)
    y = data.draw(st.sampled_from(points))
    cfg = follower_config(S, B)
    assert survives(S, cfg.states, y) == brute.in_follower(S, B, y)


@pytest.mark.parametrize("name", ["even", "sft001", "golden"])
def test_equal_configs_have_equal_follower_languages(name):
    S = builtin(name)
    L = [w for n in range(1, 4) for w in S.alphabet.words(n) if in_language(S, w)]
    by_config = {}
    for r in (1, 2):
        for B in itertools.combinations(L, r):
            by_config.setdefault(follower_config(S, B).states, []).append(B)
    assert any(len(v) > 1 for v in by_config.values())
    for group in by_config.values():
        ref = [brute.follower_words(S, group[0], d) for d in range(1, 7)]
        for B in group[1:4]:
            assert [brute.follower_words(S, B, d) for d in range(1, 7)] == ref


def test_follower_examples():
    E = builtin("even")
    cfg = follower_config(E, [("0", "1"), ("0", "1", "1")])
    assert E.alphabet.format_point(follower_unique_point(cfg)) == "(1)"
    assert cfg.describe() == [["q0"], ["q1"]]
    S1 = builtin("sft001")
    assert S1.alphabet.format_point(follower_unique_point(follower_config(S1, [("0", "0")]))) == "(0)"
    F = builtin("full2")
    assert follower_unique_point(follower_config(F, [("0",)])) is None
    dead = follower_config(E, [("0", "1", "0")])
    assert dead.dead and not follower_nonempty(dead)
    with pytest.raises(ValueError):
        follower_unique_point(dead)


@pytest.mark.parametrize("name", ["even", "sft001", "golden", "markov3"])
def test_unique_points_match_brute_force(name):
    S = builtin(name)
    L = [w for n in range(1, 4) for w in S.alphabet.words(n) if in_language(S, w)]
    for r in (1, 2):
        for B in itertools.combinations(L, r):
            cfg = follower_config(S, B)
            pts = brute.follower_points(S, B, 6)
            if not follower_nonempty(cfg):
                assert pts == []
                continue
            p = follower_unique_point(cfg)
            words8 = brute.follower_words(S, B, 8)
            if p is not None:
                assert pts == [p]
                assert words8 == [p.prefix(8)]
            else:
                assert len(pts) >= 2


def test_surjectivity():
    M = builtin("markov3")
    v = is_surjective(M)
    assert v.value is False and v.witness["non_left_extendable"] == "1"
    for name in ["even", "golden", "full2", "sft001"]:
        S = builtin(name)
        expected = all(
            any(in_language(S, (a,) + w) for a in S.alphabet)
            for n in range(7) for w in S.alphabet.words(n) if in_language(S, w)
        )
        assert is_surjective(S).value is expected
    assert is_surjective(builtin("pow2")).exact is False


def test_finite_type_both_branches():
    even = is_finite_type(builtin("even"))
    golden = is_finite_type(builtin("golden"))
    assert golden.value is True
    assert even.value is not True
    assert even.value != golden.value


def test_pow2_language_matches_regular_description():
    S = builtin("pow2")
    for n in range(11):
        for w in S.alphabet.words(n):
            s = "".join(w)
            bad = any(len(m) & (len(m) - 1) for m in re.findall(r"(?<=0)(1+)(?=0)", s))
            assert in_language(S, w) == (not bad), s


def test_ex14_lambda():
    S = builtin("ex14")
    from subshiftkit.oracles import NAMED_POINTS

    z = NAMED_POINTS["thue-morse"]
    assert ["".join(w) for w in lambda_l(S, z, 1)] == ["0", "1", "2"]
    x = EvPeriodicWord.periodic(("1", "2"))
    assert ["".join(w) for w in lambda_l(S, x, 1)] == ["1", "2"]


def test_oracle_depth_is_enforced():
    S = builtin("pow2")
    with pytest.raises(DepthExceeded):
        in_language(S, ("1",) * (S.depth_bound + 1))
    shallow = S.with_depth(16)
    assert shallow.depth == 16 and S.depth == 256
    E = builtin("even")
    assert E.with_depth(3) is E


def test_spec_validation(tmp_path):
    with pytest.raises(ValueError):
        from_spec({"alphabet": ["0"], "kind": "sft", "bogus": 1})
    with pytest.raises(ValueError):
        from_spec({"alphabet": ["0", "1"], "kind": "sofic", "states": ["a"], "edges": [["a", "2", "a"]]})
    with pytest.raises(ValueError):
        from_spec({"alphabet": ["0", "1"], "kind": "oracle", "rule": "nope"})
    with pytest.raises(ValueError):
        from_spec({"alphabet": ["0", "1"], "kind": "sft", "forbidden": ["0", "1"]})
    path = tmp_path / "mine.json"
    path.write_text(json.dumps(builtin("golden").to_spec()))
    S = load_spec(str(path))
    assert S.name == "mine" and in_language(S, ("1", "0")) and not in_language(S, ("1", "1"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValueError):
        load_spec(str(bad))


def test_nondeterministic_presentation_is_accepted():
    spec = {
        "alphabet": ["0", "1"],
        "kind": "sofic",
        "states": ["a", "b"],
        "edges": [["a", "0", "a"], ["a", "0", "b"], ["b", "1", "a"]],
    }
    S = from_spec(spec)
    assert in_language(S, ("0", "1", "0")) and not in_language(S, ("1", "1"))
    assert config_alive(S, follower_config(S, [("1",)]).states)
