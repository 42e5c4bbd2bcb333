import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdgame.game_model import (
    ActionProfile,
    PayoffTable,
    StructureError,
    coplayer_average,
    custom,
    game_from_spec,
    parse_game,
    payoff_vectors,
    profile_payoff,
    public_goods,
    snowdrift,
    validate_dilemma,
)

from _util import random_dilemma


def test_pgg_table_values():
    t = public_goods(5, 2, 1)
    assert np.allclose(t.a, (-0.6, -0.2, 0.2, 0.6, 1.0), atol=1e-12)
    assert np.allclose(t.b, (0, 0.4, 0.8, 1.2, 1.6), atol=1e-12)
    assert validate_dilemma(t)
    assert t.a[4] == pytest.approx(1.0, abs=1e-12)
    assert t.b[0] == 0


def test_pgg_two_players():
    t = public_goods(2, 1.5, 1)
    assert np.allclose(t.a, (-0.25, 0.5))
    assert np.allclose(t.b, (0, 0.75))
    assert validate_dilemma(t)


def test_snowdrift_values():
    t = snowdrift(5, 2, 1)
    assert np.allclose(t.a, (1, 1.5, 5 / 3, 1.75, 1.8))
    assert t.b == (0, 2, 2, 2, 2)
    assert validate_dilemma(t)
    assert snowdrift(2, 2, 1).a == (1, 1.5)
    assert snowdrift(2, 2, 1).b == (0, 2)


def test_axiom_c_violation():
    rep = validate_dilemma(custom((0, 0), (1, 1)))
    assert not rep
    assert rep.axiom == "c"


def test_axiom_a_and_b_violations():
    assert validate_dilemma(custom((1, 0), (0, 2))).axiom == "a"
    rep = validate_dilemma(custom((0, 1), (0, 0)))
    assert rep.axiom == "b" and rep.index == 0


def test_strict_axioms_have_no_slack():
    # b[1] == a[0] is not a dilemma, however close
    assert not validate_dilemma(custom((1.0, 2.0), (0.0, 1.0)))
    assert validate_dilemma(custom((1.0, 2.0), (0.0, 1.0 + 1e-15)))


def test_r_equal_n_rejected():
    with pytest.raises(StructureError):
        public_goods(3, 3.0, 1.0)
    with pytest.raises(StructureError):
        public_goods(3, 1.0, 1.0)


def test_length_mismatch():
    with pytest.raises(StructureError):
        PayoffTable(3, (0, 1), (0, 1, 2))


def test_profile_payoff_examples():
    t = public_goods(5, 2, 1)
    assert profile_payoff(t, 0b11111, 0) == pytest.approx(1.0)
    assert profile_payoff(t, 0b11110, 0) == pytest.approx(1.6)
    sd = snowdrift(5, 2, 1)
    assert all(profile_payoff(sd, 0, i) == 0 for i in range(5))


def test_action_profile():
    prof = ActionProfile.from_actions("CDDC")
    assert prof.mask == 0b1001 and prof.cooperators == 2
    assert prof.coplayers(0) == ([3], [1, 2])
    with pytest.raises(ValueError):
        ActionProfile(16, 4)


def test_coplayer_average_examples():
    t = public_goods(5, 2, 1)
    assert coplayer_average(t, "C", 4) == pytest.approx(1.0)
    assert coplayer_average(t, "D", 0) == 0
    assert coplayer_average(t, "C", 2) == pytest.approx(0.7)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_coplayer_average_matches_enumeration(n, seed):
    t = random_dilemma(np.random.default_rng(seed), n)
    for key in "CD":
        for z in range(n):
            for coop in itertools.combinations(range(1, n), z):
                mask = (1 if key == "C" else 0) | sum(1 << j for j in coop)
                avg = np.mean([profile_payoff(t, mask, j) for j in range(1, n)])
                assert coplayer_average(t, key, z) == pytest.approx(avg, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10), st.floats(0.01, 0.99), st.floats(0.1, 10))
def test_pgg_always_dilemma(n, frac, c):
    r = 1 + frac * (n - 1)
    t = public_goods(n, r, c)
    assert validate_dilemma(t)
    assert np.allclose(np.subtract(t.b[1:], t.a[:-1]), c)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10), st.floats(0.1, 10), st.floats(1.01, 5))
def test_snowdrift_always_dilemma(n, cost, ratio):
    t = snowdrift(n, cost * ratio, cost)
    assert validate_dilemma(t)
    assert t.a[-1] == pytest.approx(cost * ratio - cost / n)


def test_payoff_vectors_consistent():
    t = public_goods(4, 2.5, 1)
    g = payoff_vectors(t)
    for mask in range(16):
        for i in range(4):
            assert g[i, mask] == profile_payoff(t, mask, i)


def test_parse_game_forms(tmp_path):
    a = parse_game("pgg:n=5,r=2,c=1")
    b = parse_game('{"type": "pgg", "n": 5, "r": 2, "c": 1, "a": [9, 9, 9, 9, 9]}')
    path = tmp_path / "g.json"
    path.write_text('{"type": "nsd", "n": 5, "benefit": 2, "cost": 1}')
    c = parse_game(str(path))
    assert a == b
    assert c == snowdrift(5, 2, 1)
    assert parse_game("nsd:n=5,b=2,c=1") == c
    assert parse_game("custom:a=0;1,b=0.5;2") == custom((0, 1), (0.5, 2))


def test_custom_requires_arrays():
    with pytest.raises(StructureError):
        game_from_spec({"type": "custom", "n": 2})
    with pytest.raises(StructureError):
        game_from_spec({"type": "chicken", "n": 2})
