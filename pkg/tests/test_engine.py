import numpy as np
import pytest

from zdgame import engine
from zdgame.engine import (
    DiscountedDistribution,
    OpponentStrategy,
    discounted_payoffs,
    exact_distribution,
    exact_report,
    monte_carlo,
    relabel,
    verify_akin,
)
from zdgame.game_model import payoff_vectors, public_goods
from zdgame.zd_core import MemoryOneStrategy, PayoffRelation, make_zd

from _util import series_distribution

PGG = public_goods(5, 2, 1)
REL = PayoffRelation.equal(0.5, 0.0, 5)


def random_m1(rng, n):
    return MemoryOneStrategy(rng.random(1 << n), float(rng.random()))


def zd_key(delta=0.5):
    return make_zd(PGG, REL, delta)[1]


def test_all_defect_unit_mass():
    n = 3
    players = [MemoryOneStrategy.constant(n, 0.0)] * n
    v = exact_distribution(players, 0.7).v
    assert v[0] == pytest.approx(1.0) and v[1:] == pytest.approx(0.0)


def test_uniform_play():
    players = [MemoryOneStrategy(np.full(4, 0.5), 0.5)] * 2
    assert exact_distribution(players, 0.9).v == pytest.approx(np.full(4, 0.25), abs=1e-12)


def test_matches_power_series():
    rng = np.random.default_rng(11)
    players = [random_m1(rng, 3) for _ in range(3)]
    exact = exact_distribution(players, 0.9).v
    series = series_distribution(players, 0.9, horizon=400)
    assert np.max(np.abs(exact - series)) < 1e-10


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_distribution_is_probability(n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        v = exact_distribution([random_m1(rng, n) for _ in range(n)], float(rng.uniform(0.01, 0.999))).v
        assert np.all(v >= -1e-15)
        assert abs(v.sum() - 1) < 1e-10


def test_degenerate_payoffs():
    n = 5
    allc = np.zeros(32)
    allc[31] = 1
    assert discounted_payoffs(DiscountedDistribution(allc, 0.5), PGG) == pytest.approx([1.0] * 5)
    alld = np.zeros(32)
    alld[0] = 1
    assert discounted_payoffs(DiscountedDistribution(alld, 0.5), PGG) == pytest.approx([0.0] * 5)
    uniform = DiscountedDistribution(np.full(32, 1 / 32), 0.5)
    g = payoff_vectors(PGG)
    expected = [sum(g[i, m] for m in range(32)) / 32 for i in range(n)]
    assert discounted_payoffs(uniform, PGG) == pytest.approx(expected)
    # half the time a cooperator averaging a, half a defector averaging b
    assert expected[0] == pytest.approx(0.5 * (np.mean(PGG.a) + np.mean(PGG.b)))


def test_akin_identity():
    rng = np.random.default_rng(5)
    for n in (2, 3, 4, 5):
        players = [random_m1(rng, n) for _ in range(n)]
        dist = exact_distribution(players, 0.8)
        assert abs(verify_akin(players[0], dist)) < 1e-10
    players = [random_m1(rng, 3) for _ in range(3)]
    assert abs(verify_akin(players[0], exact_distribution(players, 0.999999))) < 1e-8
    alld = MemoryOneStrategy.constant(3, 0.0)
    assert verify_akin(alld, exact_distribution([alld] + players[1:], 0.6)) == pytest.approx(0, abs=1e-15)


def test_zd_vs_random_memory_one_exact():
    rng = np.random.default_rng(7)
    key = zd_key()
    players = [key] + [random_m1(rng, 5) for _ in range(4)]
    rep = exact_report(PGG, players, 0.5, REL)
    assert abs(rep.residual) < 1e-10
    assert abs(rep.akin_residual) < 1e-10
    assert rep.runs == 1 and rep.payoff_stderr == [0.0] * 5


def test_relabel_permutes_payoffs():
    rng = np.random.default_rng(2)
    players = [random_m1(rng, 4) for _ in range(4)]
    base = discounted_payoffs(exact_distribution(players, 0.7), public_goods(4, 2.5))
    # swap seats 0 and 2; every strategy reads profiles through the same swap
    order = [2, 1, 0, 3]
    swapped = [relabel(players[j], 2) for j in order]
    swapped_pay = discounted_payoffs(exact_distribution(swapped, 0.7), public_goods(4, 2.5))
    assert swapped_pay[[2, 1, 0, 3]] == pytest.approx(base, abs=1e-12)


def test_exact_rejects_history_rules_and_large_n():
    with pytest.raises(ValueError):
        exact_distribution([zd_key()] + [OpponentStrategy.history_rule(engine.grim_trigger, "grim")] * 4, 0.5)
    with pytest.raises(ValueError):
        exact_distribution([MemoryOneStrategy.constant(13, 0.5)] * 13, 0.5)


def test_opponent_kinds():
    assert OpponentStrategy.all_c().as_memory_one(2).p.tolist() == [1, 1, 1, 1]
    assert OpponentStrategy.random(0.3).as_memory_one(2).p0 == 0.3
    with pytest.raises(ValueError):
        OpponentStrategy.random(1.3)


def test_history_rules():
    hist = np.array([[0b111], [0b101], [0b111]], dtype=np.uint16)
    assert engine.majority_last3(hist, 0, 3).tolist() == [1.0]
    assert engine.grim_trigger(hist, 0, 3).tolist() == [0.0]
    assert engine.grim_trigger(hist, 1, 3).tolist() == [1.0]
    empty = np.empty((0, 4), dtype=np.uint16)
    assert engine.majority_last3(empty, 0, 3).tolist() == [1.0] * 4


# Monte Carlo ------------------------------------------------------------------


def test_mc_deterministic_across_workers():
    rng = np.random.default_rng(1)
    players = [zd_key()] + [random_m1(rng, 5) for _ in range(4)]
    a = monte_carlo(PGG, players, 0.5, 25_000, seed=99, relation=REL)
    b = monte_carlo(PGG, players, 0.5, 25_000, seed=99, relation=REL, workers=4)
    assert a.to_json() == b.to_json()
    c = monte_carlo(PGG, players, 0.5, 25_000, seed=100, relation=REL)
    assert c.payoff_mean != a.payoff_mean


def test_mc_matches_exact():
    rng = np.random.default_rng(4)
    players = [zd_key(0.9)] + [random_m1(rng, 5) for _ in range(4)]
    exact = exact_report(PGG, players, 0.9, REL)
    mc = monte_carlo(PGG, players, 0.9, 100_000, seed=2024, relation=REL)
    for m, se, e in zip(mc.payoff_mean, mc.payoff_stderr, exact.payoff_mean):
        assert abs(m - e) < 4 * se
    assert abs(mc.residual) < 3 * mc.residual_stderr


def test_mc_geometric_mode():
    rng = np.random.default_rng(8)
    players = [zd_key(0.8)] + [random_m1(rng, 5) for _ in range(4)]
    exact = exact_report(PGG, players, 0.8, REL)
    mc = monte_carlo(PGG, players, 0.8, 100_000, seed=5, relation=REL, geometric=True)
    for m, se, e in zip(mc.payoff_mean, mc.payoff_stderr, exact.payoff_mean):
        assert abs(m - e) < 4 * se


def test_mc_against_all_cooperators():
    players = [zd_key()] + [OpponentStrategy.all_c()] * 4
    rep = monte_carlo(PGG, players, 0.5, 100_000, seed=0, relation=REL)
    assert abs(rep.residual) < 3 * rep.residual_stderr


def test_mc_against_all_defectors():
    players = [zd_key()] + [OpponentStrategy.all_d()] * 4
    exact = exact_report(PGG, players, 0.5, REL)
    assert exact.payoff_mean == pytest.approx([0.0] * 5, abs=1e-12)
    rep = monte_carlo(PGG, players, 0.5, 10_000, seed=0, relation=REL)
    assert rep.payoff_mean == [0.0] * 5 and rep.residual == 0.0


def test_mc_against_history_rules():
    players = [zd_key(0.9)] + [OpponentStrategy.history_rule(engine.majority_last3, "majority3")] * 2 \
        + [OpponentStrategy.history_rule(engine.grim_trigger, "grim"), OpponentStrategy.random(0.6)]
    rep = monte_carlo(PGG, players, 0.9, 100_000, seed=17, relation=REL)
    assert abs(rep.residual) < 3 * rep.residual_stderr
    assert abs(rep.akin_residual) < 4 * rep.akin_stderr


def test_report_json_roundtrip():
    import json
    rep = exact_report(PGG, [zd_key()] + [OpponentStrategy.all_c()] * 4, 0.5, REL, seed=0xFFFFFFFFFFFFFFFF)
    data = json.loads(json.dumps(rep.to_json()))
    assert data["seed"] == 2**64 - 1 and data["engine"] == "exact"
