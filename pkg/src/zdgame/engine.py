"""Evaluation of discounted repeated play.

Two independent routes:

* :func:`exact_distribution` solves for the discounted mean distribution over
  action profiles when every player is memory-one.
* :func:`monte_carlo` plays the game out with sampled actions and supports
  opponents that look at the whole history.

Players randomise independently within a round. Strategies are indexed by
the global profile mask (bit ``i`` set when player ``i`` cooperates), so an
opponent's ``p`` vector is read from the same masks as the key player's.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .game_model import PayoffTable, payoff_vectors
from .zd_core import MemoryOneStrategy, PayoffRelation, enforced_relation_residual

MAX_EXACT_PLAYERS = 12
TRUNCATION = 1e-12
CHUNK_RUNS = 10_000

# history has shape (rounds_so_far, runs) of profile masks; returns P(cooperate)
HistoryFn = Callable[[np.ndarray, int, int], np.ndarray]


@dataclass(frozen=True)
class DiscountedDistribution:
    v: np.ndarray
    delta: float


@dataclass(frozen=True, eq=False)
class OpponentStrategy:
    """A co-player: all-C, all-D, random(q), memory-one, or a history rule."""

    kind: str
    p: np.ndarray | None = None
    p0: float = 0.0
    q: float | None = None
    rule: HistoryFn | None = None
    name: str = ""

    @classmethod
    def all_c(cls) -> "OpponentStrategy":
        return cls("all-C", name="allc")

    @classmethod
    def all_d(cls) -> "OpponentStrategy":
        return cls("all-D", name="alld")

    @classmethod
    def random(cls, q: float) -> "OpponentStrategy":
        if not 0 <= q <= 1:
            raise ValueError("q must lie in [0, 1]")
        return cls("random", q=float(q), name=f"random:{q}")

    @classmethod
    def memory_one(cls, p: Sequence[float], p0: float) -> "OpponentStrategy":
        strat = MemoryOneStrategy(np.asarray(p, dtype=float), float(p0))
        return cls("memory-one", p=strat.p, p0=strat.p0, name="memory-one")

    @classmethod
    def history_rule(cls, rule: HistoryFn, name: str) -> "OpponentStrategy":
        return cls("history-rule", rule=rule, name=name)

    def as_memory_one(self, n: int) -> MemoryOneStrategy | None:
        if self.kind == "all-C":
            return MemoryOneStrategy.constant(n, 1.0)
        if self.kind == "all-D":
            return MemoryOneStrategy.constant(n, 0.0)
        if self.kind == "random":
            return MemoryOneStrategy.constant(n, self.q)
        if self.kind == "memory-one":
            if len(self.p) != 1 << n:
                raise ValueError(f"memory-one vector has length {len(self.p)}, need {1 << n}")
            return MemoryOneStrategy(self.p, self.p0)
        return None


Strategy = Union[MemoryOneStrategy, OpponentStrategy]


def majority_last3(history: np.ndarray, player: int, n: int) -> np.ndarray:
    """Cooperate iff at least half of the others' moves over the last three rounds were C."""
    runs = history.shape[1]
    if history.shape[0] == 0:
        return np.ones(runs)
    recent = history[-3:]
    others = [j for j in range(n) if j != player]
    coop = sum(((recent >> j) & 1).sum(axis=0) for j in others)
    total = recent.shape[0] * len(others)
    return (2 * coop >= total).astype(float)


def grim_trigger(history: np.ndarray, player: int, n: int) -> np.ndarray:
    """Cooperate until any other player has defected once."""
    runs = history.shape[1]
    if history.shape[0] == 0:
        return np.ones(runs)
    others = sum(1 << j for j in range(n) if j != player)
    clean = np.all((history & others) == others, axis=0)
    return clean.astype(float)


HISTORY_RULES = {"majority3": majority_last3, "grim": grim_trigger}


def relabel(strategy: MemoryOneStrategy, player: int) -> MemoryOneStrategy:
    """Play ``strategy`` (written for player 0) as ``player``.

    Bits 0 and ``player`` are swapped when reading the profile, so the weight
    the original strategy gives to co-player ``player`` now applies to player 0.
    """
    if player == 0:
        return strategy
    masks = np.arange(len(strategy.p))
    b0 = masks & 1
    bk = (masks >> player) & 1
    swapped = masks & ~(1 | (1 << player)) | (bk) | (b0 << player)
    return MemoryOneStrategy(strategy.p[swapped], strategy.p0)


def _as_memory_one(strategies: Sequence[Strategy], n: int) -> list[MemoryOneStrategy]:
    out = []
    for i, strat in enumerate(strategies):
        if isinstance(strat, OpponentStrategy):
            m1 = strat.as_memory_one(n)
            if m1 is None:
                raise ValueError(f"player {i} ({strat.name}) is not memory-one; use monte_carlo")
            strat = m1
        if len(strat.p) != 1 << n:
            raise ValueError(f"player {i} strategy has length {len(strat.p)}, need {1 << n}")
        out.append(strat)
    return out


def _profile_bits(n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    return ((masks[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)


def transition_matrix(strategies: Sequence[MemoryOneStrategy]) -> np.ndarray:
    """Row-stochastic ``M[old, new]`` for independent memory-one players."""
    n = len(strategies)
    bits = _profile_bits(n)
    M = np.ones((1 << n, 1 << n))
    for i, strat in enumerate(strategies):
        q = strat.p[:, None]
        M *= np.where(bits[None, :, i], q, 1 - q)
    return M


def initial_distribution(strategies: Sequence[MemoryOneStrategy]) -> np.ndarray:
    n = len(strategies)
    bits = _profile_bits(n)
    v0 = np.ones(1 << n)
    for i, strat in enumerate(strategies):
        v0 *= np.where(bits[:, i], strat.p0, 1 - strat.p0)
    return v0


def exact_distribution(strategies: Sequence[Strategy], delta: float) -> DiscountedDistribution:
    """Discounted mean distribution ``(1 - delta) sum_t delta^t v(t)``.

    Solves ``(I - delta M^T) x = v(0)`` directly; the result is checked to
    sum to one but never renormalised.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    n = len(strategies)
    if n > MAX_EXACT_PLAYERS:
        raise ValueError(f"exact engine supports n <= {MAX_EXACT_PLAYERS}")
    m1 = _as_memory_one(strategies, n)
    M = transition_matrix(m1)
    v0 = initial_distribution(m1)
    A = np.eye(1 << n) - delta * M.T
    try:
        x = np.linalg.solve(A, v0)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - I - dM^T is invertible for d < 1
        raise RuntimeError("discounted system unexpectedly singular") from exc
    v = (1 - delta) * x
    if abs(v.sum() - 1) > 1e-10:  # pragma: no cover
        raise RuntimeError(f"mean distribution sums to {v.sum()!r}")
    return DiscountedDistribution(v, delta)


def discounted_payoffs(dist: DiscountedDistribution, table: PayoffTable) -> np.ndarray:
    """Average discounted payoff of every player."""
    G = payoff_vectors(table)
    if G.shape[1] != len(dist.v):
        raise ValueError("distribution does not match the game size")
    return G @ dist.v


def repeat_vector(n: int) -> np.ndarray:
    return (np.arange(1 << n) & 1).astype(float)


def verify_akin(strategy: MemoryOneStrategy, dist: DiscountedDistribution) -> float:
    """Residual of ``(delta p - p_rep) . v + (1 - delta) p0`` for the key player."""
    d = dist.delta
    rep = repeat_vector(strategy.n)
    return float(np.dot(d * strategy.p - rep, dist.v) + (1 - d) * strategy.p0)


@dataclass
class SimulationReport:
    payoff_mean: list[float]
    payoff_stderr: list[float]
    runs: int
    seed: int
    residual: float
    akin_residual: float
    residual_stderr: float = 0.0
    akin_stderr: float = 0.0
    engine: str = "mc"
    mode: str = "discounted"
    delta: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def exact_report(table: PayoffTable, strategies: Sequence[Strategy], delta: float,
                 relation: PayoffRelation | None = None, seed: int = 0) -> SimulationReport:
    dist = exact_distribution(strategies, delta)
    pay = discounted_payoffs(dist, table)
    key = _as_memory_one(strategies[:1], table.n)[0]
    residual = enforced_relation_residual(pay, relation) if relation is not None else math.nan
    return SimulationReport(
        payoff_mean=[float(x) for x in pay],
        payoff_stderr=[0.0] * table.n,
        runs=1,
        seed=seed,
        residual=float(residual),
        akin_residual=verify_akin(key, dist),
        engine="exact",
        delta=delta,
    )


def _chunk(G: np.ndarray, strategies: Sequence[Strategy], delta: float, runs: int,
           rng: np.random.Generator, geometric: bool,
           key: MemoryOneStrategy | None) -> tuple[np.ndarray, np.ndarray]:
    n = G.shape[0]
    probs: list = []
    rules: list = []
    for strat in strategies:
        m1 = strat if isinstance(strat, MemoryOneStrategy) else strat.as_memory_one(n)
        probs.append(m1)
        rules.append(None if m1 is not None else strat.rule)
    keep_history = any(r is not None for r in rules)
    # preallocated history (grown by doubling); rules see rows [0, t)
    hist_dtype = np.uint16 if n <= 16 else np.int64
    cap = 64 if geometric else int(math.log(TRUNCATION) / math.log(delta)) + 2
    history = np.empty((cap if keep_history else 0, runs), dtype=hist_dtype)

    totals = np.zeros((n, runs))
    akin = np.zeros(runs)
    rep = repeat_vector(n)
    alive = np.ones(runs, dtype=bool)
    masks = np.zeros(runs, dtype=np.int64)
    weight = 1.0
    t = 0
    while True:
        u = rng.random((n, runs))
        new = np.zeros(runs, dtype=np.int64)
        for i in range(n):
            if probs[i] is not None:
                q = np.full(runs, probs[i].p0) if t == 0 else probs[i].p[masks]
            else:
                q = rules[i](history[:t], i, n)
            new |= (u[i] < q).astype(np.int64) << i
        masks = new
        if keep_history:
            if t == history.shape[0]:
                history = np.concatenate([history, np.empty_like(history)], axis=0)
            history[t] = masks
        if geometric:
            totals += G[:, masks] * alive
            if key is not None:
                akin += (delta * key.p[masks] - rep[masks]) * alive
            alive &= rng.random(runs) < delta
            if not alive.any():
                break
        else:
            totals += weight * G[:, masks]
            if key is not None:
                akin += weight * (delta * key.p[masks] - rep[masks])
            weight *= delta
            if weight < TRUNCATION:
                break
        t += 1
    return (1 - delta) * totals, (1 - delta) * akin


def monte_carlo(table: PayoffTable, strategies: Sequence[Strategy], delta: float, runs: int,
                seed: int, relation: PayoffRelation | None = None, geometric: bool = False,
                workers: int = 1) -> SimulationReport:
    """Sampled discounted payoffs.

    By default each run weights round ``t`` by ``delta**t`` and stops once the
    weight drops below ``1e-12``. With ``geometric=True`` every round is
    followed by another one with probability ``delta`` and payoffs are summed
    unweighted. Both estimate the discounted payoff without bias (up to the
    truncation).

    Runs are split into fixed chunks, each with its own counter-based random
    stream derived from ``seed``, so results do not depend on ``workers``.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    n = table.n
    if len(strategies) != n:
        raise ValueError(f"need {n} strategies, got {len(strategies)}")
    G = payoff_vectors(table)
    key = strategies[0] if isinstance(strategies[0], MemoryOneStrategy) else strategies[0].as_memory_one(n)

    sizes = [CHUNK_RUNS] * (runs // CHUNK_RUNS)
    if runs % CHUNK_RUNS:
        sizes.append(runs % CHUNK_RUNS)

    def work(idx: int):
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(idx,))
        rng = np.random.Generator(np.random.Philox(ss))
        return _chunk(G, strategies, delta, sizes[idx], rng, geometric, key)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(work, range(len(sizes))))
    else:
        parts = [work(i) for i in range(len(sizes))]
    payoffs = np.concatenate([p for p, _ in parts], axis=1)
    akin = np.concatenate([a for _, a in parts])
    if key is not None:
        akin = akin + (1 - delta) * key.p0

    mean = payoffs.mean(axis=1)
    stderr = payoffs.std(axis=1, ddof=1) / math.sqrt(runs) if runs > 1 else np.zeros(n)
    if relation is not None:
        per_run = payoffs[1:].T @ np.asarray(relation.w) - relation.s * payoffs[0] \
            - (1 - relation.s) * relation.l
        residual = float(per_run.mean())
        residual_se = float(per_run.std(ddof=1) / math.sqrt(runs)) if runs > 1 else 0.0
    else:
        residual, residual_se = math.nan, math.nan
    akin_se = float(akin.std(ddof=1) / math.sqrt(runs)) if runs > 1 else 0.0
    return SimulationReport(
        payoff_mean=[float(x) for x in mean],
        payoff_stderr=[float(x) for x in stderr],
        runs=runs,
        seed=seed,
        residual=residual,
        akin_residual=float(akin.mean()) if key is not None else math.nan,
        residual_stderr=residual_se,
        akin_stderr=akin_se,
        engine="mc",
        mode="geometric" if geometric else "discounted",
        delta=delta,
    )
