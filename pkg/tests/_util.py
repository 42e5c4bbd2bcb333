"""Shared helpers for the test suite: random dilemma tables and brute-force oracles."""

from __future__ import annotations

import itertools

import numpy as np

from zdgame.game_model import PayoffTable, payoff_vectors


def random_dilemma(rng: np.random.Generator, n: int) -> PayoffTable:
    """Random table satisfying the three dilemma axioms by construction."""
    a = np.cumsum(rng.uniform(0.0, 1.0, n)) - rng.uniform(0, 2)
    b = np.empty(n)
    b[0] = a[-1] - rng.uniform(0.05, 1.5)
    for z in range(n - 1):
        b[z + 1] = max(b[z], a[z]) + rng.uniform(0.05, 1.0)
    return PayoffTable(n, tuple(a), tuple(b))


def random_weights(rng: np.random.Generator, n: int) -> tuple[float, ...]:
    w = rng.dirichlet(np.ones(n - 1))
    w[-1] = 1.0 - w[:-1].sum()
    return tuple(float(x) for x in w)


def direct_zd(table: PayoffTable, s, l, w, phi, delta, p0) -> np.ndarray:
    """ZD entries straight from the full payoff vectors of every player."""
    g = payoff_vectors(table)
    rep = (np.arange(1 << table.n) & 1).astype(float)
    others = sum(wj * g[j] for j, wj in enumerate(w, start=1))
    rhs = phi * (s * g[0] - others + (1 - s) * l)
    return (rep - (1 - delta) * p0 + rhs) / delta


def subset_extrema(w) -> tuple[list[float], list[float]]:
    """Min and max subset sums of each size, by enumeration."""
    lo, hi = [], []
    for k in range(len(w) + 1):
        sums = [sum(c) for c in itertools.combinations(w, k)]
        lo.append(min(sums))
        hi.append(max(sums))
    return lo, hi


def series_distribution(strategies, delta: float, horizon: int = 400) -> np.ndarray:
    """Truncated power series (1-delta) sum_t delta^t v(t), stepped profile by profile."""
    n = len(strategies)
    size = 1 << n
    # initial round
    v = np.zeros(size)
    for mask in range(size):
        prob = 1.0
        for i, st in enumerate(strategies):
            prob *= st.p0 if mask >> i & 1 else 1 - st.p0
        v[mask] = prob
    total = np.zeros(size)
    weight = 1 - delta
    for _ in range(horizon + 1):
        total += weight * v
        nxt = np.zeros(size)
        for old in range(size):
            if v[old] == 0:
                continue
            for new in range(size):
                prob = 1.0
                for i, st in enumerate(strategies):
                    q = st.p[old]
                    prob *= q if new >> i & 1 else 1 - q
                nxt[new] += v[old] * prob
        v = nxt
        weight *= delta
    return total
