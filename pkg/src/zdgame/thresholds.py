"""Threshold discount factors for extortionate, generous and equalizer strategies.

All general thresholds are built from the four extrema of the profile
margins (:func:`rho_extrema`). A feasible ``phi`` needs every lower bound
below every upper bound, which gives four pairwise conditions; their names
are used as ``binding_term`` labels:

``CC``  lower bound from key-cooperates profiles vs their upper bound
``CD``  lower bound from key-cooperates profiles vs key-defects upper bound
``DD``  lower bound from key-defects profiles vs their upper bound
``DC``  lower bound from key-defects profiles vs key-cooperates upper bound

The ``pgg_*`` and ``nsd_*`` helpers are the closed forms for equal weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .game_model import PayoffTable
from .zd_core import (
    ZERO_TOL,
    PayoffRelation,
    is_enforceable,
    phi_interval,
    weight_order_statistics,
)

TERMS = ("CC", "CD", "DD", "DC")


@dataclass(frozen=True)
class RhoExtrema:
    rho_C_max: float
    rho_C_min: float
    rho_D_max: float
    rho_D_min: float

    def astuple(self) -> tuple[float, float, float, float]:
        return (self.rho_C_max, self.rho_C_min, self.rho_D_max, self.rho_D_min)


@dataclass(frozen=True)
class ThresholdResult:
    delta_tau: float
    binding_term: str
    feasible: bool
    p0: float | None = None
    terms: dict = field(default_factory=dict, compare=False)
    # whether delta_tau itself admits a feasible phi (None when not tested)
    attained: bool | None = None


def rho_extrema(table: PayoffTable, relation: PayoffRelation) -> RhoExtrema:
    """Extrema of the margins over the number ``z`` of cooperating co-players.

    Maxima use the largest-weight sums, minima the smallest-weight sums.
    Ties go to the smaller ``z``; only the values are returned.
    """
    n, s, l = table.n, relation.s, relation.l
    stats = weight_order_statistics(relation)
    c_max = c_min = d_max = d_min = None
    for z in range(n):
        gap_c = table.b_ext(z + 1) - table.a[z]
        gap_d = table.b[z] - table.a_ext(z - 1)
        base_c = (1 - s) * (table.a[z] - l)
        base_d = (1 - s) * (l - table.b[z])
        hi_c = base_c + stats.w_tilde[n - z - 1] * gap_c
        lo_c = base_c + stats.w_hat[n - z - 1] * gap_c
        hi_d = base_d + stats.w_tilde[z] * gap_d
        lo_d = base_d + stats.w_hat[z] * gap_d
        c_max = hi_c if c_max is None or hi_c > c_max else c_max
        c_min = lo_c if c_min is None or lo_c < c_min else c_min
        d_max = hi_d if d_max is None or hi_d > d_max else d_max
        d_min = lo_d if d_min is None or lo_d < d_min else d_min
    return RhoExtrema(c_max, c_min, d_max, d_min)


def _snap(x: float) -> float:
    return 0.0 if abs(x) <= ZERO_TOL else x


def _pick(fractions: dict[str, float]) -> tuple[float, str]:
    best, term = 0.0, "none"
    for name, value in fractions.items():
        if value > best:
            best, term = value, name
    return best, term


def _attained(table: PayoffTable, rel: PayoffRelation, delta: float, p0: float) -> bool | None:
    if not 0 < delta < 1:
        return None
    return not phi_interval(table, rel, delta, p0).empty


def _fraction(num: float, den: float) -> float:
    # a vanishing numerator or denominator means the condition holds for any delta
    if num <= 0 or den <= 0:
        return 0.0
    return num / den


def extortion_threshold(table: PayoffTable, s: float, w: Sequence[float] | None = None) -> ThresholdResult:
    """Smallest discount factor for the extortionate relation ``l = b[0]`` (``p0 = 0``)."""
    w = tuple(w) if w is not None else (1 / (table.n - 1),) * (table.n - 1)
    rel = PayoffRelation(s, table.b[0], w)
    cm, cn, dm, dn = (_snap(x) for x in rho_extrema(table, rel).astuple())
    fractions = {"CC": _fraction(cm - cn, cm), "CD": _fraction(dm, dm + cn)}
    value, term = _pick(fractions)
    feasible = bool(is_enforceable(table, rel))
    attained = _attained(table, rel, value, 0.0) if feasible else None
    return ThresholdResult(value, term, feasible, 0.0, fractions, attained)


def generosity_threshold(table: PayoffTable, s: float, w: Sequence[float] | None = None) -> ThresholdResult:
    """Smallest discount factor for the generous relation ``l = a[n-1]`` (``p0 = 1``)."""
    w = tuple(w) if w is not None else (1 / (table.n - 1),) * (table.n - 1)
    rel = PayoffRelation(s, table.a[-1], w)
    cm, cn, dm, dn = (_snap(x) for x in rho_extrema(table, rel).astuple())
    fractions = {"DD": _fraction(dm - dn, dm), "DC": _fraction(cm, cm + dn)}
    value, term = _pick(fractions)
    feasible = bool(is_enforceable(table, rel))
    attained = _attained(table, rel, value, 1.0) if feasible else None
    return ThresholdResult(value, term, feasible, 1.0, fractions, attained)


def equalizer_threshold(table: PayoffTable, l: float, p0: float,
                        w: Sequence[float] | None = None, s: float = 0.0) -> ThresholdResult:
    """Threshold for an interior opening probability ``0 < p0 < 1``.

    Meant for ``s = 0``; other slopes are accepted when ``b[0] < l < a[n-1]``.
    Conditions whose spread vanishes impose nothing.
    """
    if not 0 < p0 < 1:
        raise ValueError("equalizer thresholds need 0 < p0 < 1")
    w = tuple(w) if w is not None else (1 / (table.n - 1),) * (table.n - 1)
    rel = PayoffRelation(s, l, w)
    report = is_enforceable(table, rel)
    # bound equality pins p0 to 0 or 1, which an interior p0 cannot meet
    feasible = bool(report) and report.p0_choices == "[0,1]"
    if s != 0 and not table.b[0] < l < table.a[-1]:
        feasible = False
    cm, cn, dm, dn = (_snap(x) for x in rho_extrema(table, rel).astuple())
    if cn <= 0 or dn <= 0:
        feasible = False
    fractions: dict[str, float] = {}
    if dm - dn > 0 and dn > 0:
        fractions["DD"] = 1 - dn / (dn + (dm - dn) * p0)
    if cn + dm > 0 and cn > 0:
        fractions["CD"] = 1 - cn / ((1 - p0) * (cn + dm))
    if cm - cn > 0 and cn > 0:
        fractions["CC"] = 1 - cn / ((1 - p0) * (cm - cn) + cn)
    if cm + dn > 0 and dn > 0:
        fractions["DC"] = 1 - dn / ((cm + dn) * p0)
    if not feasible:
        return ThresholdResult(math.nan, "none", False, p0, fractions)
    value, term = _pick(fractions)
    return ThresholdResult(value, term, True, p0, fractions, _attained(table, rel, value, p0))


def _constraints(ext: RhoExtrema) -> list[tuple[str, float, float, float]]:
    """Pairwise conditions as ``(name, g, f0, f1)``: ``eps * (f0 + f1 p0) <= g``.

    ``eps = 1 - delta``. Terms that cannot bind are left out.
    """
    cm, cn, dm, dn = (_snap(x) for x in ext.astuple())
    out = []
    if cn > 0:
        out.append(("CC", cn, cm, cn - cm))
        if dm > 0:
            out.append(("CD", cn, dm + cn, -(dm + cn)))
    if dn > 0:
        out.append(("DD", dn, dn, dm - dn))
        if cm > 0:
            out.append(("DC", dn, 0.0, cm + dn))
    return out


def _admissible_p0(ext: RhoExtrema) -> tuple[float, float] | None:
    cm, cn, dm, dn = (_snap(x) for x in ext.astuple())
    if cn < 0 or dn < 0:
        return None
    lo = 1.0 if cn == 0 else 0.0
    hi = 0.0 if dn == 0 else 1.0
    return (lo, hi) if lo <= hi else None


def threshold_at_p0(ext: RhoExtrema, p0: float) -> tuple[float, str]:
    """Smallest delta for a fixed ``p0`` (0 when any delta works)."""
    span = _admissible_p0(ext)
    if span is None or not span[0] <= p0 <= span[1]:
        return math.nan, "infeasible"
    eps_max, term = 1.0, "none"
    for name, g, f0, f1 in _constraints(ext):
        f = f0 + f1 * p0
        if f > 0 and g / f < eps_max:
            eps_max, term = g / f, name
    return max(0.0, 1.0 - eps_max), term


def feasible_p0_range(table: PayoffTable, relation: PayoffRelation, delta: float) -> tuple[float, float]:
    """Opening probabilities for which ``relation`` is enforceable at ``delta``.

    Returns ``(lo, hi)``; the set is empty when ``lo > hi``. For fixed delta
    every condition is linear in ``p0`` so the set is an interval.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    ext = rho_extrema(table, relation)
    span = _admissible_p0(ext)
    if span is None:
        return (1.0, 0.0)
    lo, hi = span
    eps = 1 - delta
    for _, g, f0, f1 in _constraints(ext):
        # eps * f0 + eps * f1 * p0 <= g
        beta, gamma = eps * f1, g - eps * f0
        if beta > 0:
            hi = min(hi, gamma / beta)
        elif beta < 0:
            lo = max(lo, gamma / beta)
        elif gamma < 0:
            return (1.0, 0.0)
    return (lo, hi)


def enforcement_threshold(table: PayoffTable, relation: PayoffRelation) -> ThresholdResult:
    """Smallest discount factor at which ``relation`` is enforceable, any ``p0``.

    Minimises the fixed-``p0`` threshold over the admissible opening
    probabilities. The minimum sits at an end of the range or where two
    conditions cross, so only those candidates are evaluated.
    """
    if not is_enforceable(table, relation):
        return ThresholdResult(math.nan, "none", False)
    ext = rho_extrema(table, relation)
    span = _admissible_p0(ext)
    if span is None:
        return ThresholdResult(math.nan, "none", False)
    lo, hi = span
    candidates = {lo, hi}
    cons = _constraints(ext)
    for i, (_, g1, a1, b1) in enumerate(cons):
        for _, g2, a2, b2 in cons[i + 1:]:
            # g1 (a2 + b2 p) = g2 (a1 + b1 p)
            den = g1 * b2 - g2 * b1
            if den != 0:
                p = (g2 * a1 - g1 * a2) / den
                if lo <= p <= hi:
                    candidates.add(p)
    best = (math.inf, "none", lo)
    for p in sorted(candidates):
        value, term = threshold_at_p0(ext, p)
        if value < best[0]:
            best = (value, term, p)
    return ThresholdResult(best[0], best[1], True, best[2],
                           attained=_attained(table, relation, best[0], best[2]))


# Closed forms for equal weights -------------------------------------------


def pgg_slope_bound(n: int, r: float) -> float:
    """Smallest enforceable extortion/generosity slope in the public goods game."""
    if not 1 < r < n:
        raise ValueError("need 1 < r < n")
    return 1 - n / (r * (n - 1))


def pgg_threshold(n: int, r: float, s: float) -> float:
    """Threshold shared by extortionate and generous strategies in the public goods game."""
    if s < pgg_slope_bound(n, r) - ZERO_TOL:
        raise ValueError(f"slope {s} below the enforceable bound {pgg_slope_bound(n, r)}")
    value = (1 - (1 - s) * (r - r / n)) / (1 - (1 - s) * (1 - r / n))
    return max(0.0, value) if abs(value) > ZERO_TOL else 0.0


@dataclass(frozen=True)
class NSDSlopeBounds:
    extortion_min_slope: float
    generous_unrestricted: bool = True


def nsd_slope_bounds(n: int, benefit: float, cost: float) -> NSDSlopeBounds:
    if not benefit > cost > 0:
        raise ValueError("need benefit > cost > 0")
    return NSDSlopeBounds(1 - cost / (benefit * (n - 1)))


def nsd_extortion_threshold(n: int, benefit: float, cost: float, s: float) -> float:
    """Snowdrift threshold for extortion (and for generosity at high slopes)."""
    if s < nsd_slope_bounds(n, benefit, cost).extortion_min_slope - ZERO_TOL:
        raise ValueError("slope below the snowdrift extortion bound")
    b, c = benefit, cost
    return ((1 - s) * (c / n - c) + c) / ((1 - s) * (b - c) + c)


def nsd_generous_threshold(n: int, benefit: float, cost: float, s: float) -> float:
    if not 0 < s < 1:
        raise ValueError("generous slopes must lie in (0, 1)")
    b, c = benefit, cost
    if s <= nsd_slope_bounds(n, b, c).extortion_min_slope:
        return max((n - 1) / n, ((1 - s) * b - c / (n - 1)) / ((1 - s) * (b - c / n)))
    return ((1 - s) * (c / n - c) + c) / ((1 - s) * (b - c) + c)


@dataclass(frozen=True)
class NashRegions:
    n: int
    r: float
    slope_bound: float
    crossover: float
    extortion_interval: tuple[float, float]   # [slope_bound, crossover]
    generous_interval: tuple[float, float]    # [crossover, 1)
    generous_min_delta: float
    table: list[tuple[float, float, str]]     # (s, delta_tau, region)


def pgg_nash_regions(n: int, r: float, slopes: Sequence[float] | None = None) -> NashRegions:
    """Slopes at which symmetric ZD play is a Nash equilibrium in the public goods game.

    Extortion is an equilibrium below the crossover ``(n-2)/(n-1)``,
    generosity above it, both at it.
    """
    bound = pgg_slope_bound(n, r)
    cross = (n - 2) / (n - 1)
    min_delta = (n - r) * (n - 1) / ((n - 1) ** 2 + (r - 1))
    if slopes is None:
        slopes = np.linspace(max(bound, 0.0), 1.0, 21)[:-1]
    rows = []
    for s in slopes:
        if s < bound - ZERO_TOL or s >= 1:
            continue
        region = "both" if abs(s - cross) <= ZERO_TOL else "extortion" if s < cross else "generous"
        rows.append((float(s), pgg_threshold(n, r, s), region))
    return NashRegions(n, r, bound, cross, (bound, cross), (cross, 1.0), min_delta, rows)
