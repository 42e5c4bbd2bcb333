"""Zero-determinant strategies for repeated dilemmas with discounting.

The key player (index 0) chooses a slope ``s``, a baseline ``l`` and
co-player weights ``w``. A ZD strategy with these parameters makes

    sum_j w_j * pi_j = s * pi_0 + (1 - s) * l

hold for the discounted payoffs, whatever the co-players do, provided all of
its conditional cooperation probabilities lie in ``[0, 1]``.

Every profile contributes one constraint on the scaling factor ``phi``.
Writing ``rho(sigma)`` for the margin of profile ``sigma`` (see
:func:`profile_margins`), the entry is a probability iff

    key cooperates:  (1-d)(1-p0) <= phi * rho <= 1 - (1-d) p0
    key defects:     (1-d) p0    <= phi * rho <= d + (1-d) p0

with ``d`` the discount factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .game_model import PayoffTable, StructureError, popcount, validate_dilemma

WEIGHT_TOL = 1e-12
ENTRY_TOL = 1e-12
# margins and l-bound comparisons closer than this to zero count as equality
ZERO_TOL = 1e-12
ORACLE_GRID = 1000


class InfeasibleParameters(ValueError):
    """ZD parameters that do not give a valid memory-one strategy."""

    def __init__(self, message: str, mask: int | None = None, value: float | None = None):
        super().__init__(message)
        self.mask = mask
        self.value = value


@dataclass(frozen=True)
class PayoffRelation:
    """Target relation ``pi_-i = s pi_i + (1 - s) l`` with co-player weights ``w``."""

    s: float
    l: float
    w: tuple[float, ...]
    allow_negative_weights: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(float(x) for x in self.w))
        if not self.w:
            raise StructureError("weight vector is empty")
        if abs(math.fsum(self.w) - 1.0) > WEIGHT_TOL:
            raise StructureError(f"weights must sum to 1, got {math.fsum(self.w)!r}")
        if not self.allow_negative_weights and min(self.w) < 0:
            raise StructureError("negative weights need allow_negative_weights=True")

    @classmethod
    def equal(cls, s: float, l: float, n: int) -> "PayoffRelation":
        return cls(s, l, (1.0 / (n - 1),) * (n - 1))

    @property
    def n(self) -> int:
        return len(self.w) + 1

    def with_weights(self, w: Sequence[float]) -> "PayoffRelation":
        return PayoffRelation(self.s, self.l, tuple(w), self.allow_negative_weights)


@dataclass(frozen=True)
class WeightOrderStatistics:
    w_hat: tuple[float, ...]    # sum of the z smallest weights
    w_tilde: tuple[float, ...]  # sum of the z largest weights


@dataclass(frozen=True, eq=False)
class MemoryOneStrategy:
    """Cooperation probabilities indexed by profile mask, plus the opening move."""

    p: np.ndarray
    p0: float

    def __post_init__(self) -> None:
        p = np.array(self.p, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "p", p)
        n = int(round(math.log2(len(p)))) if len(p) else 0
        if len(p) < 4 or 1 << n != len(p):
            raise StructureError(f"strategy length {len(p)} is not 2**n with n >= 2")
        if np.any(p < 0) or np.any(p > 1) or not 0 <= self.p0 <= 1:
            raise ValueError("strategy probabilities must lie in [0, 1]")

    @property
    def n(self) -> int:
        return len(self.p).bit_length() - 1

    def to_json(self) -> dict:
        return {"p": [float(x) for x in self.p], "p0": float(self.p0)}

    @classmethod
    def constant(cls, n: int, q: float) -> "MemoryOneStrategy":
        return cls(np.full(1 << n, float(q)), float(q))


@dataclass(frozen=True)
class ZDParameters:
    relation: PayoffRelation
    phi: float
    delta: float
    p0: float


@dataclass(frozen=True)
class FeasibilityInterval:
    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    @property
    def midpoint(self) -> float:
        if self.empty:
            raise InfeasibleParameters("empty phi interval has no midpoint")
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, phi: float) -> bool:
        return self.lo <= phi <= self.hi


EMPTY = FeasibilityInterval(math.inf, -math.inf)


def weight_order_statistics(relation: PayoffRelation | Sequence[float]) -> WeightOrderStatistics:
    w = relation.w if isinstance(relation, PayoffRelation) else tuple(relation)
    asc = sorted(w)
    desc = asc[::-1]
    w_hat = tuple(math.fsum(asc[:z]) for z in range(len(w) + 1))
    w_tilde = tuple(math.fsum(desc[:z]) for z in range(len(w) + 1))
    return WeightOrderStatistics(w_hat, w_tilde)


def _check_shapes(table: PayoffTable, relation: PayoffRelation) -> None:
    if relation.n != table.n:
        raise StructureError(f"relation has {len(relation.w)} weights, game needs {table.n - 1}")


def profile_margins(table: PayoffTable, relation: PayoffRelation) -> np.ndarray:
    """Margin ``rho(sigma)`` of every profile, indexed by mask.

    For profiles where the key cooperates the entry is
    ``delta p = 1 - phi * rho - (1-delta) p0``; where the key defects it is
    ``delta p = phi * rho - (1-delta) p0``. Co-player ``j`` is bit ``j``.
    """
    _check_shapes(table, relation)
    n, s, l, w = table.n, relation.s, relation.l, relation.w
    rho = np.empty(1 << n)
    for mask in range(1 << n):
        k = popcount(mask)  # cooperators including the key
        gap = table.b_ext(k) - table.a_ext(k - 1)
        if mask & 1:
            defect_w = sum(w[j - 1] for j in range(1, n) if not mask >> j & 1)
            rho[mask] = (1 - s) * (table.a[k - 1] - l) + defect_w * gap
        else:
            coop_w = sum(w[j - 1] for j in range(1, n) if mask >> j & 1)
            rho[mask] = (1 - s) * (l - table.b[k]) + coop_w * gap
    return rho


def zd_entries(table: PayoffTable, params: ZDParameters, check: bool = True) -> MemoryOneStrategy:
    """Memory-one ZD strategy for ``params``.

    Entries are not clamped. With ``check`` (the default) any entry outside
    ``[0, 1]`` by more than ``1e-12`` raises :class:`InfeasibleParameters`
    pointing at the worst profile; tiny overshoots are snapped to the bound.
    """
    report = validate_dilemma(table)
    if not report:
        raise StructureError(f"not a social dilemma: {report.message}")
    if params.phi == 0:
        raise InfeasibleParameters("phi must be non-zero")
    d, p0, phi = params.delta, params.p0, params.phi
    if not 0 < d < 1:
        raise ValueError("delta must lie in (0, 1)")
    rho = profile_margins(table, params.relation)
    rep = np.arange(1 << table.n) & 1
    dp = np.where(rep == 1, 1 - phi * rho, phi * rho) - (1 - d) * p0
    p = dp / d
    if check:
        viol = np.maximum(-p, p - 1)
        worst = int(np.argmax(viol))
        if viol[worst] > ENTRY_TOL:
            raise InfeasibleParameters(
                f"entry for profile {worst} is {p[worst]!r}, outside [0, 1]",
                mask=worst, value=float(p[worst]),
            )
        p = np.clip(p, 0.0, 1.0)
        return MemoryOneStrategy(p, p0)
    # unchecked: bypass the range validation of MemoryOneStrategy
    strat = object.__new__(MemoryOneStrategy)
    object.__setattr__(strat, "p", p)
    object.__setattr__(strat, "p0", p0)
    return strat


def _interval_from_margins(rho: np.ndarray, delta: float, p0: float) -> FeasibilityInterval:
    key_c = (np.arange(len(rho)) & 1) == 1
    eps = 1 - delta
    lower = np.where(key_c, eps * (1 - p0), eps * p0)
    upper = np.where(key_c, 1 - eps * p0, delta + eps * p0)
    zero = np.abs(rho) <= ZERO_TOL
    if np.any(rho < -ZERO_TOL) or np.any(zero & (lower > 0)):
        return EMPTY
    pos = ~zero
    lo = float(np.max(lower[pos] / rho[pos])) if pos.any() else 0.0
    hi = float(np.min(upper[pos] / rho[pos])) if pos.any() else math.inf
    if lo > hi or hi <= 0:
        return EMPTY
    return FeasibilityInterval(lo, hi)


def phi_interval(table: PayoffTable, relation: PayoffRelation, delta: float,
                 p0: float) -> FeasibilityInterval:
    """Range of ``phi > 0`` for which every entry is a probability.

    Infeasibility is returned as an empty interval, never raised.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if not 0 <= p0 <= 1:
        raise ValueError("p0 must lie in [0, 1]")
    return _interval_from_margins(profile_margins(table, relation), delta, p0)


@dataclass(frozen=True)
class NecessaryReport:
    ok: bool
    violated: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_necessary(relation: PayoffRelation, table: PayoffTable) -> NecessaryReport:
    """Quick screen: ``-min w < s < 1`` and ``b0 <= l <= a_{n-1}``."""
    _check_shapes(table, relation)
    s, l = relation.s, relation.l
    if not s < 1:
        return NecessaryReport(False, "s < 1 required")
    if not -min(relation.w) < s:
        return NecessaryReport(False, f"s > -min(w) = {-min(relation.w):.12g} required")
    if l < table.b[0]:
        return NecessaryReport(False, f"l >= b[0] = {table.b[0]:.12g} required")
    if l > table.a[-1]:
        return NecessaryReport(False, f"l <= a[n-1] = {table.a[-1]:.12g} required")
    if l == table.b[0] == table.a[-1]:
        return NecessaryReport(False, "at least one l-inequality must be strict")
    return NecessaryReport(True)


@dataclass(frozen=True)
class EnforceabilityReport:
    enforceable: bool
    lower: float        # max over z of the lower l-bounds
    upper: float        # min over z of the upper l-bounds
    lower_z: int | None
    upper_z: int | None
    binding: str        # 'none', 'lower', 'upper' or 'both'
    p0_choices: str     # '[0,1]', '0' or '1'
    reason: str = ""

    def __bool__(self) -> bool:
        return self.enforceable


def l_bounds(table: PayoffTable, relation: PayoffRelation) -> tuple[float, int, float, int]:
    """Lower and upper baseline bounds (and the z attaining them) for ``s < 1``."""
    n, s = table.n, relation.s
    w_hat = weight_order_statistics(relation).w_hat
    lower, lower_z = -math.inf, -1
    upper, upper_z = math.inf, -1
    for z in range(n):
        lo = table.b[z] - w_hat[z] * (table.b[z] - table.a_ext(z - 1)) / (1 - s)
        up = table.a[z] + w_hat[n - z - 1] * (table.b_ext(z + 1) - table.a[z]) / (1 - s)
        if lo > lower:
            lower, lower_z = lo, z
        if up < upper:
            upper, upper_z = up, z
    return lower, lower_z, upper, upper_z


def is_enforceable(table: PayoffTable, relation: PayoffRelation) -> EnforceabilityReport:
    """Decide whether ``(s, l, w)`` is enforceable for some discount factor.

    Equality with the lower bound forces ``p0 = 0`` and equality with the
    upper bound forces ``p0 = 1``; ``p0_choices`` records what is left.
    """
    _check_shapes(table, relation)
    report = validate_dilemma(table)
    if not report:
        raise StructureError(f"not a social dilemma: {report.message}")
    n, s, l = table.n, relation.s, relation.l
    if not s < 1:
        return EnforceabilityReport(False, math.nan, math.nan, None, None, "none", "",
                                    "s < 1 required")
    if not s > -1 / (n - 1):
        return EnforceabilityReport(False, math.nan, math.nan, None, None, "none", "",
                                    f"s > -1/(n-1) = {-1 / (n - 1):.12g} required")
    lower, lower_z, upper, upper_z = l_bounds(table, relation)
    on_lower = abs(l - lower) <= ZERO_TOL
    on_upper = abs(l - upper) <= ZERO_TOL
    binding = {(False, False): "none", (True, False): "lower",
               (False, True): "upper", (True, True): "both"}[(on_lower, on_upper)]
    args = (lower, upper, lower_z, upper_z, binding)
    if l < lower and not on_lower:
        return EnforceabilityReport(False, *args, "",
                                    f"l below lower bound {lower:.12g} (z={lower_z})")
    if l > upper and not on_upper:
        return EnforceabilityReport(False, *args, "",
                                    f"l above upper bound {upper:.12g} (z={upper_z})")
    if on_lower and on_upper:
        return EnforceabilityReport(False, *args, "",
                                    "both l-bounds met with equality; one must be strict")
    p0_choices = "0" if on_lower else "1" if on_upper else "[0,1]"
    return EnforceabilityReport(True, *args, p0_choices)


def _margins_by_side(table: PayoffTable, relation: PayoffRelation) -> tuple[np.ndarray, np.ndarray]:
    rho = profile_margins(table, relation)
    key_c = (np.arange(len(rho)) & 1) == 1
    return rho[key_c], rho[~key_c]


def is_enforceable_oracle(table: PayoffTable, relation: PayoffRelation, delta: float,
                          p0_values: Sequence[float] | None = None,
                          grid: int = ORACLE_GRID) -> bool:
    """Brute-force enforceability at a fixed discount factor.

    Scans ``p0`` over ``{0, 1/grid, ..., 1}`` (or ``p0_values``), building the
    phi range from every single profile constraint; true iff some range is
    non-empty.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if p0_values is None:
        p0 = np.linspace(0.0, 1.0, grid + 1)
        p0[0], p0[-1] = 0.0, 1.0
    else:
        p0 = np.asarray(p0_values, dtype=float)
    rc, rd = _margins_by_side(table, relation)
    if np.any(rc < -ZERO_TOL) or np.any(rd < -ZERO_TOL):
        return False
    eps = 1 - delta
    ok = np.ones_like(p0, dtype=bool)
    lo = np.zeros_like(p0)
    hi = np.full_like(p0, np.inf)
    # (margins, lower bound, upper bound) for each side, as functions of p0
    sides = ((rc, eps * (1 - p0), 1 - eps * p0), (rd, eps * p0, delta + eps * p0))
    for rho, lower, upper in sides:
        zero = np.abs(rho) <= ZERO_TOL
        if zero.any():
            ok &= lower <= 0
        pos = rho[~zero]
        if pos.size:
            lo = np.maximum(lo, np.max(lower[:, None] / pos[None, :], axis=1))
            hi = np.minimum(hi, np.min(upper[:, None] / pos[None, :], axis=1))
    return bool(np.any(ok & (lo <= hi)))


def enforced_relation_residual(payoffs: Sequence[float], relation: PayoffRelation) -> float:
    """``sum_j w_j pi_j - s pi_0 - (1 - s) l`` for the key player 0."""
    payoffs = np.asarray(payoffs, dtype=float)
    if len(payoffs) != relation.n:
        raise ValueError(f"expected {relation.n} payoffs, got {len(payoffs)}")
    others = float(np.dot(relation.w, payoffs[1:]))
    return others - relation.s * payoffs[0] - (1 - relation.s) * relation.l


def make_zd(table: PayoffTable, relation: PayoffRelation, delta: float,
            p0: float | None = None, phi: float | None = None) -> tuple[ZDParameters, MemoryOneStrategy]:
    """Pick concrete ``p0``/``phi`` and build the strategy.

    ``p0`` defaults to the middle of the admissible range at ``delta`` and
    ``phi`` to the middle of the resulting interval.
    """
    from .thresholds import feasible_p0_range

    if p0 is None:
        lo, hi = feasible_p0_range(table, relation, delta)
        if lo > hi:
            raise InfeasibleParameters(f"relation not enforceable at delta={delta}")
        p0 = 0.5 * (lo + hi)
    if phi is None:
        interval = phi_interval(table, relation, delta, p0)
        if interval.empty:
            raise InfeasibleParameters(f"no feasible phi at delta={delta}, p0={p0}")
        phi = interval.midpoint
    params = ZDParameters(relation, phi, delta, p0)
    return params, zd_entries(table, params)
