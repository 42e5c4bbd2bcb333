"""Zero-determinant strategies for repeated multiplayer social dilemmas."""

from .game_model import (
    ActionProfile,
    PayoffTable,
    StructureError,
    ValidationReport,
    coplayer_average,
    custom,
    parse_game,
    payoff_vectors,
    public_goods,
    snowdrift,
    validate_dilemma,
)
from .zd_core import (
    FeasibilityInterval,
    InfeasibleParameters,
    MemoryOneStrategy,
    PayoffRelation,
    ZDParameters,
    check_necessary,
    is_enforceable,
    is_enforceable_oracle,
    make_zd,
    phi_interval,
    profile_margins,
    zd_entries,
)
from .thresholds import (
    ThresholdResult,
    enforcement_threshold,
    equalizer_threshold,
    extortion_threshold,
    feasible_p0_range,
    generosity_threshold,
    pgg_nash_regions,
    pgg_threshold,
    rho_extrema,
)
from .engine import OpponentStrategy, SimulationReport, exact_distribution, exact_report, monte_carlo

__version__ = "0.1.0"
