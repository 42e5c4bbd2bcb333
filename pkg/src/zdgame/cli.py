"""Command-line interface: ``zdgame check|threshold|nash|simulate|figures``.

Exit codes: 0 success/enforceable, 1 infeasible, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from . import engine
from .game_model import PayoffTable, StructureError, parse_game, public_goods, snowdrift, validate_dilemma
from .thresholds import (
    enforcement_threshold,
    equalizer_threshold,
    extortion_threshold,
    generosity_threshold,
    nsd_extortion_threshold,
    nsd_generous_threshold,
    nsd_slope_bounds,
    pgg_nash_regions,
    pgg_slope_bound,
    pgg_threshold,
)
from .zd_core import (
    InfeasibleParameters,
    PayoffRelation,
    check_necessary,
    is_enforceable,
    is_enforceable_oracle,
    make_zd,
    phi_interval,
)

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID = 0, 1, 2
ORACLE_STEP = 0.002
SWEEP_VARIABLES = ("s", "delta", "l", "p0", "n", "r")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise UsageError(f"cannot sweep {self.variable!r}; choose from {', '.join(SWEEP_VARIABLES)}")
        if not self.lo < self.hi:
            raise UsageError("sweep needs lo < hi")
        if self.steps < 2:
            raise UsageError("sweep needs at least 2 steps")

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        """``var=lo:hi:steps``, e.g. ``s=0.375:0.99:100``."""
        try:
            var, _, rng = text.partition("=")
            lo, hi, steps = rng.split(":")
            return cls(var.strip(), float(lo), float(hi), int(steps))
        except ValueError as exc:
            raise UsageError(f"bad sweep {text!r}, expected var=lo:hi:steps") from exc

    def values(self) -> list[float]:
        vals = np.linspace(self.lo, self.hi, self.steps)
        if self.variable == "n":
            return sorted({int(round(v)) for v in vals})
        return [float(v) for v in vals]


def fmt(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        if math.isnan(x):
            return ""
        if x == 0:
            return "0"
        return "%.12g" % x
    return str(x)


def as_fraction(x: float, max_den: int = 10_000) -> str:
    if x is None or not math.isfinite(x):
        return ""
    frac = Fraction(x).limit_denominator(max_den)
    if abs(float(frac) - x) > 1e-9:
        return ""
    return str(frac)


def write_csv(rows: Iterable[Sequence[Any]], header: Sequence[str], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def parse_floats(text: str | None) -> list[float] | None:
    if text is None:
        return None
    return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]


def parse_seed(text: str) -> int:
    try:
        seed = int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seed must be decimal or 0x-hex, got {text!r}") from exc
    if not 0 <= seed < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return seed


def _relation(table: PayoffTable, s: float, l: float, w: list[float] | None,
              allow_negative: bool = False) -> PayoffRelation:
    if w is None:
        return PayoffRelation.equal(s, l, table.n)
    return PayoffRelation(s, l, tuple(w), allow_negative)


def _load_game(args) -> PayoffTable:
    if not args.game:
        raise UsageError("--game is required")
    table = parse_game(args.game)
    report = validate_dilemma(table)
    if not report:
        raise UsageError(f"not a social dilemma (axiom {report.axiom}, z={report.index}): {report.message}")
    return table


def _emit(args, payload: Any, text: str) -> None:
    out = Path(args.out) if args.out else None
    if args.format == "json":
        text = json.dumps(_clean(payload), indent=2, default=_json_default, allow_nan=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _clean(obj):
    """Replace non-finite floats by None so the JSON stays standard."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)) and not math.isfinite(obj):
        return None
    return obj


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(type(obj).__name__)


def _kv_csv(pairs: list[tuple[str, Any]]) -> str:
    buf = io.StringIO()
    write_csv(pairs, ("field", "value"), buf)
    return buf.getvalue()


def _slope_reason(table: PayoffTable, relation: PayoffRelation) -> str | None:
    s, l = relation.s, relation.l
    equal = len(set(relation.w)) == 1
    if not equal:
        return None
    if table.kind == "nsd" and l == table.b[0]:
        bound = nsd_slope_bounds(table.n, table.params["benefit"], table.params["cost"]).extortion_min_slope
        if s < bound:
            return f"below extortion slope bound {as_fraction(bound) or fmt(bound)}"
    if table.kind == "pgg" and l in (table.b[0], table.a[-1]):
        bound = pgg_slope_bound(table.n, table.params["r"])
        kind = "extortion" if l == table.b[0] else "generous"
        if s < bound:
            return f"below {kind} slope bound {as_fraction(bound) or fmt(bound)}"
    return None


# check -----------------------------------------------------------------------


def cmd_check(args) -> int:
    table = _load_game(args)
    relation = _relation(table, args.s, args.l, parse_floats(args.w), args.allow_negative_weights)
    verdict = is_enforceable(table, relation)
    necessary = check_necessary(relation, table)
    reason = verdict.reason
    if not verdict:
        reason = _slope_reason(table, relation) or reason
    pairs: list[tuple[str, Any]] = [
        ("game", table.kind), ("n", table.n), ("s", relation.s), ("l", relation.l),
        ("weights", ";".join(fmt(x) for x in relation.w)),
        ("enforceable", bool(verdict)), ("reason", reason),
        ("l_lower_bound", verdict.lower), ("l_upper_bound", verdict.upper),
        ("binding", verdict.binding), ("p0_choices", verdict.p0_choices),
        ("necessary", bool(necessary)), ("necessary_violation", necessary.violated or ""),
    ]
    code = EXIT_OK if verdict else EXIT_INFEASIBLE
    if verdict:
        thr = enforcement_threshold(table, relation)
        pairs += [("delta_tau", thr.delta_tau), ("delta_tau_fraction", as_fraction(thr.delta_tau)),
                  ("delta_tau_binding", thr.binding_term), ("delta_tau_p0", thr.p0)]

    if args.sweep:
        sweep = SweepSpec.parse(args.sweep)
        if sweep.variable != "delta":
            raise UsageError("check only sweeps delta")
        rows = []
        for d in sweep.values():
            if not 0 < d < 1:
                continue
            p0 = args.p0
            if p0 is None:
                from .thresholds import feasible_p0_range
                lo, hi = feasible_p0_range(table, relation, d)
                p0 = 0.5 * (lo + hi) if lo <= hi else math.nan
            iv = phi_interval(table, relation, d, p0) if not math.isnan(p0) else None
            ok = iv is not None and not iv.empty
            rows.append((d, p0, ok, iv.lo if ok else math.nan, iv.hi if ok else math.nan))
        buf = io.StringIO()
        write_csv(rows, ("delta", "p0", "feasible", "phi_lo", "phi_hi"), buf)
        payload = [dict(zip(("delta", "p0", "feasible", "phi_lo", "phi_hi"), r)) for r in rows]
        _emit(args, payload, buf.getvalue())
        return code if any(r[2] for r in rows) else EXIT_INFEASIBLE

    if args.delta is not None and verdict:
        try:
            params, strat = make_zd(table, relation, args.delta, args.p0, args.phi)
            iv = phi_interval(table, relation, args.delta, params.p0)
            pairs += [("delta", args.delta), ("p0", params.p0), ("phi_lo", iv.lo), ("phi_hi", iv.hi),
                      ("phi", params.phi), ("strategy", ";".join(fmt(x) for x in strat.p))]
        except InfeasibleParameters as exc:
            pairs += [("delta", args.delta), ("p0", args.p0), ("phi_lo", None), ("phi_hi", None),
                      ("infeasible", str(exc))]
            code = EXIT_INFEASIBLE
    _emit(args, dict(pairs), _kv_csv(pairs))
    return code


# threshold -------------------------------------------------------------------


def _rebuild(table: PayoffTable, var: str, value: float) -> PayoffTable:
    if var not in ("n", "r"):
        return table
    if table.kind == "pgg":
        n = int(value) if var == "n" else table.n
        r = value if var == "r" else table.params["r"]
        return public_goods(n, r, table.params["c"])
    if table.kind == "nsd" and var == "n":
        return snowdrift(int(value), table.params["benefit"], table.params["cost"])
    raise UsageError(f"cannot sweep {var} for a {table.kind} game")


def closed_form(table: PayoffTable, mode: str, s: float) -> float | None:
    try:
        if table.kind == "pgg" and mode in ("extortion", "generous"):
            return pgg_threshold(table.n, table.params["r"], s)
        if table.kind == "nsd" and mode == "extortion":
            return nsd_extortion_threshold(table.n, table.params["benefit"], table.params["cost"], s)
        if table.kind == "nsd" and mode == "generous":
            return nsd_generous_threshold(table.n, table.params["benefit"], table.params["cost"], s)
    except ValueError:
        return None
    return None


def oracle_delta(table: PayoffTable, relation: PayoffRelation, p0_values=None,
                 step: float = ORACLE_STEP) -> float | None:
    """Smallest grid discount factor at which the brute-force oracle succeeds."""
    k_max = int(round(1 / step)) - 1
    test = lambda k: is_enforceable_oracle(table, relation, k * step, p0_values)  # noqa: E731
    if not test(k_max):
        return None
    lo, hi = 0, k_max  # test(lo) treated as false, test(hi) true
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if test(mid):
            hi = mid
        else:
            lo = mid
    return hi * step


def threshold_row(table: PayoffTable, mode: str, s: float | None, l: float | None, p0: float | None,
                  w: list[float] | None, with_oracle: bool) -> dict[str, Any]:
    n = table.n
    weights = tuple(w) if w is not None else (1 / (n - 1),) * (n - 1)
    equal = len(set(weights)) == 1
    if mode == "extortion":
        res = extortion_threshold(table, s, weights)
        relation = PayoffRelation(s, table.b[0], weights)
        p0s = None
    elif mode == "generous":
        res = generosity_threshold(table, s, weights)
        relation = PayoffRelation(s, table.a[-1], weights)
        p0s = None
    else:
        res = equalizer_threshold(table, l, p0, weights, s=s or 0.0)
        relation = PayoffRelation(s or 0.0, l, weights)
        p0s = [p0]
    row: dict[str, Any] = {
        "n": n, "r": table.params.get("r"), "s": relation.s, "l": relation.l, "p0": res.p0,
        "delta_tau": res.delta_tau if res.feasible else None,
        "binding_term": res.binding_term if res.feasible else "infeasible",
        "closed_form_delta": closed_form(table, mode, relation.s) if (equal and res.feasible
                                                                     and mode != "equalizer") else None,
        "feasible": res.feasible,
    }
    if with_oracle:
        row["oracle_delta"] = oracle_delta(table, relation, p0s) if res.feasible else None
    return row


def cmd_threshold(args) -> int:
    table = _load_game(args)
    w = parse_floats(args.w)
    mode = args.mode
    sweep = SweepSpec.parse(args.sweep) if args.sweep else None
    base = {"s": parse_floats(args.s), "l": parse_floats(args.l), "p0": parse_floats(args.p0)}
    if mode == "equalizer":
        base["s"] = base["s"] or [0.0]
        if sweep is None and (base["l"] is None or base["p0"] is None):
            raise UsageError("equalizer mode needs --l and --p0 (or a sweep)")
    elif sweep is None and base["s"] is None:
        raise UsageError(f"{mode} mode needs --s or --sweep s=lo:hi:steps")
    if sweep is not None and sweep.variable == "delta":
        raise UsageError("threshold sweeps s, l, p0, n or r")

    points: list[tuple[PayoffTable, float | None, float | None, float | None]] = []
    sweep_vals = sweep.values() if sweep else [None]
    for v in sweep_vals:
        tbl = _rebuild(table, sweep.variable, v) if sweep else table
        ss = [v] if sweep and sweep.variable == "s" else (base["s"] or [None])
        ls = [v] if sweep and sweep.variable == "l" else (base["l"] or [None])
        ps = [v] if sweep and sweep.variable == "p0" else (base["p0"] or [None])
        for s in ss:
            for l in ls:
                for p0 in ps:
                    points.append((tbl, s, l, p0))

    def run(pt):
        tbl, s, l, p0 = pt
        if mode != "equalizer" and s is None:
            raise UsageError("slope missing")
        try:
            return threshold_row(tbl, mode, s, l, p0, w if w is None or len(w) == tbl.n - 1 else None,
                                 args.oracle)
        except (ValueError, StructureError) as exc:
            raise UsageError(str(exc)) from exc

    if args.workers > 1:
        with ThreadPoolExecutor(args.workers) as pool:
            rows = list(pool.map(run, points))
    else:
        rows = [run(p) for p in points]

    if mode == "equalizer":
        cols = ["l", "p0", "s", "delta_tau", "binding_term", "closed_form_delta"]
    else:
        cols = ["s", "delta_tau", "binding_term", "closed_form_delta"]
    if sweep is not None and sweep.variable in ("n", "r"):
        cols.insert(0, sweep.variable)
    if args.oracle:
        cols.append("oracle_delta")
    buf = io.StringIO()
    write_csv(([r[c] for c in cols] for r in rows), cols, buf)
    _emit(args, [{c: r[c] for c in cols + ["feasible"]} for r in rows], buf.getvalue())
    return EXIT_OK if any(r["feasible"] for r in rows) else EXIT_INFEASIBLE


# nash ------------------------------------------------------------------------


def cmd_nash(args) -> int:
    table = _load_game(args)
    if table.kind != "pgg":
        raise UsageError("nash regions are derived for the public goods game only")
    slopes = SweepSpec.parse(args.sweep).values() if args.sweep else None
    reg = pgg_nash_regions(table.n, table.params["r"], slopes)
    summary = [
        ("n", reg.n), ("r", reg.r),
        ("slope_bound", reg.slope_bound), ("slope_bound_fraction", as_fraction(reg.slope_bound)),
        ("crossover", reg.crossover), ("crossover_fraction", as_fraction(reg.crossover)),
        ("extortion_ne_lo", reg.extortion_interval[0]), ("extortion_ne_hi", reg.extortion_interval[1]),
        ("generous_ne_lo", reg.generous_interval[0]), ("generous_ne_hi", reg.generous_interval[1]),
        ("generous_min_delta", reg.generous_min_delta),
        ("generous_min_delta_fraction", as_fraction(reg.generous_min_delta)),
    ]
    buf = io.StringIO()
    write_csv(summary, ("field", "value"), buf)
    buf.write("\n")
    write_csv(reg.table, ("s", "delta_tau", "region"), buf)
    payload = dict(summary)
    payload["slopes"] = [dict(zip(("s", "delta_tau", "region"), row)) for row in reg.table]
    _emit(args, payload, buf.getvalue())
    return EXIT_OK


# simulate --------------------------------------------------------------------


def parse_opponents(text: str, n: int, key, seed: int) -> list:
    """Comma list: allc, alld, random:q, m1random, m1:<json file>, zd, majority3, grim."""
    rng = np.random.default_rng(seed)
    out = []
    items = [t.strip() for t in text.split(",") if t.strip()]
    if len(items) != n - 1:
        raise UsageError(f"need {n - 1} opponents, got {len(items)}")
    for idx, item in enumerate(items, start=1):
        name, _, arg = item.partition(":")
        name = name.lower()
        if name == "allc":
            out.append(engine.OpponentStrategy.all_c())
        elif name == "alld":
            out.append(engine.OpponentStrategy.all_d())
        elif name == "random":
            out.append(engine.OpponentStrategy.random(float(arg or 0.5)))
        elif name == "m1random":
            out.append(engine.OpponentStrategy.memory_one(rng.random(1 << n), float(rng.random())))
        elif name == "m1":
            data = json.loads(Path(arg).read_text())
            out.append(engine.OpponentStrategy.memory_one(data["p"], data["p0"]))
        elif name == "zd":
            out.append(engine.relabel(key, idx))
        elif name in engine.HISTORY_RULES:
            out.append(engine.OpponentStrategy.history_rule(engine.HISTORY_RULES[name], name))
        else:
            raise UsageError(f"unknown opponent {item!r}")
    return out


def cmd_simulate(args) -> int:
    table = _load_game(args)
    relation = _relation(table, args.s, args.l, parse_floats(args.w), args.allow_negative_weights)
    if not is_enforceable(table, relation):
        sys.stderr.write(f"relation not enforceable: {is_enforceable(table, relation).reason}\n")
        return EXIT_INFEASIBLE
    try:
        params, strat = make_zd(table, relation, args.delta, args.p0, args.phi)
    except InfeasibleParameters as exc:
        sys.stderr.write(f"infeasible ZD parameters: {exc}\n")
        return EXIT_INFEASIBLE
    opponents = parse_opponents(args.opponents, table.n, strat, args.seed)
    players = [strat] + opponents
    if args.engine == "exact":
        try:
            report = engine.exact_report(table, players, args.delta, relation, seed=args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        report = engine.monte_carlo(table, players, args.delta, args.runs, args.seed, relation,
                                    geometric=args.mode == "geometric", workers=args.workers)
    report.extra = {"phi": params.phi, "p0": params.p0, "s": relation.s, "l": relation.l,
                    "weights": list(relation.w), "opponents": args.opponents}
    payload = report.to_json()
    pairs = [(k, ";".join(fmt(x) for x in v) if isinstance(v, list) else v)
             for k, v in payload.items() if k != "extra"]
    pairs += [(k, ";".join(fmt(x) for x in v) if isinstance(v, list) else v)
              for k, v in payload["extra"].items()]
    _emit(args, payload, _kv_csv(pairs))
    return EXIT_OK


# figures ---------------------------------------------------------------------


def figure_rows_pgg(n: int = 5, r: float = 2.0, c: float = 1.0, step: float = 0.005):
    table = public_goods(n, r, c)
    bound = pgg_slope_bound(n, r)
    cross = (n - 2) / (n - 1)
    k = 0
    rows = []
    while True:
        s = bound + k * step
        if s >= 1 - 1e-12:
            break
        ext = extortion_threshold(table, s)
        gen = generosity_threshold(table, s)
        region = "both" if abs(s - cross) <= 1e-12 else "extortion-NE" if s < cross else "generous-NE"
        rows.append((s, ext.delta_tau, gen.delta_tau, pgg_threshold(n, r, s), region))
        k += 1
    return ("s", "extortion_delta_tau", "generous_delta_tau", "closed_form_delta", "nash_region"), rows


def figure_rows_nsd(n: int = 5, benefit: float = 2.0, cost: float = 1.0, step: float = 0.005):
    table = snowdrift(n, benefit, cost)
    ext_bound = nsd_slope_bounds(n, benefit, cost).extortion_min_slope
    cross = (n - 2) / (n - 1)
    rows = []
    k = 1
    while True:
        s = k * step
        if s >= 1 - 1e-12:
            break
        gen = generosity_threshold(table, s)
        ext = extortion_threshold(table, s) if s >= ext_bound - 1e-12 else None
        rows.append((s, gen.delta_tau, nsd_generous_threshold(n, benefit, cost, s),
                     ext.delta_tau if ext and ext.feasible else None, s >= cross - 1e-12))
        k += 1
    return ("s", "generous_delta_tau", "closed_form_delta", "extortion_delta_tau", "generous_ne"), rows


def cmd_figures(args) -> int:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    for name, (header, rows) in (("fig1_pgg.csv", figure_rows_pgg()), ("fig2_nsd.csv", figure_rows_nsd())):
        with open(out / name, "w", newline="") as fh:
            write_csv(rows, header, fh)
        sys.stdout.write(f"wrote {out / name} ({len(rows)} rows)\n")
    return EXIT_OK


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--game", help="JSON file, inline JSON, or shorthand like pgg:n=5,r=2,c=1")
    common.add_argument("--out", help="output file (directory for figures)")
    common.add_argument("--seed", type=parse_seed, default=0, help="decimal or 0x-hex seed")
    common.add_argument("--format", choices=("csv", "json"), help="default csv (json for simulate)")
    common.add_argument("--workers", type=int, default=1)

    relation = argparse.ArgumentParser(add_help=False)
    relation.add_argument("--s", type=float, required=True, help="slope")
    relation.add_argument("--l", type=float, required=True, help="baseline payoff")
    relation.add_argument("--w", help="co-player weights, comma separated (default equal)")
    relation.add_argument("--allow-negative-weights", action="store_true")
    relation.add_argument("--p0", type=float, help="opening cooperation probability")
    relation.add_argument("--phi", type=float, help="scaling factor (default: interval midpoint)")

    parser = argparse.ArgumentParser(prog="zdgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, relation], help="enforceability report")
    p.add_argument("--delta", type=float)
    p.add_argument("--sweep", help="delta=lo:hi:steps")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("threshold", parents=[common], help="threshold discount factors")
    p.add_argument("--mode", choices=("extortion", "generous", "equalizer"), required=True)
    p.add_argument("--s", help="slope value(s), comma separated")
    p.add_argument("--l", help="baseline value(s) (equalizer)")
    p.add_argument("--p0", help="opening probability value(s) (equalizer)")
    p.add_argument("--w", help="co-player weights")
    p.add_argument("--sweep", help="var=lo:hi:steps with var in s, l, p0, n, r")
    p.add_argument("--oracle", action="store_true", help="add brute-force oracle column (slow)")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("nash", parents=[common], help="public goods Nash regions")
    p.add_argument("--sweep", help="s=lo:hi:steps for the slope table")
    p.set_defaults(func=cmd_nash)

    p = sub.add_parser("simulate", parents=[common, relation], help="play the ZD strategy")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--opponents", required=True,
                   help="comma list of allc, alld, random:q, m1random, m1:<file>, zd, majority3, grim")
    p.add_argument("--engine", choices=("exact", "mc"), default="exact")
    p.add_argument("--runs", type=int, default=100_000)
    p.add_argument("--mode", choices=("discounted", "geometric"), default="discounted")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("figures", parents=[common], help="write fig1_pgg.csv and fig2_nsd.csv")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    if args.format is None:
        args.format = "json" if args.command == "simulate" else "csv"
    try:
        return args.func(args)
    except (UsageError, StructureError, ValueError, json.JSONDecodeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
