"""Symmetric two-action multiplayer social dilemmas.

A game with group size ``n`` is described by two payoff vectors: ``a[z]`` is
what a cooperator earns when ``z`` of its ``n - 1`` co-players cooperate, and
``b[z]`` is what a defector earns in the same situation.

Action profiles are encoded as integer bit masks: bit ``i`` is set when
player ``i`` cooperates. Player 0 is the key player throughout the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np


class StructureError(ValueError):
    """Malformed game data (wrong lengths, bad parameters, unknown type)."""


@dataclass(frozen=True)
class PayoffTable:
    """One-shot payoffs of a symmetric ``n``-player dilemma.

    ``kind`` and ``params`` only record how the table was built so that the
    closed-form helpers can be offered for public goods and snowdrift games.
    """

    n: int
    a: tuple[float, ...]
    b: tuple[float, ...]
    kind: str = "custom"
    params: Mapping[str, float] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise StructureError(f"group size must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        object.__setattr__(self, "b", tuple(float(x) for x in self.b))
        if len(self.a) != self.n or len(self.b) != self.n:
            raise StructureError(
                f"payoff vectors must have length n={self.n}, "
                f"got len(a)={len(self.a)}, len(b)={len(self.b)}"
            )

    # a_{-1} = b_n = 0; only used inside formulas that reach past the table.
    def a_ext(self, z: int) -> float:
        return 0.0 if z < 0 else self.a[z]

    def b_ext(self, z: int) -> float:
        return 0.0 if z >= self.n else self.b[z]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"type": self.kind, "n": self.n}
        out.update(self.params)
        out["a"] = list(self.a)
        out["b"] = list(self.b)
        return out


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    index: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class ActionProfile:
    """An action profile of an ``n``-player round as a cooperation bit mask."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} out of range for n={self.n}")

    @property
    def cooperators(self) -> int:
        return popcount(self.mask)

    def cooperates(self, player: int) -> bool:
        return bool(self.mask >> player & 1)

    def coplayers(self, player: int = 0) -> tuple[list[int], list[int]]:
        """Return (cooperating, defecting) co-players of ``player``."""
        coop = [j for j in range(self.n) if j != player and self.cooperates(j)]
        defect = [j for j in range(self.n) if j != player and not self.cooperates(j)]
        return coop, defect

    @classmethod
    def from_actions(cls, actions: str) -> "ActionProfile":
        """Build from a string such as ``"CDDC"`` (player 0 first)."""
        mask = 0
        for i, ch in enumerate(actions.upper()):
            if ch == "C":
                mask |= 1 << i
            elif ch != "D":
                raise ValueError(f"unknown action {ch!r}")
        return cls(mask, len(actions))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def validate_dilemma(table: PayoffTable) -> ValidationReport:
    """Check the three social-dilemma axioms.

    Returns a failing report naming the first violated axiom ('a', 'b' or
    'c') and the offending index ``z``. Comparisons are exact.
    """
    n, a, b = table.n, table.a, table.b
    if len(a) != n or len(b) != n:
        raise StructureError("payoff vectors do not match group size")
    for z in range(n - 1):
        if a[z + 1] < a[z] or b[z + 1] < b[z]:
            return ValidationReport(
                False, "a", z, f"payoffs must not decrease in co-player cooperation at z={z}"
            )
    for z in range(n - 1):
        if not b[z + 1] > a[z]:
            return ValidationReport(
                False, "b", z, f"defector must strictly beat cooperator: b[{z + 1}] <= a[{z}]"
            )
    if not a[n - 1] > b[0]:
        return ValidationReport(
            False, "c", n - 1, f"mutual cooperation must beat mutual defection: a[{n - 1}] <= b[0]"
        )
    return ValidationReport(True, message="social dilemma")


def public_goods(n: int, r: float, c: float = 1.0) -> PayoffTable:
    """Linear public goods game with enhancement factor ``r`` and cost ``c``."""
    if n < 2:
        raise StructureError("public goods game needs n >= 2")
    if not c > 0:
        raise StructureError("contribution c must be positive")
    if not 1 < r < n:
        raise StructureError(f"enhancement factor must satisfy 1 < r < n, got r={r}, n={n}")
    a = [r * c * (z + 1) / n - c for z in range(n)]
    b = [r * c * z / n for z in range(n)]
    return PayoffTable(n, tuple(a), tuple(b), kind="pgg", params={"r": r, "c": c})


def snowdrift(n: int, benefit: float, cost: float) -> PayoffTable:
    """Multiplayer snowdrift game: cooperators share ``cost`` to create ``benefit``."""
    if n < 2:
        raise StructureError("snowdrift game needs n >= 2")
    if not cost > 0:
        raise StructureError("cost must be positive")
    if not benefit > cost:
        raise StructureError(f"snowdrift game needs benefit > cost, got {benefit} <= {cost}")
    a = [benefit - cost / (z + 1) for z in range(n)]
    b = [0.0] + [float(benefit)] * (n - 1)
    return PayoffTable(n, tuple(a), tuple(b), kind="nsd",
                       params={"benefit": benefit, "cost": cost})


def custom(a, b) -> PayoffTable:
    a = tuple(a)
    b = tuple(b)
    return PayoffTable(len(a), a, b)


def profile_payoff(table: PayoffTable, mask: int | ActionProfile, player: int) -> float:
    """Single-round payoff of ``player`` in the profile ``mask``."""
    if isinstance(mask, ActionProfile):
        mask = mask.mask
    if not 0 <= player < table.n:
        raise IndexError(f"player {player} out of range for n={table.n}")
    z = popcount(mask) - (mask >> player & 1)
    return table.a[z] if mask >> player & 1 else table.b[z]


def payoff_vectors(table: PayoffTable) -> np.ndarray:
    """All single-round payoffs as an array of shape ``(n, 2**n)``."""
    n = table.n
    masks = np.arange(1 << n)
    bits = (masks[None, :] >> np.arange(n)[:, None]) & 1
    total = bits.sum(axis=0)
    z = total[None, :] - bits
    a = np.asarray(table.a)
    b = np.asarray(table.b)
    return np.where(bits == 1, a[z], b[z])


def coplayer_average(table: PayoffTable, key_action: str, z: int) -> float:
    """Average one-shot payoff of the key player's co-players.

    ``z`` is the number of cooperating co-players and ``key_action`` is
    ``"C"`` or ``"D"``.
    """
    n = table.n
    if not 0 <= z <= n - 1:
        raise ValueError(f"z must lie in [0, {n - 1}]")
    key_action = key_action.upper()
    if key_action == "C":
        return (table.a[z] * z + (n - 1 - z) * table.b_ext(z + 1)) / (n - 1)
    if key_action == "D":
        return (table.a_ext(z - 1) * z + (n - 1 - z) * table.b[z]) / (n - 1)
    raise ValueError(f"key_action must be 'C' or 'D', got {key_action!r}")


_ALIASES = {
    "pgg": {"r": "r", "c": "c"},
    "nsd": {"benefit": "benefit", "b": "benefit", "cost": "cost", "c": "cost"},
}


def game_from_spec(spec: Mapping[str, Any]) -> PayoffTable:
    """Build a table from a JSON-style game description.

    ``{"type": "pgg", "n": 5, "r": 2, "c": 1}``,
    ``{"type": "nsd", "n": 5, "benefit": 2, "cost": 1}`` or
    ``{"type": "custom", "a": [...], "b": [...]}``. Constructors ignore any
    explicit ``a``/``b`` arrays.
    """
    kind = str(spec.get("type", "")).lower()
    try:
        if kind == "pgg":
            return public_goods(int(spec["n"]), float(spec["r"]), float(spec.get("c", 1.0)))
        if kind == "nsd":
            benefit = spec.get("benefit", spec.get("b"))
            cost = spec.get("cost", spec.get("c"))
            if isinstance(benefit, (list, tuple)):
                benefit = spec["benefit"]
            return snowdrift(int(spec["n"]), float(benefit), float(cost))
        if kind == "custom":
            if "a" not in spec or "b" not in spec:
                raise StructureError("custom game requires explicit 'a' and 'b' arrays")
            table = custom(spec["a"], spec["b"])
            if "n" in spec and int(spec["n"]) != table.n:
                raise StructureError(f"n={spec['n']} does not match payoff length {table.n}")
            return table
    except (KeyError, TypeError) as exc:
        raise StructureError(f"incomplete {kind} game spec: {exc}") from exc
    raise StructureError(f"unknown game type {spec.get('type')!r}")


def parse_game(text: str) -> PayoffTable:
    """Parse a game given as a JSON file path, inline JSON, or shorthand.

    Shorthand looks like ``pgg:n=5,r=2,c=1`` or ``nsd:n=5,b=2,c=1``; a custom
    game can be written ``custom:a=0;1,b=0.5;2`` (semicolon-separated vectors).
    """
    text = text.strip()
    path = Path(text)
    if text.startswith("{"):
        return game_from_spec(json.loads(text))
    if ":" not in text and path.exists():
        return game_from_spec(json.loads(path.read_text()))
    kind, _, rest = text.partition(":")
    spec: dict[str, Any] = {"type": kind}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise StructureError(f"bad shorthand item {item!r}")
        key = key.strip()
        if kind.lower() == "custom" and key in ("a", "b"):
            spec[key] = [float(v) for v in value.split(";")]
        else:
            spec[_ALIASES.get(kind.lower(), {}).get(key, key)] = float(value)
    return game_from_spec(spec)
