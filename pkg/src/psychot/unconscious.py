"""Unconscious: repressed wishes, their leaks, and the resistance gate.

A doubtful idea that survives its retry budget is repressed: its attractor
is stored here as a hidden wish and added to the hidden-wish database. Each
tick every stored wish may leak back into thinking (an independent coin flip
per wish), and every attractor arriving at the collector is screened against
the hidden-wish database; too-close ones are blocked before analysis.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .space import Database, MentalPoint, MetricSpec, distance_to_set


class DuplicateWishError(ValueError):
    """A wish with this idea id is already stored."""


@dataclass(frozen=True)
class UnconsciousConfig:
    leak_rate: float = 0.0
    retry_attempts: int = 2

    def __post_init__(self) -> None:
        if not (math.isfinite(self.leak_rate) and 0.0 <= self.leak_rate <= 1.0):
            raise ValueError("leak_rate must lie in [0, 1]")
        if self.retry_attempts < 0:
            raise ValueError("retry_attempts must be >= 0")


@dataclass
class RepressedWish:
    idea_id: str
    point: MentalPoint
    repressed_tick: int
    leak_count: int = 0


class RepressedCollector:
    """Store of hidden wishes, keyed by the repressed idea's id."""

    def __init__(self, space: MetricSpec) -> None:
        self.space = space
        self._wishes: dict[str, RepressedWish] = {}
        self.hidden_db = Database("hidden-wish", space)

    def __len__(self) -> int:
        return len(self._wishes)

    def __iter__(self):
        return iter(self._wishes.values())

    def get(self, idea_id: str) -> RepressedWish | None:
        return self._wishes.get(idea_id)

    def repress(self, idea_id: str, point: MentalPoint, tick: int) -> RepressedWish:
        """Store a wish and register its point in the hidden-wish database."""
        if idea_id in self._wishes:
            raise DuplicateWishError(f"wish {idea_id} already repressed")
        self.space.check_point(point)
        wish = RepressedWish(idea_id=idea_id, point=point, repressed_tick=tick)
        self._wishes[idea_id] = wish
        self.hidden_db.add(point)
        return wish

    def select_leaks(self, leak_rate: float, rng: random.Random) -> list[RepressedWish]:
        """Independently pick each stored wish with probability leak_rate.

        Wishes stay stored after leaking (a leak is an echo, not a release);
        their leak_count is incremented. Iteration is in repression order, so
        the rng consumption, and with it the whole run, is reproducible.
        """
        leaked: list[RepressedWish] = []
        for wish in self._wishes.values():
            if rng.random() < leak_rate:
                wish.leak_count += 1
                leaked.append(wish)
        return leaked

    def snapshot(self, current_tick: int) -> list[dict]:
        return [
            {
                "idea_id": w.idea_id,
                "point": str(w.point),
                "repressed_tick": w.repressed_tick,
                "leak_count": w.leak_count,
                "age": current_tick - w.repressed_tick,
            }
            for w in self._wishes.values()
        ]


def unconscious_nearness(
    space: MetricSpec, point: MentalPoint, hidden_db: Database
) -> float:
    """1/(d+1) against the hidden-wish database; k when nothing is hidden."""
    return 1.0 / (distance_to_set(space, point, hidden_db) + 1.0)


def resistance_blocks(
    space: MetricSpec,
    point: MentalPoint,
    hidden_db: Database,
    blocking_threshold: float | None,
) -> bool:
    """True when the censor stops this attractor at the collector door.

    Strictly greater-than: a threshold of 1 can never block (nearness tops
    out at 1), and None disables the check for the processor entirely.
    """
    if blocking_threshold is None:
        return False
    return unconscious_nearness(space, point, hidden_db) > blocking_threshold
