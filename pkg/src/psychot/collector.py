"""Subconsciousness collector: the bounded, decaying queue of scored ideas.

Ideas that survive analysis wait here for realization, ordered by score.
Unpinned scores halve every half_life ticks and are purged once they sink
below the realization threshold; pinned ideas keep their score and their
seat until realized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class CapacityExhaustedByPinned(RuntimeError):
    """The queue is full of pinned ideas; the newcomer cannot be seated."""


@dataclass(frozen=True)
class CollectorConfig:
    capacity: int = 8
    half_life_ticks: float = 4.0
    realizations_per_tick: int = 1

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        if not (math.isfinite(self.half_life_ticks) and self.half_life_ticks > 0):
            raise ValueError("half_life_ticks must be positive and finite")
        if self.realizations_per_tick < 0:
            raise ValueError("realizations_per_tick must be >= 0")


@dataclass
class QueuedIdea:
    """One seat in the queue; score mutates under decay, identity does not."""

    idea_id: str
    score: float
    pinned: bool
    enqueued_tick: int


def _order_key(item: QueuedIdea) -> tuple[float, int, str]:
    # Highest score first; ties broken by earlier arrival, then idea id.
    return (-item.score, item.enqueued_tick, item.idea_id)


class Collector:
    """Priority queue with exponential decay and pinned seats."""

    def __init__(self, config: CollectorConfig) -> None:
        self.config = config
        self._items: list[QueuedIdea] = []

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def _sort(self) -> None:
        self._items.sort(key=_order_key)

    def enqueue(self, item: QueuedIdea) -> list[QueuedIdea]:
        """Seat an idea, evicting the lowest-ordered unpinned one if full.

        Returns the evicted ideas (empty or a single item). Raises
        CapacityExhaustedByPinned, without seating the newcomer, when every
        seat is pinned.
        """
        self._items.append(item)
        self._sort()
        if len(self._items) <= self.config.capacity:
            return []
        unpinned = [it for it in self._items if not it.pinned]
        if not unpinned:
            self._items.remove(item)
            raise CapacityExhaustedByPinned(
                f"all {self.config.capacity} seats pinned; {item.idea_id} rejected"
            )
        victim = unpinned[-1]  # sorted order: last unpinned is lowest
        self._items.remove(victim)
        return [victim]

    def decay(self, dt: float, realization_threshold: float) -> list[QueuedIdea]:
        """Age unpinned scores by dt ticks and purge the ones that sank too low.

        Scores multiply by 2**(-dt/half_life), so decay composes: two calls
        with dt1 and dt2 land exactly where one call with dt1+dt2 would.
        Returns the purged ideas in queue order.
        """
        if dt < 0:
            raise ValueError("dt must be >= 0")
        if dt == 0 or not self._items:
            return []
        factor = 2.0 ** (-dt / self.config.half_life_ticks)
        kept: list[QueuedIdea] = []
        purged: list[QueuedIdea] = []
        for item in self._items:
            if item.pinned:
                kept.append(item)
                continue
            item.score *= factor
            if item.score < realization_threshold:
                purged.append(item)
            else:
                kept.append(item)
        self._items = kept
        self._sort()  # pinned scores held still, so relative order can change
        return purged

    def pop_for_realization(self, limit: int | None = None) -> list[QueuedIdea]:
        """Remove and return the top ideas, at most `limit` of them.

        limit defaults to the configured realizations_per_tick. Pinned ideas
        are fully realizable; pinning protects a seat, it does not freeze it.
        """
        if limit is None:
            limit = self.config.realizations_per_tick
        count = max(0, min(limit, len(self._items)))
        popped = self._items[:count]
        self._items = self._items[count:]
        return popped

    def peek(self) -> list[QueuedIdea]:
        """The queue in realization order, without removing anything."""
        return list(self._items)

    def snapshot(self, current_tick: int) -> list[dict]:
        return [
            {
                "idea_id": it.idea_id,
                "score": it.score,
                "pinned": it.pinned,
                "enqueued_tick": it.enqueued_tick,
                "age": current_tick - it.enqueued_tick,
            }
            for it in self._items
        ]
