"""Thinking as iteration: orbits, attractors, and loops that never settle."""

from __future__ import annotations

from collections import Counter

from psychot.dynamics import (
    AffineMap,
    Attractor,
    Cycle,
    MonomialMap,
    ProcessorSpec,
    iterate,
    orbit_table,
)
from psychot.space import MetricSpec

SPACE = MetricSpec(p=3, m=3)


def describe(proc: ProcessorSpec) -> None:
    print(f"processor {proc.id}:")
    summary: Counter[str] = Counter()
    for start, outcome in orbit_table(SPACE, proc):
        if isinstance(outcome, Attractor):
            summary[f"attractor {outcome.point}"] += 1
        elif isinstance(outcome, Cycle):
            summary[f"loop of period {outcome.period}"] += 1
    for label, count in sorted(summary.items(), key=lambda kv: -kv[1]):
        print(f"  {count:3d} start ideas -> {label}")
    print()


def main() -> None:
    square = ProcessorSpec(id="square", map=MonomialMap(2))
    drift = ProcessorSpec(id="drift", map=AffineMap(1, 1))

    settled = iterate(SPACE, square, SPACE.parse_point("010"))
    print(f"squaring from 010: settled on {settled.point} after {settled.steps} steps")
    looping = iterate(SPACE, square, SPACE.parse_point("021"))
    print(f"squaring from 021: locked into a period-{looping.period} loop, no solution")
    print()

    describe(square)
    describe(drift)


if __name__ == "__main__":
    main()
