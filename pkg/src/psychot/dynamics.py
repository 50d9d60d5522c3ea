"""Thinking as iteration: processors apply maps until the orbit settles.

A processor owns one map on the mental space and "thinks" by feeding a point
back into it. On a finite space every orbit eventually revisits a point, so
each run ends in one of three ways: a fixed point (the attractor, the idea
the processor was looking for), a cycle of period >= 2 (no solution), or an
exhausted step budget when max_steps is set below the orbit length.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .space import MentalPoint, MetricSpec


class OutputTarget(str, Enum):
    """Where a processor sends its attractors."""

    SCC = "SCC"          # subconsciousness collector (analysis + queueing)
    UC = "UC"            # unconscious control (re-dispatch or silent use)
    INTERNAL = "Internal"  # straight back into thinking as a new start point


@dataclass(frozen=True)
class MonomialMap:
    """x -> x**n in Z/(p**m), acting on points via their integer encoding."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"monomial degree must be an integer >= 1, got {self.n!r}")


@dataclass(frozen=True)
class AffineMap:
    """x -> (a*x + b) mod p**m on the integer encoding."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise ValueError("affine coefficients must be integers")
        if self.a < 0 or self.b < 0:
            raise ValueError("affine coefficients must be non-negative")


@dataclass(frozen=True)
class PrefixRewriteMap:
    """Rewrite the longest matching prefix; identity when nothing matches.

    Rules are (pattern, replacement) pairs of equal length. Deterministic by
    construction: patterns are unique and the longest match wins.
    """

    rules: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        seen: set[tuple[int, ...]] = set()
        for pattern, replacement in self.rules:
            if len(pattern) == 0:
                raise ValueError("rewrite pattern must be non-empty")
            if len(pattern) != len(replacement):
                raise ValueError(
                    "rewrite pattern and replacement must have equal length"
                )
            if pattern in seen:
                raise ValueError(f"duplicate rewrite pattern {pattern!r}")
            seen.add(pattern)


MapSpec = Union[MonomialMap, AffineMap, PrefixRewriteMap]

NO_BLOCKING: float | None = None  # sentinel: censorship disabled for a processor


@dataclass(frozen=True)
class ProcessorSpec:
    """One thinking unit: a map, an output target and an optional censor."""

    id: str
    map: MapSpec
    output_target: OutputTarget = OutputTarget.SCC
    blocking_threshold: float | None = NO_BLOCKING
    max_steps: int | None = None  # None: the space size p**m

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("processor id must be non-empty")
        if self.blocking_threshold is not None and not (
            0.0 <= self.blocking_threshold <= 1.0
        ):
            raise ValueError(
                f"blocking_threshold must lie in [0, 1], got {self.blocking_threshold}"
            )
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be >= 1 when set")


# --- integer encoding ----------------------------------------------------

def point_to_int(space: MetricSpec, point: MentalPoint) -> int:
    """Base-p integer value of a point, most significant digit first."""
    value = 0
    for d in point.digits:
        value = value * space.p + d
    return value


def int_to_point(space: MetricSpec, value: int) -> MentalPoint:
    """Inverse of point_to_int for values in [0, p**m)."""
    if not 0 <= value < space.size:
        raise ValueError(f"value {value} outside [0, {space.size})")
    digits = [0] * space.m
    for i in range(space.m - 1, -1, -1):
        digits[i] = value % space.p
        value //= space.p
    return MentalPoint(tuple(digits))


# --- one application -----------------------------------------------------

def apply(space: MetricSpec, proc: ProcessorSpec, x: MentalPoint) -> MentalPoint:
    """Apply the processor's map once.

    Examples:
        >>> s = MetricSpec(p=2, m=3)
        >>> p = ProcessorSpec(id="sq", map=MonomialMap(2))
        >>> str(apply(s, p, s.parse_point("010")))
        '100'
    """
    space.check_point(x)
    m = proc.map
    if isinstance(m, MonomialMap):
        return int_to_point(space, pow(point_to_int(space, x), m.n, space.size))
    if isinstance(m, AffineMap):
        return int_to_point(space, (m.a * point_to_int(space, x) + m.b) % space.size)
    if isinstance(m, PrefixRewriteMap):
        best: tuple[tuple[int, ...], tuple[int, ...]] | None = None
        for pattern, replacement in m.rules:
            if len(pattern) <= space.m and x.digits[: len(pattern)] == pattern:
                if best is None or len(pattern) > len(best[0]):
                    best = (pattern, replacement)
        if best is None:
            return x
        pattern, replacement = best
        return MentalPoint(replacement + x.digits[len(pattern):])
    raise TypeError(f"unknown map type {type(m).__name__}")


# --- iteration outcomes ---------------------------------------------------

@dataclass(frozen=True)
class Attractor:
    """The orbit reached a fixed point after `steps` applications."""

    point: MentalPoint
    steps: int


@dataclass(frozen=True)
class Cycle:
    """The orbit closed into a loop of period >= 2: no solution."""

    points: tuple[MentalPoint, ...]
    period: int


@dataclass(frozen=True)
class Exhausted:
    """The step budget ran out before any point repeated."""

    last_point: MentalPoint


IterationOutcome = Union[Attractor, Cycle, Exhausted]


def iterate(space: MetricSpec, proc: ProcessorSpec, x0: MentalPoint) -> IterationOutcome:
    """Run the orbit of x0 under the processor's map to its outcome.

    The orbit x0, f(x0), f(f(x0)), ... is followed until a point repeats.
    If the first repeated point returns to itself after one step it is a
    fixed point: Attractor(point, steps to first reach it). A longer loop is
    reported as Cycle(points on the loop in orbit order, period). With the
    default budget of p**m steps a repeat is guaranteed, so Exhausted can
    only occur when max_steps is configured smaller than the orbit.
    """
    space.check_point(x0)
    budget = proc.max_steps if proc.max_steps is not None else space.size
    first_seen: dict[MentalPoint, int] = {x0: 0}
    orbit = [x0]
    x = x0
    for step in range(1, budget + 1):
        x = apply(space, proc, x)
        if x in first_seen:
            start = first_seen[x]
            period = step - start
            if period == 1:
                return Attractor(point=x, steps=start)
            return Cycle(points=tuple(orbit[start:]), period=period)
        first_seen[x] = step
        orbit.append(x)
    return Exhausted(last_point=x)


def orbit_table(
    space: MetricSpec, proc: ProcessorSpec
) -> list[tuple[MentalPoint, IterationOutcome]]:
    """Outcome of iterate() for every start point, in lexicographic order."""
    return [(start, iterate(space, proc, start)) for start in space.points()]
