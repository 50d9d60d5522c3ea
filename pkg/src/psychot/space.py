"""Mental space: points, metrics, and distances to idea databases.

Ideas are points of a finite metric space. A point is a fixed-length word of
base-p digits; the metric is either the prefix ultrametric (closeness =
length of the shared prefix, association by common root) or the Hamming
distance (number of differing positions, a plain control metric). Every
measure downstream is a function of these distances, so this module is the
foundation the rest of the engine stands on.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

DIGIT_CHARS = string.digits + string.ascii_lowercase
MAX_BASE = len(DIGIT_CHARS)


class InvalidPointError(ValueError):
    """A point does not conform to its space (wrong length or digit range)."""


class MetricKind(str, Enum):
    PREFIX_ULTRAMETRIC = "PrefixUltrametric"
    HAMMING = "Hamming"


@dataclass(frozen=True)
class MentalPoint:
    """An idea: an m-tuple of base-p digits, most significant first."""

    digits: tuple[int, ...]

    @classmethod
    def from_string(cls, text: str, p: int) -> "MentalPoint":
        """Parse a digit-string literal like "011" or "2a" in base p.

        Raises:
            InvalidPointError: on empty input or a character that is not a
                digit below p.
        """
        if not text:
            raise InvalidPointError("point literal is empty")
        digits = []
        for ch in text:
            value = DIGIT_CHARS.find(ch.lower())
            if value < 0 or value >= p:
                raise InvalidPointError(
                    f"character {ch!r} is not a base-{p} digit"
                )
            digits.append(value)
        return cls(tuple(digits))

    def __str__(self) -> str:
        return "".join(DIGIT_CHARS[d] for d in self.digits)


@dataclass(frozen=True)
class MetricSpec:
    """The shape of a mental space: digit base p, word length m, metric kind."""

    kind: MetricKind = MetricKind.PREFIX_ULTRAMETRIC
    p: int = 2
    m: int = 3

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 2:
            raise ValueError(f"p must be an integer >= 2, got {self.p!r}")
        if self.p > MAX_BASE:
            raise ValueError(f"p must be <= {MAX_BASE} (one character per digit)")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m!r}")

    @property
    def size(self) -> int:
        """Number of points in the space, p**m."""
        return self.p**self.m

    @property
    def diameter(self) -> float:
        """L, the largest possible distance between two points."""
        if self.kind is MetricKind.HAMMING:
            return float(self.m)
        return 1.0

    @property
    def floor_measure(self) -> float:
        """k = 1/(L+1), the measure an idea gets at maximal distance."""
        return 1.0 / (self.diameter + 1.0)

    def check_point(self, point: MentalPoint) -> None:
        """Raise InvalidPointError unless point conforms to this space."""
        if len(point.digits) != self.m:
            raise InvalidPointError(
                f"point has {len(point.digits)} digits, space expects {self.m}"
            )
        for d in point.digits:
            if not 0 <= d < self.p:
                raise InvalidPointError(f"digit {d} out of range for base {self.p}")

    def parse_point(self, text: str) -> MentalPoint:
        point = MentalPoint.from_string(text, self.p)
        self.check_point(point)
        return point

    def points(self) -> Iterator[MentalPoint]:
        """Enumerate the whole space in lexicographic order."""
        def rec(prefix: tuple[int, ...]) -> Iterator[MentalPoint]:
            if len(prefix) == self.m:
                yield MentalPoint(prefix)
                return
            for d in range(self.p):
                yield from rec(prefix + (d,))

        yield from rec(())


def distance(space: MetricSpec, x: MentalPoint, y: MentalPoint) -> float:
    """Distance between two points of the space.

    Prefix ultrametric: p**-(length of common prefix) for distinct points,
    0 for equal ones. Two ideas agreeing on the first i digits but not the
    (i+1)-th sit at distance p**-i, so the space splits into nested balls of
    ideas sharing a root. Hamming: count of positions where digits differ.

    Examples:
        >>> s = MetricSpec(MetricKind.PREFIX_ULTRAMETRIC, p=2, m=3)
        >>> distance(s, s.parse_point("011"), s.parse_point("010"))
        0.25
        >>> distance(s, s.parse_point("100"), s.parse_point("000"))
        1.0
    """
    space.check_point(x)
    space.check_point(y)
    if space.kind is MetricKind.HAMMING:
        return float(sum(a != b for a, b in zip(x.digits, y.digits)))
    if x.digits == y.digits:
        return 0.0
    lcp = 0
    for a, b in zip(x.digits, y.digits):
        if a != b:
            break
        lcp += 1
    return float(space.p) ** -lcp


def distance_to_set(
    space: MetricSpec, x: MentalPoint, points: Iterable[MentalPoint]
) -> float:
    """Min distance from x to a set of points; the diameter L if the set is empty."""
    best: float | None = None
    for s in points:
        d = distance(space, x, s)
        if best is None or d < best:
            best = d
        if best == 0.0:
            break
    return space.diameter if best is None else best


class Database:
    """A named, ordered, duplicate-free collection of mental points.

    Agents keep three of these: interest, interdiction and (inside the
    unconscious) hidden wishes. Insertion order is preserved so that every
    scan over a database is deterministic.
    """

    def __init__(
        self, name: str, space: MetricSpec, points: Iterable[MentalPoint] = ()
    ) -> None:
        self.name = name
        self.space = space
        self._points: list[MentalPoint] = []
        self._seen: set[MentalPoint] = set()
        for point in points:
            self.add(point)

    def add(self, point: MentalPoint) -> bool:
        """Insert a point; returns False (and does nothing) if already present."""
        self.space.check_point(point)
        if point in self._seen:
            return False
        self._seen.add(point)
        self._points.append(point)
        return True

    def __contains__(self, point: MentalPoint) -> bool:
        return point in self._seen

    def __iter__(self) -> Iterator[MentalPoint]:
        return iter(self._points)

    def __len__(self) -> int:
        return len(self._points)

    def snapshot(self) -> dict:
        return {"name": self.name, "size": len(self), "points": [str(p) for p in self]}
