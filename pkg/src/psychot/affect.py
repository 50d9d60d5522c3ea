"""Affective measures: interest, interdiction, consistency, doubt, pleasure.

Every attractor that reaches the subconsciousness collector is weighed
before it may queue for realization. Interest and interdiction are nearness
measures against the agent's databases; an emotion profile combines them
into a consistency score; twin ceilings turn simultaneous strong attraction
and strong prohibition into doubt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .space import MentalPoint, MetricSpec, distance_to_set


class UnsupportedLevelError(ValueError):
    """Operation undefined at this model level."""


@dataclass(frozen=True)
class EmotionProfile:
    """Weights for the consistency score a*interest + b*interdiction."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("profile weights must be finite")


NORMAL = EmotionProfile(a=1.0, b=-1.0)      # prohibition weighs against desire
RISKY = EmotionProfile(a=5.0, b=-1.0)       # desire shouts down prohibition
ADRENALINE = EmotionProfile(a=1.0, b=1.0)   # prohibition itself attracts

PROFILE_PRESETS: dict[str, EmotionProfile] = {
    "normal": NORMAL,
    "risky": RISKY,
    "adrenaline": ADRENALINE,
}


@dataclass(frozen=True)
class Thresholds:
    """Analyzer set points.

    realization: scores below it are discarded outright.
    preserving: scores at or above it queue pinned (immune to decay).
    max_interest / max_interdiction: the doubt ceilings; an idea exceeding
    BOTH (strictly) at model level 4 is doubtful. Measures never exceed 1,
    so setting a ceiling above 1 disables doubt.
    """

    realization: float
    preserving: float
    max_interest: float = 1.0
    max_interdiction: float = 1.0

    def __post_init__(self) -> None:
        for name in ("realization", "preserving", "max_interest", "max_interdiction"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.preserving > self.realization:
            raise ValueError(
                f"preserving ({self.preserving}) must exceed "
                f"realization ({self.realization})"
            )
        if self.max_interest < 0 or self.max_interdiction < 0:
            raise ValueError("doubt ceilings must be >= 0")


class DispositionKind(str, Enum):
    DISCARD = "Discard"
    QUEUE = "Queue"
    DOUBTFUL = "Doubtful"


@dataclass(frozen=True)
class Disposition:
    """Analyzer verdict for one attractor."""

    kind: DispositionKind
    score: float | None = None
    pinned: bool = False


def interest_measure(
    space: MetricSpec, point: MentalPoint, database: Iterable[MentalPoint]
) -> float:
    """1/(d+1) with d the distance to the nearest interesting idea.

    Ranges over [k, 1] with k = 1/(L+1): 1 on a database hit, k when the
    database is empty or everything in it is maximally far.
    """
    return 1.0 / (distance_to_set(space, point, database) + 1.0)


def interdiction_measure(
    space: MetricSpec, point: MentalPoint, database: Iterable[MentalPoint]
) -> float:
    """Nearness to the forbidden-idea database, same scale as interest."""
    return 1.0 / (distance_to_set(space, point, database) + 1.0)


def consistency(interest: float, interdiction: float, profile: EmotionProfile) -> float:
    """Profile-weighted combination a*interest + b*interdiction."""
    return profile.a * interest + profile.b * interdiction


def pleasure_reality(
    interest: float,
    interdiction: float | None,
    profile: EmotionProfile,
    model_level: int,
) -> float:
    """Reported pleasure balance: interest at level 2, consistency at 3 and 4.

    Undefined at level 1, where nothing is measured at all.
    """
    if model_level == 2:
        return interest
    if model_level in (3, 4):
        if interdiction is None:
            raise ValueError("levels 3 and 4 need an interdiction measure")
        return consistency(interest, interdiction, profile)
    raise UnsupportedLevelError(
        f"pleasure is undefined at model level {model_level}"
    )


def classify(
    interest: float,
    interdiction: float | None,
    profile: EmotionProfile,
    thresholds: Thresholds,
    model_level: int,
) -> Disposition:
    """Decide an attractor's fate: doubt, discard, or queue (maybe pinned).

    Doubt is checked first and only at level 4: both measures strictly above
    their ceilings means the idea is simultaneously craved and forbidden too
    strongly to score at all. Otherwise the score is interest (level 2) or
    consistency (levels 3/4); below the realization threshold it is
    discarded, at or above the preserving threshold it queues pinned, in
    between it queues unpinned.
    """
    if model_level not in (2, 3, 4):
        raise UnsupportedLevelError(
            f"the analyzer runs at levels 2-4, got {model_level}"
        )
    if model_level >= 3 and interdiction is None:
        raise ValueError("levels 3 and 4 need an interdiction measure")
    if (
        model_level == 4
        and interdiction is not None
        and interest > thresholds.max_interest
        and interdiction > thresholds.max_interdiction
    ):
        return Disposition(kind=DispositionKind.DOUBTFUL)
    if model_level == 2:
        score = interest
    else:
        assert interdiction is not None
        score = consistency(interest, interdiction, profile)
    if score < thresholds.realization:
        return Disposition(kind=DispositionKind.DISCARD, score=score)
    if score >= thresholds.preserving:
        return Disposition(kind=DispositionKind.QUEUE, score=score, pinned=True)
    return Disposition(kind=DispositionKind.QUEUE, score=score, pinned=False)
