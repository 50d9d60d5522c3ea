"""How the analyzer scores ideas: drives, moods, and the verdicts they produce."""

from __future__ import annotations

from psychot.affect import (
    ADRENALINE,
    NORMAL,
    RISKY,
    Thresholds,
    classify,
    consistency,
    interdiction_measure,
    interest_measure,
)
from psychot.space import MetricSpec

SPACE = MetricSpec(p=2, m=3)
THRESHOLDS = Thresholds(
    realization=0.0, preserving=0.45, max_interest=0.9, max_interdiction=0.9
)


def main() -> None:
    wants = tuple(SPACE.parse_point(t) for t in ("111", "000"))
    taboos = (SPACE.parse_point("111"),)

    print("idea  interest  interdiction  normal  risky  adrenaline")
    for text in ("000", "011", "101", "111"):
        idea = SPACE.parse_point(text)
        i = interest_measure(SPACE, idea, wants)
        d = interdiction_measure(SPACE, idea, taboos)
        row = "  ".join(
            f"{consistency(i, d, profile):6.3f}"
            for profile in (NORMAL, RISKY, ADRENALINE)
        )
        print(f"{idea}   {i:.3f}     {d:.3f}         {row}")
    print()

    print("verdicts at level 3 (no doubt) vs level 4 (doubt enabled):")
    for text in ("011", "111"):
        idea = SPACE.parse_point(text)
        i = interest_measure(SPACE, idea, wants)
        d = interdiction_measure(SPACE, idea, taboos)
        v3 = classify(i, d, NORMAL, THRESHOLDS, model_level=3)
        v4 = classify(i, d, NORMAL, THRESHOLDS, model_level=4)
        print(f"  {idea}: level 3 -> {v3.kind.value}, level 4 -> {v4.kind.value}")
    print()
    print("an idea that is both craved and forbidden beyond the ceilings")
    print("cannot be decided; at level 4 it becomes a hidden wish instead")


if __name__ == "__main__":
    main()
