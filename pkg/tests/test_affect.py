"""Affect contracts: measures, consistency, doubt, thresholds, pleasure."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from psychot.affect import (
    ADRENALINE,
    NORMAL,
    PROFILE_PRESETS,
    RISKY,
    DispositionKind,
    EmotionProfile,
    Thresholds,
    UnsupportedLevelError,
    classify,
    consistency,
    interdiction_measure,
    interest_measure,
    pleasure_reality,
)
from psychot.space import MetricKind, MetricSpec

SPACE = MetricSpec(p=2, m=3)
TH = Thresholds(realization=0.0, preserving=0.45, max_interest=0.9, max_interdiction=0.9)


def pt(text: str, space: MetricSpec = SPACE):
    return space.parse_point(text)


# --- measures ---------------------------------------------------------------

def test_interest_measure_frozen_values():
    db = [pt("111")]
    assert interest_measure(SPACE, pt("111"), db) == 1.0           # d = 0
    assert interest_measure(SPACE, pt("110"), db) == 0.8           # d = 0.25
    assert interest_measure(SPACE, pt("101"), db) == 1.0 / 1.5     # d = 0.5
    assert interest_measure(SPACE, pt("011"), db) == 0.5           # d = 1


def test_empty_database_gives_floor_measure():
    assert interest_measure(SPACE, pt("010"), []) == SPACE.floor_measure == 0.5
    hamming = MetricSpec(MetricKind.HAMMING, p=2, m=3)
    assert interest_measure(hamming, pt("010", hamming), []) == 0.25


def test_interdiction_uses_the_same_scale():
    db = [pt("101")]
    assert interdiction_measure(SPACE, pt("101"), db) == 1.0
    assert interdiction_measure(SPACE, pt("100"), db) == 0.8


def test_measures_stay_in_bounds_for_all_points():
    k = SPACE.floor_measure
    databases = [[], [pt("111")], [pt("000"), pt("011")], list(SPACE.points())]
    for db in databases:
        for point in SPACE.points():
            value = interest_measure(SPACE, point, db)
            assert k <= value <= 1.0


# --- profiles and consistency ----------------------------------------------------

def test_profile_presets():
    assert NORMAL == EmotionProfile(1.0, -1.0)
    assert RISKY == EmotionProfile(5.0, -1.0)
    assert ADRENALINE == EmotionProfile(1.0, 1.0)
    assert set(PROFILE_PRESETS) == {"normal", "risky", "adrenaline"}


def test_consistency_weighting():
    assert consistency(1.0, 0.5, NORMAL) == 0.5
    assert consistency(0.8, 1.0, RISKY) == 3.0
    assert consistency(0.5, 0.5, ADRENALINE) == 1.0
    assert consistency(0.95, 0.95, NORMAL) == 0.0


def test_profile_rejects_non_finite_weights():
    with pytest.raises(ValueError):
        EmotionProfile(float("nan"), 1.0)
    with pytest.raises(ValueError):
        EmotionProfile(1.0, float("inf"))


# --- thresholds -------------------------------------------------------------------

def test_thresholds_require_preserving_above_realization():
    with pytest.raises(ValueError):
        Thresholds(realization=0.5, preserving=0.5)
    with pytest.raises(ValueError):
        Thresholds(realization=0.6, preserving=0.5)
    Thresholds(realization=-1.0, preserving=0.0)  # negative floor is legal


def test_thresholds_allow_ceilings_above_one():
    th = Thresholds(realization=0.0, preserving=0.5, max_interest=1.5, max_interdiction=2.0)
    assert th.max_interest == 1.5


def test_thresholds_reject_non_finite_and_negative_ceilings():
    with pytest.raises(ValueError):
        Thresholds(realization=0.0, preserving=0.5, max_interest=float("nan"))
    with pytest.raises(ValueError):
        Thresholds(realization=0.0, preserving=0.5, max_interdiction=-0.1)


# --- classify ------------------------------------------------------------------------

def test_storm_of_cravings_is_doubtful_only_at_level_4():
    level4 = classify(0.95, 0.95, NORMAL, TH, model_level=4)
    assert level4.kind is DispositionKind.DOUBTFUL
    level3 = classify(0.95, 0.95, NORMAL, TH, model_level=3)
    assert level3.kind is DispositionKind.QUEUE
    assert level3.score == 0.0
    assert level3.pinned is False


def test_doubt_needs_both_ceilings_exceeded_strictly():
    at_ceiling = classify(0.9, 0.95, NORMAL, TH, model_level=4)
    assert at_ceiling.kind is not DispositionKind.DOUBTFUL  # interest == ceiling
    one_sided = classify(1.0, 0.5, NORMAL, TH, model_level=4)
    assert one_sided.kind is DispositionKind.QUEUE
    assert one_sided.score == 0.5
    assert one_sided.pinned is True  # 0.5 >= preserving 0.45


def test_classify_discards_below_realization():
    # normal profile, strong interdiction: score 0.5 - 1.0 < 0
    verdict = classify(0.5, 1.0, NORMAL, TH, model_level=3)
    assert verdict.kind is DispositionKind.DISCARD
    assert verdict.score == -0.5


def test_classify_boundaries_are_inclusive_exclusive():
    th = Thresholds(realization=0.2, preserving=0.6)
    at_realization = classify(0.2, 0.0, NORMAL, th, model_level=3)
    assert at_realization.kind is DispositionKind.QUEUE  # score == realization stays
    assert at_realization.pinned is False
    at_preserving = classify(0.6, 0.0, NORMAL, th, model_level=3)
    assert at_preserving.pinned is True  # score == preserving pins
    below = classify(0.19999, 0.0, NORMAL, th, model_level=3)
    assert below.kind is DispositionKind.DISCARD


def test_level_2_scores_on_interest_alone():
    verdict = classify(0.8, None, NORMAL, TH, model_level=2)
    assert verdict.kind is DispositionKind.QUEUE
    assert verdict.score == 0.8
    # interdiction, even if supplied, plays no role at level 2
    assert classify(0.8, 1.0, NORMAL, TH, model_level=2).score == 0.8


def test_classify_level_validation():
    with pytest.raises(UnsupportedLevelError):
        classify(0.5, 0.5, NORMAL, TH, model_level=1)
    with pytest.raises(ValueError):
        classify(0.5, None, NORMAL, TH, model_level=3)


@given(
    interest=st.floats(min_value=0.5, max_value=1.0),
    interdiction=st.floats(min_value=0.5, max_value=1.0),
    level=st.sampled_from([2, 3, 4]),
)
def test_classify_is_total_and_consistent(interest, interdiction, level):
    verdict = classify(interest, interdiction, NORMAL, TH, model_level=level)
    if verdict.kind is DispositionKind.QUEUE:
        assert verdict.score is not None
        assert verdict.score >= TH.realization
        assert verdict.pinned == (verdict.score >= TH.preserving)
    elif verdict.kind is DispositionKind.DISCARD:
        assert verdict.score is not None and verdict.score < TH.realization
    else:
        assert level == 4
        assert interest > TH.max_interest and interdiction > TH.max_interdiction


# --- pleasure ---------------------------------------------------------------------------

def test_pleasure_by_level():
    assert pleasure_reality(0.8, None, NORMAL, model_level=2) == 0.8
    assert pleasure_reality(1.0, 0.5, NORMAL, model_level=3) == 0.5
    assert pleasure_reality(1.0, 0.5, ADRENALINE, model_level=4) == 1.5


def test_pleasure_peaks_at_full_interest_and_floor_interdiction():
    k = SPACE.floor_measure
    peak = pleasure_reality(1.0, k, NORMAL, model_level=3)
    assert peak == 1.0 - k
    assert math.isclose(peak, 0.5)


def test_pleasure_undefined_at_level_1():
    with pytest.raises(UnsupportedLevelError):
        pleasure_reality(1.0, 0.5, NORMAL, model_level=1)
