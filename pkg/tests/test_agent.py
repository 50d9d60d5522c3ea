"""Agent pipeline contracts: encoding, routing, tick phases, event lifecycle."""

from __future__ import annotations

import json

import pytest

from psychot.affect import EmotionProfile, Thresholds
from psychot.agent import (
    AgentConfig,
    EventKind,
    PsychotAgent,
    encode_label,
    encode_stimulus,
)
from psychot.collector import CollectorConfig
from psychot.dynamics import (
    AffineMap,
    MonomialMap,
    OutputTarget,
    PrefixRewriteMap,
    ProcessorSpec,
)
from psychot.space import InvalidPointError, MentalPoint, MetricSpec
from psychot.unconscious import UnconsciousConfig

SPACE = MetricSpec(p=2, m=3)

IDENTITY = MonomialMap(1)


def pt(text: str):
    return SPACE.parse_point(text)


def rewrite(*rules: tuple[str, str]) -> PrefixRewriteMap:
    return PrefixRewriteMap(
        rules=tuple(
            (
                MentalPoint.from_string(src, SPACE.p).digits,
                MentalPoint.from_string(dst, SPACE.p).digits,
            )
            for src, dst in rules
        )
    )


def scc(proc_id: str, map_spec=IDENTITY, blocking=None) -> ProcessorSpec:
    return ProcessorSpec(
        id=proc_id, map=map_spec, output_target=OutputTarget.SCC,
        blocking_threshold=blocking,
    )


def make_agent(**overrides) -> PsychotAgent:
    config = {
        "agent_id": "a",
        "space": SPACE,
        "model_level": 3,
        "processors": (scc("p0"),),
        "thresholds": Thresholds(realization=0.0, preserving=0.45),
        "seed": 5,
    }
    config.update(overrides)
    return PsychotAgent(AgentConfig(**config))


def kinds(agent: PsychotAgent) -> list[EventKind]:
    return [event.kind for event in agent.events]


# --- stimulus encoding ---------------------------------------------------------

def test_label_encoding_is_deterministic_and_seed_free():
    point_a = encode_label(SPACE, "coffee")
    point_b = encode_label(SPACE, "coffee")
    assert point_a == point_b
    assert encode_label(SPACE, "tea") != point_a or True  # labels may collide; just run
    wide = MetricSpec(p=7, m=40)
    point = encode_label(wide, "coffee")
    assert len(point.digits) == 40 and all(0 <= d < 7 for d in point.digits)


def test_auto_mode_prefers_literal_reading():
    assert str(encode_stimulus(SPACE, "010")) == "010"
    hashed = encode_stimulus(SPACE, "находка")
    assert len(hashed.digits) == SPACE.m


def test_point_mode_rejects_malformed_literals():
    with pytest.raises(InvalidPointError):
        encode_stimulus(SPACE, "01x", mode="point")
    with pytest.raises(ValueError):
        encode_stimulus(SPACE, "010", mode="teleport")


# --- level 1: straight to realization ----------------------------------------------

def test_level_1_realizes_same_tick_without_measures():
    agent = make_agent(model_level=1)
    agent.inject_stimulus("010")
    agent.tick()
    assert kinds(agent) == [
        EventKind.STIMULUS_ENCODED,
        EventKind.DISPATCHED,
        EventKind.ATTRACTOR_FOUND,
        EventKind.REALIZED,
    ]
    realized = agent.events[-1]
    assert realized.tick == 0
    assert realized.measures is None
    assert agent.metrics.counts["realizations"] == 1
    assert agent.metrics.mean_pleasure is None


# --- analysis dispositions -----------------------------------------------------------

STORM_TH = Thresholds(
    realization=0.0, preserving=0.45, max_interest=0.9, max_interdiction=0.9
)


def storm_agent(level: int) -> PsychotAgent:
    return make_agent(
        model_level=level,
        thresholds=STORM_TH,
        interest_db=(pt("111"),),
        interdiction_db=(pt("111"),),
        unconscious=UnconsciousConfig(leak_rate=0.0, retry_attempts=0),
    )


def test_craved_and_forbidden_queues_at_level_3():
    agent = storm_agent(3)
    agent.inject_stimulus("111")
    agent.tick()
    queued = [e for e in agent.events if e.kind is EventKind.QUEUED]
    assert len(queued) == 1
    assert queued[0].measures.interest == 1.0
    assert queued[0].measures.interdiction == 1.0
    assert queued[0].measures.score == 0.0


def test_craved_and_forbidden_represses_at_level_4():
    agent = storm_agent(4)
    agent.inject_stimulus("111")
    agent.tick()
    assert EventKind.REPRESSED in kinds(agent)
    assert EventKind.QUEUED not in kinds(agent)
    assert len(agent.repressed) == 1
    assert pt("111") in agent.repressed.hidden_db


def test_doubt_retries_before_repression():
    agent = make_agent(
        model_level=4,
        thresholds=STORM_TH,
        interest_db=(pt("111"),),
        interdiction_db=(pt("111"),),
        unconscious=UnconsciousConfig(leak_rate=0.0, retry_attempts=2),
    )
    agent.inject_stimulus("111")
    agent.tick()  # doubtful, retry 1 scheduled for next tick
    assert kinds(agent).count(EventKind.REDISPATCH) == 1
    agent.tick()  # doubtful again, retry 2
    assert kinds(agent).count(EventKind.REDISPATCH) == 2
    assert EventKind.REPRESSED not in kinds(agent)
    agent.tick()  # retries exhausted
    assert EventKind.REPRESSED in kinds(agent)
    repressed = [e for e in agent.events if e.kind is EventKind.REPRESSED]
    assert repressed[0].tick == 2


def test_analyzer_discard_below_realization():
    agent = make_agent(
        model_level=3,
        thresholds=Thresholds(realization=0.0, preserving=0.45),
        interdiction_db=(pt("010"),),  # interdiction 1, interest floor 0.5
    )
    agent.inject_stimulus("010")
    agent.tick()
    discarded = [e for e in agent.events if e.kind is EventKind.DISCARDED]
    assert len(discarded) == 1
    assert discarded[0].measures.score == -0.5
    assert agent.metrics.counts["discards"] == 1


# --- unconscious control and internal loops --------------------------------------------

def test_uc_alternates_redispatch_and_silent_performance():
    agent = make_agent(
        processors=(
            ProcessorSpec(id="mull", map=IDENTITY, output_target=OutputTarget.UC),
            scc("voice"),
        ),
        routing=(((0,), "mull"),),
    )
    agent.inject_stimulus("010")
    agent.tick()
    assert kinds(agent) == [
        EventKind.STIMULUS_ENCODED,
        EventKind.DISPATCHED,
        EventKind.ATTRACTOR_FOUND,     # first UC arrival
        EventKind.REDISPATCH,          # odd visit bounces back into thinking
        EventKind.DISPATCHED,
        EventKind.ATTRACTOR_FOUND,     # second UC arrival
        EventKind.UNCONSCIOUS_PERFORMANCE,  # even visit acts silently
    ]


def test_internal_chains_are_capped_with_no_solution():
    agent = make_agent(
        processors=(
            ProcessorSpec(id="a", map=IDENTITY, output_target=OutputTarget.INTERNAL),
            ProcessorSpec(id="b", map=IDENTITY, output_target=OutputTarget.INTERNAL),
            ProcessorSpec(id="d", map=IDENTITY, output_target=OutputTarget.INTERNAL),
            scc("voice"),
        ),
        routing=(((0,), "a"),),
    )
    agent.inject_stimulus("010")
    agent.tick()
    assert kinds(agent).count(EventKind.REDISPATCH) == 3
    assert kinds(agent)[-1] is EventKind.NO_SOLUTION
    assert agent.current_tick == 1  # the tick terminated


def test_cycle_attractor_is_no_solution():
    agent = make_agent(
        processors=(scc("inc", AffineMap(1, 1)),),
    )
    agent.inject_stimulus("000")
    agent.tick()
    assert kinds(agent)[-1] is EventKind.NO_SOLUTION
    assert agent.metrics.counts["no_solutions"] == 1


# --- repression, leaks, symptoms ------------------------------------------------------

def symptom_agent(leak_rate=1.0) -> PsychotAgent:
    return make_agent(
        model_level=4,
        processors=(
            scc("dreamwork", rewrite(("111", "011")), blocking=1.0),
            scc("wishmaker", rewrite(("110", "111"))),
        ),
        routing=(((1, 1, 0), "wishmaker"),),
        thresholds=STORM_TH,
        interest_db=(pt("111"), pt("000")),
        interdiction_db=(pt("111"),),
        unconscious=UnconsciousConfig(leak_rate=leak_rate, retry_attempts=0),
        seed=11,
    )


def test_leaked_wish_returns_as_symptom():
    agent = symptom_agent()
    agent.inject_stimulus("110")
    agent.tick()
    assert EventKind.REPRESSED in kinds(agent)
    agent.tick()
    symptoms = [e for e in agent.events if e.kind is EventKind.SYMPTOM]
    assert len(symptoms) == 1
    symptom = symptoms[0]
    wish = [e for e in agent.events if e.kind is EventKind.REPRESSED][0]
    assert symptom.root_wish_id == wish.idea_id
    assert symptom.point != wish.point  # disguised, not the wish itself
    assert agent.metrics.counts["symptoms"] == 1
    assert agent.metrics.counts["realizations"] == 0


def test_leak_events_carry_lineage():
    agent = symptom_agent()
    agent.inject_stimulus("110")
    agent.tick()
    agent.tick()
    leaked = [e for e in agent.events if e.kind is EventKind.LEAKED]
    assert len(leaked) == 1
    assert leaked[0].root_wish_id == leaked[0].idea_id[:0] + "i0001"
    assert leaked[0].point == "111"


def test_zero_leak_rate_keeps_wishes_buried():
    agent = symptom_agent(leak_rate=0.0)
    agent.inject_stimulus("110")
    for _ in range(5):
        agent.tick()
    assert EventKind.LEAKED not in kinds(agent)
    assert EventKind.SYMPTOM not in kinds(agent)
    assert len(agent.repressed) == 1


# --- resistance -------------------------------------------------------------------------

def resistance_agent(threshold: float | None) -> PsychotAgent:
    return make_agent(
        model_level=4,
        processors=(
            scc("front", rewrite(("010", "111")), blocking=threshold),
            scc("maker", rewrite(("110", "111"))),
        ),
        routing=(((0, 1, 0), "front"), ((1, 1, 0), "maker")),
        thresholds=STORM_TH,
        interest_db=(pt("111"),),
        interdiction_db=(pt("111"),),
        unconscious=UnconsciousConfig(leak_rate=0.0, retry_attempts=0),
    )


def test_resistance_blocks_attractor_near_hidden_wish():
    agent = resistance_agent(threshold=0.8)
    agent.inject_stimulus("110")  # maker represses wish 111
    agent.tick()
    assert EventKind.REPRESSED in kinds(agent)
    agent.inject_stimulus("010")  # front reaches 111 again, nearness 1 > 0.8
    agent.tick()
    blocked = [e for e in agent.events if e.kind is EventKind.BLOCKED]
    assert len(blocked) == 1
    assert blocked[0].processor_id == "front"
    idea_id = blocked[0].idea_id
    after = [e for e in agent.events if e.idea_id == idea_id and e.seq > blocked[0].seq]
    assert after == []  # blocked ideas never reach the collector


def test_threshold_one_can_never_block():
    agent = resistance_agent(threshold=1.0)
    agent.inject_stimulus("110")
    agent.tick()
    agent.inject_stimulus("010")
    agent.tick()
    assert EventKind.BLOCKED not in kinds(agent)
    # it passed the censor and was analyzed: doubtful again, so repressed again
    assert kinds(agent).count(EventKind.REPRESSED) == 2


# --- collector integration ----------------------------------------------------------------

def test_eviction_emits_discard_for_the_victim():
    agent = make_agent(
        model_level=2,
        interest_db=(pt("110"), pt("011")),
        collector=CollectorConfig(capacity=1, realizations_per_tick=0),
        thresholds=Thresholds(realization=0.0, preserving=2.0),  # nothing pins
    )
    agent.inject_stimulus("011")  # interest 1.0 queues
    agent.tick()
    agent.inject_stimulus("010")  # interest 0.8 (d=0.25 to 011): loses, self-evicts
    agent.tick()
    discarded = [e for e in agent.events if e.kind is EventKind.DISCARDED]
    assert len(discarded) == 1
    assert discarded[0].idea_id == "i0002"
    assert len(agent.collector) == 1


def test_full_pinned_queue_rejects_newcomer_with_discard():
    agent = make_agent(
        model_level=2,
        interest_db=(pt("110"), pt("011")),
        collector=CollectorConfig(capacity=1, realizations_per_tick=0),
        thresholds=Thresholds(realization=0.0, preserving=0.4),  # everything pins
    )
    agent.inject_stimulus("011")
    agent.tick()
    agent.inject_stimulus("110")
    agent.tick()
    discarded = [e for e in agent.events if e.kind is EventKind.DISCARDED]
    assert len(discarded) == 1
    assert discarded[0].idea_id == "i0002"  # the newcomer, loudly rejected
    assert [item.idea_id for item in agent.collector.peek()] == ["i0001"]


def test_purge_event_when_score_decays_away():
    agent = make_agent(
        model_level=2,
        interest_db=(pt("011"),),
        thresholds=Thresholds(realization=0.4, preserving=0.9),
        collector=CollectorConfig(half_life_ticks=1.0, realizations_per_tick=0),
    )
    agent.inject_stimulus("010")  # interest 0.8, queues unpinned
    agent.tick()  # decays to 0.4, survives (strict <)
    agent.tick()  # decays to 0.2 < 0.4, purged
    purged = [e for e in agent.events if e.kind is EventKind.PURGED]
    assert len(purged) == 1
    assert purged[0].tick == 1
    assert agent.metrics.counts["purges"] == 1
    assert len(agent.collector) == 0


# --- bookkeeping invariants -----------------------------------------------------------------

def test_dispatch_conservation():
    agent = symptom_agent()
    agent.inject_stimulus("110")
    agent.inject_stimulus("000")
    for _ in range(6):
        agent.tick()
    counted = kinds(agent)
    dispatched = counted.count(EventKind.DISPATCHED)
    sources = (
        counted.count(EventKind.STIMULUS_ENCODED)
        + counted.count(EventKind.LEAKED)
        + counted.count(EventKind.REDISPATCH)
    )
    assert dispatched == sources


TERMINAL_KINDS = {
    EventKind.NO_SOLUTION,
    EventKind.UNCONSCIOUS_PERFORMANCE,
    EventKind.BLOCKED,
    EventKind.DISCARDED,
    EventKind.PURGED,
    EventKind.REALIZED,
    EventKind.SYMPTOM,
    EventKind.REPRESSED,
}


def test_every_dispatched_idea_has_exactly_one_terminal():
    agent = symptom_agent()
    agent.inject_stimulus("110")
    agent.inject_stimulus("011")
    for _ in range(6):
        agent.tick()
    dispatched_ideas = {
        e.idea_id for e in agent.events if e.kind is EventKind.DISPATCHED
    }
    still_queued = {item.idea_id for item in agent.collector.peek()}
    still_pending = {idea_id for idea_id, _ in agent._pending}
    for idea_id in dispatched_ideas:
        terminals = [
            e for e in agent.events
            if e.idea_id == idea_id and e.kind in TERMINAL_KINDS
        ]
        if idea_id in still_queued or idea_id in still_pending:
            assert terminals == []
        else:
            assert len(terminals) == 1, (idea_id, terminals)


def test_events_are_json_round_trippable():
    from psychot.agent import Event

    agent = symptom_agent()
    agent.inject_stimulus("110")
    agent.tick()
    agent.tick()
    for event in agent.events:
        clone = Event.from_dict(json.loads(event.to_json_line()))
        assert clone == event


# --- config patching --------------------------------------------------------------------------

def test_threshold_patch_takes_effect_next_tick():
    agent = storm_agent(4)
    agent.inject_stimulus("111")
    agent.tick()
    assert agent.metrics.counts["repressions"] == 1
    agent.apply_config_patch(
        thresholds=Thresholds(
            realization=0.0, preserving=0.45, max_interest=1.5, max_interdiction=1.5
        )
    )
    agent.inject_stimulus("111")
    agent.tick()
    assert agent.metrics.counts["repressions"] == 1  # doubt disabled
    assert agent.metrics.counts["queued"] == 1
    marker = [e for e in agent.events if e.kind is EventKind.CONFIG_CHANGED]
    assert len(marker) == 1
    assert marker[0].config["thresholds"]["max_interest"] == 1.5


def test_profile_patch_changes_scoring():
    agent = make_agent(
        model_level=3,
        interest_db=(pt("010"),),
        interdiction_db=(pt("010"),),
        thresholds=Thresholds(realization=0.0, preserving=3.0),
    )
    agent.inject_stimulus("010")
    agent.tick()  # normal: 1 - 1 = 0, queued unpinned
    agent.apply_config_patch(profile=EmotionProfile(a=5.0, b=-1.0))
    agent.inject_stimulus("010")
    agent.tick()  # risky: 5 - 1 = 4, pinned
    queued = [e for e in agent.events if e.kind is EventKind.QUEUED]
    assert [q.measures.score for q in queued] == [0.0, 4.0]


def test_snapshot_is_json_serializable_and_structured():
    agent = symptom_agent()
    agent.inject_stimulus("110")
    agent.tick()
    agent.tick()
    snap = agent.snapshot()
    json.dumps(snap)
    assert snap["tick"] == 2
    assert snap["databases"]["hidden_wishes"]["points"] == ["111"]
    assert snap["metrics"]["symptoms"] == 1
    assert snap["thresholds"]["max_interest"] == 0.9


def test_agent_config_validation():
    with pytest.raises(ValueError):
        AgentConfig(agent_id="a", space=SPACE, model_level=5, processors=(scc("p"),))
    with pytest.raises(ValueError):
        AgentConfig(agent_id="a", space=SPACE, processors=())
    with pytest.raises(ValueError):  # no SCC output anywhere
        AgentConfig(
            agent_id="a", space=SPACE,
            processors=(ProcessorSpec(id="u", map=IDENTITY, output_target=OutputTarget.UC),),
        )
    with pytest.raises(ValueError):  # routing to a ghost processor
        AgentConfig(
            agent_id="a", space=SPACE, processors=(scc("p"),),
            routing=(((0,), "ghost"),),
        )
    with pytest.raises(ValueError):  # blocking threshold under the floor measure
        AgentConfig(
            agent_id="a", space=SPACE,
            processors=(scc("p", blocking=0.25),),
        )
