"""One agent: stimulus encoding, dispatch, thinking, analysis, realization.

The agent advances in ticks. Each tick runs four phases in a fixed order:

1. leaks: stored wishes may re-enter thinking (model level 4 only),
2. thinking: every pending (idea, processor) pair is iterated to an outcome
   and the attractor routed by the processor's output target,
3. decay: unpinned queue scores age and too-low ones are purged,
4. realization: the top of the queue is popped and realized.

Everything the agent does is recorded as an append-only event list; the
whole run is a pure function of (config, injected stimuli, seed), which is
what makes logs replayable byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .affect import (
    NORMAL,
    DispositionKind,
    EmotionProfile,
    Thresholds,
    classify,
    interdiction_measure,
    interest_measure,
    pleasure_reality,
)
from .collector import (
    CapacityExhaustedByPinned,
    Collector,
    CollectorConfig,
    QueuedIdea,
)
from .dynamics import Attractor, OutputTarget, ProcessorSpec, iterate
from .space import (
    Database,
    InvalidPointError,
    MentalPoint,
    MetricSpec,
)
from .unconscious import RepressedCollector, UnconsciousConfig, resistance_blocks

# A single idea may chain through at most this many same-tick re-dispatches
# (internal loops, unconscious bounce-backs); the next attempt is declared
# unsolvable so a tick always terminates.
CHAIN_CAP = 3


# --- events ----------------------------------------------------------------

class EventKind(str, Enum):
    STIMULUS_ENCODED = "StimulusEncoded"
    DISPATCHED = "Dispatched"
    ATTRACTOR_FOUND = "AttractorFound"
    NO_SOLUTION = "NoSolution"
    REDISPATCH = "ReDispatch"
    UNCONSCIOUS_PERFORMANCE = "UnconsciousPerformance"
    BLOCKED = "Blocked"
    QUEUED = "Queued"
    DISCARDED = "Discarded"
    PURGED = "Purged"
    REPRESSED = "Repressed"
    LEAKED = "Leaked"
    REALIZED = "Realized"
    SYMPTOM = "Symptom"
    CONFIG_CHANGED = "ConfigChanged"


@dataclass(frozen=True)
class Measures:
    """Optional measurements attached to an event."""

    interest: float | None = None
    interdiction: float | None = None
    score: float | None = None
    pleasure: float | None = None

    def to_dict(self) -> dict:
        out: dict = {}
        if self.interest is not None:
            out["I"] = self.interest
        if self.interdiction is not None:
            out["D"] = self.interdiction
        if self.score is not None:
            out["score"] = self.score
        if self.pleasure is not None:
            out["pleasure"] = self.pleasure
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Measures":
        return cls(
            interest=data.get("I"),
            interdiction=data.get("D"),
            score=data.get("score"),
            pleasure=data.get("pleasure"),
        )


@dataclass(frozen=True)
class Event:
    """One line of the agent's story, totally ordered by (tick, seq)."""

    tick: int
    seq: int
    agent_id: str
    kind: EventKind
    idea_id: str | None = None
    point: str | None = None
    processor_id: str | None = None
    measures: Measures | None = None
    root_wish_id: str | None = None
    config: dict | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "tick": self.tick,
            "seq": self.seq,
            "agent": self.agent_id,
            "kind": self.kind.value,
        }
        if self.idea_id is not None:
            out["idea"] = self.idea_id
        if self.point is not None:
            out["point"] = self.point
        if self.processor_id is not None:
            out["processor"] = self.processor_id
        if self.measures is not None:
            md = self.measures.to_dict()
            if md:
                out["measures"] = md
        if self.root_wish_id is not None:
            out["root_wish"] = self.root_wish_id
        if self.config is not None:
            out["config"] = self.config
        return out

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Event":
        measures = data.get("measures")
        return cls(
            tick=data["tick"],
            seq=data["seq"],
            agent_id=data["agent"],
            kind=EventKind(data["kind"]),
            idea_id=data.get("idea"),
            point=data.get("point"),
            processor_id=data.get("processor"),
            measures=Measures.from_dict(measures) if measures else None,
            root_wish_id=data.get("root_wish"),
            config=data.get("config"),
        )


# --- ideas ------------------------------------------------------------------

@dataclass(frozen=True)
class IdeaOrigin:
    """Where an idea came from: a stimulus, a processor, or a leaked wish."""

    kind: str
    ref: str | None = None

    @classmethod
    def stimulus(cls) -> "IdeaOrigin":
        return cls(kind="stimulus")

    @classmethod
    def processor(cls, processor_id: str) -> "IdeaOrigin":
        return cls(kind="processor", ref=processor_id)

    @classmethod
    def leak(cls, root_wish_id: str) -> "IdeaOrigin":
        return cls(kind="leak", ref=root_wish_id)


@dataclass
class Idea:
    """A problem thread: keeps its id while re-dispatched, point follows."""

    idea_id: str
    point: MentalPoint
    origin: IdeaOrigin
    created_tick: int
    root_wish_id: str | None = None
    retry_count: int = 0
    uc_visits: int = 0
    measures: Measures | None = None


# --- stimulus encoding -------------------------------------------------------

def encode_label(space: MetricSpec, label: str) -> MentalPoint:
    """Deterministically hash a free-text label onto the space.

    sha256 of the utf-8 label, digest re-hashed and appended until at least
    m bytes are available; digit i is byte i mod p. Independent of any seed,
    so the same label always lands on the same point.
    """
    stream = hashlib.sha256(label.encode("utf-8")).digest()
    while len(stream) < space.m:
        stream += hashlib.sha256(stream).digest()
    return MentalPoint(tuple(stream[i] % space.p for i in range(space.m)))


def encode_stimulus(space: MetricSpec, stimulus: str, mode: str = "auto") -> MentalPoint:
    """Turn external input into a point.

    mode "point" parses a base-p digit literal and fails loudly on anything
    else; "label" always hashes; "auto" tries the literal reading first and
    falls back to hashing.
    """
    if mode == "point":
        return space.parse_point(stimulus)
    if mode == "label":
        return encode_label(space, stimulus)
    if mode == "auto":
        try:
            return space.parse_point(stimulus)
        except InvalidPointError:
            return encode_label(space, stimulus)
    raise ValueError(f"unknown stimulus mode {mode!r}")


# --- configuration ------------------------------------------------------------

RoutingRule = tuple[tuple[int, ...], str]  # (digit prefix, processor id)


@dataclass(frozen=True)
class AgentConfig:
    agent_id: str
    space: MetricSpec
    model_level: int = 3
    processors: tuple[ProcessorSpec, ...] = ()
    routing: tuple[RoutingRule, ...] = ()
    interest_db: tuple[MentalPoint, ...] = ()
    interdiction_db: tuple[MentalPoint, ...] = ()
    thresholds: Thresholds = Thresholds(realization=0.0, preserving=0.9)
    profile: EmotionProfile = NORMAL
    collector: CollectorConfig = CollectorConfig()
    unconscious: UnconsciousConfig = UnconsciousConfig()
    learning: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.agent_id:
            raise ValueError("agent_id must be non-empty")
        if self.model_level not in (1, 2, 3, 4):
            raise ValueError(f"model_level must be 1..4, got {self.model_level}")
        if not self.processors:
            raise ValueError("an agent needs at least one processor")
        ids = [proc.id for proc in self.processors]
        if len(set(ids)) != len(ids):
            raise ValueError("processor ids must be unique")
        if not any(p.output_target is OutputTarget.SCC for p in self.processors):
            raise ValueError("at least one processor must target SCC")
        k = self.space.floor_measure
        for proc in self.processors:
            if proc.blocking_threshold is not None and proc.blocking_threshold < k:
                raise ValueError(
                    f"processor {proc.id}: blocking_threshold below the floor "
                    f"measure {k} would block everything"
                )
        known = set(ids)
        seen_prefixes: set[tuple[int, ...]] = set()
        for prefix, target in self.routing:
            if not prefix or len(prefix) > self.space.m:
                raise ValueError(f"routing prefix {prefix!r} has bad length")
            if any(not 0 <= d < self.space.p for d in prefix):
                raise ValueError(f"routing prefix {prefix!r} has out-of-base digits")
            if prefix in seen_prefixes:
                raise ValueError(f"duplicate routing prefix {prefix!r}")
            seen_prefixes.add(prefix)
            if target not in known:
                raise ValueError(f"routing target {target!r} is not a processor id")
        for point in (*self.interest_db, *self.interdiction_db):
            self.space.check_point(point)


# --- metrics -------------------------------------------------------------------

_COUNTED: dict[EventKind, str] = {
    EventKind.REALIZED: "realizations",
    EventKind.SYMPTOM: "symptoms",
    EventKind.REPRESSED: "repressions",
    EventKind.BLOCKED: "blocks",
    EventKind.PURGED: "purges",
    EventKind.NO_SOLUTION: "no_solutions",
    EventKind.DISCARDED: "discards",
    EventKind.QUEUED: "queued",
    EventKind.LEAKED: "leaks",
}

COUNTER_KEYS = tuple(_COUNTED.values())


@dataclass
class AgentMetrics:
    """Running tallies, fed one event at a time."""

    counts: dict[str, int] = field(
        default_factory=lambda: {key: 0 for key in COUNTER_KEYS}
    )
    pleasure_sum: float = 0.0
    pleasure_count: int = 0

    def observe(self, event: Event) -> None:
        key = _COUNTED.get(event.kind)
        if key is not None:
            self.counts[key] += 1
        if event.kind in (EventKind.REALIZED, EventKind.SYMPTOM):
            if event.measures is not None and event.measures.pleasure is not None:
                self.pleasure_sum += event.measures.pleasure
                self.pleasure_count += 1

    @property
    def mean_pleasure(self) -> float | None:
        if self.pleasure_count == 0:
            return None
        return self.pleasure_sum / self.pleasure_count

    def snapshot(self) -> dict:
        return {**self.counts, "mean_pleasure": self.mean_pleasure}


# --- the agent -------------------------------------------------------------------

class PsychotAgent:
    """Event-sourced agent; methods other than tick() run between ticks."""

    def __init__(self, config: AgentConfig) -> None:
        self.config = config
        self.space = config.space
        self.current_tick = 0
        self.events: list[Event] = []
        self.thresholds = config.thresholds
        self.profile = config.profile
        self.interest_db = Database("interest", self.space, config.interest_db)
        self.interdiction_db = Database(
            "interdiction", self.space, config.interdiction_db
        )
        self.collector = Collector(config.collector)
        self.repressed = RepressedCollector(self.space)
        self.rng = random.Random(config.seed)
        self.metrics = AgentMetrics()
        self.ideas: dict[str, Idea] = {}
        self._procs = {proc.id: proc for proc in config.processors}
        self._scc_procs = [
            proc for proc in config.processors
            if proc.output_target is OutputTarget.SCC
        ]
        self._routing = sorted(config.routing, key=lambda r: -len(r[0]))
        self._pending: list[tuple[str, str]] = []  # (idea_id, processor_id)
        self._chain_counts: dict[str, int] = {}
        self._seq = 0
        self._idea_counter = 0
        self._stimulus_cursor = 0
        self._dispatch_cursor = 0

    # -- plumbing --

    def _emit(self, kind: EventKind, **fields) -> Event:
        event = Event(
            tick=self.current_tick, seq=self._seq, agent_id=self.config.agent_id,
            kind=kind, **fields,
        )
        self._seq += 1
        self.events.append(event)
        self.metrics.observe(event)
        return event

    def _new_idea(self, point: MentalPoint, origin: IdeaOrigin,
                  root_wish_id: str | None = None) -> Idea:
        self._idea_counter += 1
        idea = Idea(
            idea_id=f"i{self._idea_counter:04d}",
            point=point,
            origin=origin,
            created_tick=self.current_tick,
            root_wish_id=root_wish_id,
        )
        self.ideas[idea.idea_id] = idea
        return idea

    def _route_stimulus(self, point: MentalPoint) -> ProcessorSpec:
        for prefix, target in self._routing:
            if point.digits[: len(prefix)] == prefix:
                return self._procs[target]
        proc = self._scc_procs[self._stimulus_cursor % len(self._scc_procs)]
        self._stimulus_cursor += 1
        return proc

    def _next_dispatch_proc(self) -> ProcessorSpec:
        procs = self.config.processors
        proc = procs[self._dispatch_cursor % len(procs)]
        self._dispatch_cursor += 1
        return proc

    # -- input --

    def inject_stimulus(self, stimulus: str | MentalPoint, mode: str = "auto") -> Idea:
        """Encode a stimulus, mint an idea and dispatch it for the next tick."""
        if isinstance(stimulus, MentalPoint):
            self.space.check_point(stimulus)
            point = stimulus
        else:
            point = encode_stimulus(self.space, stimulus, mode)
        idea = self._new_idea(point, IdeaOrigin.stimulus())
        self._emit(EventKind.STIMULUS_ENCODED, idea_id=idea.idea_id, point=str(point))
        proc = self._route_stimulus(point)
        self._emit(
            EventKind.DISPATCHED,
            idea_id=idea.idea_id, point=str(point), processor_id=proc.id,
        )
        self._pending.append((idea.idea_id, proc.id))
        return idea

    def apply_config_patch(
        self,
        thresholds: Thresholds | None = None,
        profile: EmotionProfile | None = None,
    ) -> Event:
        """Swap analyzer set points between ticks, leaving a log marker."""
        if thresholds is not None:
            self.thresholds = thresholds
        if profile is not None:
            self.profile = profile
        return self._emit(
            EventKind.CONFIG_CHANGED,
            config={
                "thresholds": {
                    "realization": self.thresholds.realization,
                    "preserving": self.thresholds.preserving,
                    "max_interest": self.thresholds.max_interest,
                    "max_interdiction": self.thresholds.max_interdiction,
                },
                "profile": {"a": self.profile.a, "b": self.profile.b},
            },
        )

    # -- the tick --

    def tick(self) -> list[Event]:
        """Run one tick; returns the events it produced."""
        start = len(self.events)
        work: deque[tuple[str, str]] = deque(self._pending)
        self._pending = []
        self._chain_counts = {}

        # phase 1: leaks
        if self.config.model_level == 4:
            leaked = self.repressed.select_leaks(
                self.config.unconscious.leak_rate, self.rng
            )
            for wish in leaked:
                idea = self._new_idea(
                    wish.point, IdeaOrigin.leak(wish.idea_id),
                    root_wish_id=wish.idea_id,
                )
                self._emit(
                    EventKind.LEAKED,
                    idea_id=idea.idea_id, point=str(wish.point),
                    root_wish_id=wish.idea_id,
                )
                proc = self._next_dispatch_proc()
                self._emit(
                    EventKind.DISPATCHED,
                    idea_id=idea.idea_id, point=str(idea.point),
                    processor_id=proc.id, root_wish_id=idea.root_wish_id,
                )
                work.append((idea.idea_id, proc.id))

        # phase 2: thinking
        while work:
            idea_id, proc_id = work.popleft()
            idea = self.ideas[idea_id]
            proc = self._procs[proc_id]
            outcome = iterate(self.space, proc, idea.point)
            if not isinstance(outcome, Attractor):
                self._emit(
                    EventKind.NO_SOLUTION,
                    idea_id=idea.idea_id, point=str(idea.point),
                    processor_id=proc.id, root_wish_id=idea.root_wish_id,
                )
                continue
            idea.point = outcome.point
            self._emit(
                EventKind.ATTRACTOR_FOUND,
                idea_id=idea.idea_id, point=str(idea.point),
                processor_id=proc.id, root_wish_id=idea.root_wish_id,
            )
            if proc.output_target is OutputTarget.INTERNAL:
                self._redispatch_same_tick(idea, proc, work)
            elif proc.output_target is OutputTarget.UC:
                idea.uc_visits += 1
                if idea.uc_visits % 2 == 1:
                    self._redispatch_same_tick(idea, proc, work)
                else:
                    self._emit(
                        EventKind.UNCONSCIOUS_PERFORMANCE,
                        idea_id=idea.idea_id, point=str(idea.point),
                        processor_id=proc.id, root_wish_id=idea.root_wish_id,
                    )
            else:
                self._deliver_to_collector(idea, proc)

        # phase 3: decay
        purged = self.collector.decay(1.0, self.thresholds.realization)
        for item in purged:
            pidea = self.ideas[item.idea_id]
            self._emit(
                EventKind.PURGED,
                idea_id=item.idea_id, point=str(pidea.point),
                measures=Measures(score=item.score),
                root_wish_id=pidea.root_wish_id,
            )

        # phase 4: realization
        for item in self.collector.pop_for_realization():
            self._realize(self.ideas[item.idea_id], item.score)

        self.current_tick += 1
        return self.events[start:]

    # -- tick internals --

    def _redispatch_same_tick(
        self, idea: Idea, producer: ProcessorSpec, work: deque
    ) -> None:
        count = self._chain_counts.get(idea.idea_id, 0)
        if count >= CHAIN_CAP:
            self._emit(
                EventKind.NO_SOLUTION,
                idea_id=idea.idea_id, point=str(idea.point),
                processor_id=producer.id, root_wish_id=idea.root_wish_id,
            )
            return
        self._chain_counts[idea.idea_id] = count + 1
        target = self._next_dispatch_proc()
        self._emit(
            EventKind.REDISPATCH,
            idea_id=idea.idea_id, point=str(idea.point),
            root_wish_id=idea.root_wish_id,
        )
        self._emit(
            EventKind.DISPATCHED,
            idea_id=idea.idea_id, point=str(idea.point),
            processor_id=target.id, root_wish_id=idea.root_wish_id,
        )
        work.append((idea.idea_id, target.id))

    def _deliver_to_collector(self, idea: Idea, proc: ProcessorSpec) -> None:
        level = self.config.model_level
        if level == 1:
            self._realize(idea, queued_score=None)
            return
        if level == 4 and resistance_blocks(
            self.space, idea.point, self.repressed.hidden_db, proc.blocking_threshold
        ):
            self._emit(
                EventKind.BLOCKED,
                idea_id=idea.idea_id, point=str(idea.point),
                processor_id=proc.id, root_wish_id=idea.root_wish_id,
            )
            return
        interest = interest_measure(self.space, idea.point, self.interest_db)
        interdiction = (
            interdiction_measure(self.space, idea.point, self.interdiction_db)
            if level >= 3
            else None
        )
        pleasure = pleasure_reality(interest, interdiction, self.profile, level)
        disposition = classify(
            interest, interdiction, self.profile, self.thresholds, level
        )
        if disposition.kind is DispositionKind.DOUBTFUL:
            self._handle_doubt(
                idea, Measures(interest=interest, interdiction=interdiction,
                               pleasure=pleasure),
            )
            return
        measures = Measures(
            interest=interest, interdiction=interdiction,
            score=disposition.score, pleasure=pleasure,
        )
        if disposition.kind is DispositionKind.DISCARD:
            self._emit(
                EventKind.DISCARDED,
                idea_id=idea.idea_id, point=str(idea.point),
                measures=measures, root_wish_id=idea.root_wish_id,
            )
            return
        idea.measures = measures
        item = QueuedIdea(
            idea_id=idea.idea_id,
            score=disposition.score if disposition.score is not None else 0.0,
            pinned=disposition.pinned,
            enqueued_tick=self.current_tick,
        )
        try:
            evicted = self.collector.enqueue(item)
        except CapacityExhaustedByPinned:
            self._emit(
                EventKind.DISCARDED,
                idea_id=idea.idea_id, point=str(idea.point),
                measures=measures, root_wish_id=idea.root_wish_id,
            )
            return
        self._emit(
            EventKind.QUEUED,
            idea_id=idea.idea_id, point=str(idea.point),
            measures=measures, root_wish_id=idea.root_wish_id,
        )
        for victim in evicted:
            videa = self.ideas[victim.idea_id]
            self._emit(
                EventKind.DISCARDED,
                idea_id=victim.idea_id, point=str(videa.point),
                measures=Measures(score=victim.score),
                root_wish_id=videa.root_wish_id,
            )

    def _handle_doubt(self, idea: Idea, measures: Measures) -> None:
        if idea.retry_count < self.config.unconscious.retry_attempts:
            idea.retry_count += 1
            target = self._next_dispatch_proc()
            self._emit(
                EventKind.REDISPATCH,
                idea_id=idea.idea_id, point=str(idea.point),
                measures=measures, root_wish_id=idea.root_wish_id,
            )
            self._emit(
                EventKind.DISPATCHED,
                idea_id=idea.idea_id, point=str(idea.point),
                processor_id=target.id, root_wish_id=idea.root_wish_id,
            )
            self._pending.append((idea.idea_id, target.id))  # next tick, phase 2
            return
        self.repressed.repress(idea.idea_id, idea.point, self.current_tick)
        self._emit(
            EventKind.REPRESSED,
            idea_id=idea.idea_id, point=str(idea.point),
            measures=measures, root_wish_id=idea.root_wish_id,
        )

    def _realize(self, idea: Idea, queued_score: float | None) -> None:
        kind = EventKind.SYMPTOM if idea.root_wish_id else EventKind.REALIZED
        measures = None
        if idea.measures is not None:
            measures = Measures(
                interest=idea.measures.interest,
                interdiction=idea.measures.interdiction,
                score=queued_score,
                pleasure=idea.measures.pleasure,
            )
        self._emit(
            kind,
            idea_id=idea.idea_id, point=str(idea.point),
            measures=measures, root_wish_id=idea.root_wish_id,
        )
        if self.config.learning:
            self.interest_db.add(idea.point)

    # -- views --

    def events_since(self, cursor: int) -> list[Event]:
        return self.events[cursor:]

    def snapshot(self) -> dict:
        """JSON-ready view of everything observable between ticks."""
        return {
            "agent_id": self.config.agent_id,
            "tick": self.current_tick,
            "model_level": self.config.model_level,
            "queue": self.collector.snapshot(self.current_tick),
            "repressed": self.repressed.snapshot(self.current_tick),
            "databases": {
                "interest": self.interest_db.snapshot(),
                "interdiction": self.interdiction_db.snapshot(),
                "hidden_wishes": self.repressed.hidden_db.snapshot(),
            },
            "thresholds": {
                "realization": self.thresholds.realization,
                "preserving": self.thresholds.preserving,
                "max_interest": self.thresholds.max_interest,
                "max_interdiction": self.thresholds.max_interdiction,
            },
            "profile": {"a": self.profile.a, "b": self.profile.b},
            "metrics": self.metrics.snapshot(),
        }
