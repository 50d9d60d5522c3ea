"""Scenario files, multi-agent runs, log serialization, analysis, replay.

A scenario (YAML) fixes everything a run depends on: the space, the agents,
a stimulus schedule, the coupling mode and the master seed. run() executes
it; the resulting event log (JSON lines, one header line then one event per
line) is the complete record: analyze() rebuilds the run report from the
log alone, and replay() re-executes the log's recorded inputs to reproduce
the run, byte for byte, without the original schedule.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from typing import Any, Iterable

import yaml

from .affect import (
    PROFILE_PRESETS,
    EmotionProfile,
    Thresholds,
)
from .agent import (
    _COUNTED,
    COUNTER_KEYS,
    AgentConfig,
    Event,
    EventKind,
    PsychotAgent,
)
from .collector import CollectorConfig
from .dynamics import (
    AffineMap,
    MapSpec,
    MonomialMap,
    OutputTarget,
    PrefixRewriteMap,
    ProcessorSpec,
)
from .space import InvalidPointError, MentalPoint, MetricKind, MetricSpec
from .unconscious import UnconsciousConfig

LOG_FORMAT_VERSION = 1

COUPLING_MODES = ("none", "broadcast")


class ScenarioError(ValueError):
    """A scenario file failed validation; .field names the offending path."""

    def __init__(self, field_path: str, message: str) -> None:
        self.field = field_path
        super().__init__(f"{field_path}: {message}")


@dataclass(frozen=True)
class StimulusCommand:
    tick: int
    agent_id: str
    stimulus: str
    mode: str = "auto"


@dataclass(frozen=True)
class Scenario:
    space: MetricSpec
    agents: tuple[AgentConfig, ...]
    schedule: tuple[StimulusCommand, ...] = ()
    coupling: str = "none"
    run_ticks: int = 10
    seed: int = 0


def derive_agent_seed(scenario_seed: int, agent_id: str) -> int:
    """Per-agent rng seed: first 8 bytes of sha256("{seed}:{agent_id}")."""
    digest = hashlib.sha256(f"{scenario_seed}:{agent_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


# --- scenario parsing -------------------------------------------------------

def _require_mapping(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise ScenarioError(path, f"expected a mapping, got {type(value).__name__}")
    return value


def _require_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ScenarioError(path, f"expected a list, got {type(value).__name__}")
    return value


def _require_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise ScenarioError(
            path,
            f"expected a string, got {type(value).__name__} "
            "(quote digit strings so they stay text)",
        )
    return value


def _require_int(value: Any, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScenarioError(path, f"expected an integer, got {value!r}")
    return value


def _require_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(path, f"expected a number, got {value!r}")
    return float(value)


def _parse_metric(data: Any, path: str) -> MetricSpec:
    mapping = _require_mapping(data, path)
    kind_name = mapping.get("kind", "PrefixUltrametric")
    try:
        kind = MetricKind(kind_name)
    except ValueError:
        choices = ", ".join(k.value for k in MetricKind)
        raise ScenarioError(f"{path}.kind", f"unknown metric {kind_name!r} (one of: {choices})")
    try:
        return MetricSpec(
            kind=kind,
            p=_require_int(mapping.get("p", 2), f"{path}.p"),
            m=_require_int(mapping.get("m", 3), f"{path}.m"),
        )
    except ValueError as exc:
        raise ScenarioError(path, str(exc)) from exc


def _parse_point(space: MetricSpec, value: Any, path: str) -> MentalPoint:
    text = _require_str(value, path)
    try:
        return space.parse_point(text)
    except InvalidPointError as exc:
        raise ScenarioError(path, str(exc)) from exc


def _parse_prefix(space: MetricSpec, value: Any, path: str) -> tuple[int, ...]:
    text = _require_str(value, path)
    if not text or len(text) > space.m:
        raise ScenarioError(path, f"prefix must have 1..{space.m} digits")
    try:
        return MentalPoint.from_string(text, space.p).digits
    except InvalidPointError as exc:
        raise ScenarioError(path, str(exc)) from exc


def _parse_map(space: MetricSpec, data: Any, path: str) -> MapSpec:
    mapping = _require_mapping(data, path)
    kind = mapping.get("kind")
    try:
        if kind == "monomial":
            return MonomialMap(n=_require_int(mapping.get("n"), f"{path}.n"))
        if kind == "affine":
            a = _require_int(mapping.get("a"), f"{path}.a")
            b = _require_int(mapping.get("b"), f"{path}.b")
            if not 0 <= a < space.size or not 0 <= b < space.size:
                raise ScenarioError(path, f"coefficients must lie in [0, {space.size})")
            return AffineMap(a=a, b=b)
        if kind == "prefix_rewrite":
            rules = []
            for i, rule in enumerate(_require_list(mapping.get("rules", []), f"{path}.rules")):
                rule_map = _require_mapping(rule, f"{path}.rules[{i}]")
                pattern = _parse_prefix(space, rule_map.get("from"), f"{path}.rules[{i}].from")
                replacement = _parse_prefix(space, rule_map.get("to"), f"{path}.rules[{i}].to")
                rules.append((pattern, replacement))
            return PrefixRewriteMap(rules=tuple(rules))
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(path, str(exc)) from exc
    raise ScenarioError(
        f"{path}.kind",
        f"unknown map kind {kind!r} (one of: monomial, affine, prefix_rewrite)",
    )


def _parse_processor(space: MetricSpec, data: Any, path: str) -> ProcessorSpec:
    mapping = _require_mapping(data, path)
    target_name = mapping.get("output_target", "SCC")
    try:
        target = OutputTarget(target_name)
    except ValueError:
        choices = ", ".join(t.value for t in OutputTarget)
        raise ScenarioError(
            f"{path}.output_target", f"unknown target {target_name!r} (one of: {choices})"
        )
    blocking = mapping.get("blocking_threshold")
    if blocking is not None:
        blocking = _require_number(blocking, f"{path}.blocking_threshold")
    max_steps = mapping.get("max_steps")
    if max_steps is not None:
        max_steps = _require_int(max_steps, f"{path}.max_steps")
    try:
        return ProcessorSpec(
            id=_require_str(mapping.get("id", ""), f"{path}.id"),
            map=_parse_map(space, mapping.get("map"), f"{path}.map"),
            output_target=target,
            blocking_threshold=blocking,
            max_steps=max_steps,
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(path, str(exc)) from exc


def _parse_thresholds(data: Any, path: str) -> Thresholds:
    mapping = _require_mapping(data, path)
    kwargs = {}
    for name in ("realization", "preserving", "max_interest", "max_interdiction"):
        if name in mapping:
            kwargs[name] = _require_number(mapping[name], f"{path}.{name}")
    if "realization" not in kwargs or "preserving" not in kwargs:
        raise ScenarioError(path, "realization and preserving are required")
    try:
        return Thresholds(**kwargs)
    except ValueError as exc:
        raise ScenarioError(path, str(exc)) from exc


def _parse_profile(data: Any, path: str) -> EmotionProfile:
    if isinstance(data, str):
        preset = PROFILE_PRESETS.get(data.lower())
        if preset is None:
            choices = ", ".join(sorted(PROFILE_PRESETS))
            raise ScenarioError(path, f"unknown profile {data!r} (one of: {choices})")
        return preset
    mapping = _require_mapping(data, path)
    try:
        return EmotionProfile(
            a=_require_number(mapping.get("a"), f"{path}.a"),
            b=_require_number(mapping.get("b"), f"{path}.b"),
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(path, str(exc)) from exc


def _parse_agent(
    space: MetricSpec, data: Any, path: str, scenario_seed: int
) -> AgentConfig:
    mapping = _require_mapping(data, path)
    agent_id = _require_str(mapping.get("id", ""), f"{path}.id")
    if not agent_id:
        raise ScenarioError(f"{path}.id", "agent id must be non-empty")

    processors = tuple(
        _parse_processor(space, proc, f"{path}.processors[{i}]")
        for i, proc in enumerate(
            _require_list(mapping.get("processors", []), f"{path}.processors")
        )
    )

    routing = []
    for i, rule in enumerate(_require_list(mapping.get("routing", []), f"{path}.routing")):
        rule_map = _require_mapping(rule, f"{path}.routing[{i}]")
        prefix = _parse_prefix(space, rule_map.get("prefix"), f"{path}.routing[{i}].prefix")
        target = _require_str(rule_map.get("processor", ""), f"{path}.routing[{i}].processor")
        routing.append((prefix, target))

    def parse_db(key: str) -> tuple[MentalPoint, ...]:
        return tuple(
            _parse_point(space, item, f"{path}.{key}[{i}]")
            for i, item in enumerate(_require_list(mapping.get(key, []), f"{path}.{key}"))
        )

    kwargs: dict[str, Any] = {}
    if "thresholds" in mapping:
        kwargs["thresholds"] = _parse_thresholds(mapping["thresholds"], f"{path}.thresholds")
    if "profile" in mapping:
        kwargs["profile"] = _parse_profile(mapping["profile"], f"{path}.profile")
    if "collector" in mapping:
        coll = _require_mapping(mapping["collector"], f"{path}.collector")
        try:
            kwargs["collector"] = CollectorConfig(
                capacity=_require_int(coll.get("capacity", 8), f"{path}.collector.capacity"),
                half_life_ticks=_require_number(
                    coll.get("half_life_ticks", 4.0), f"{path}.collector.half_life_ticks"
                ),
                realizations_per_tick=_require_int(
                    coll.get("realizations_per_tick", 1),
                    f"{path}.collector.realizations_per_tick",
                ),
            )
        except ValueError as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(f"{path}.collector", str(exc)) from exc
    if "unconscious" in mapping:
        unc = _require_mapping(mapping["unconscious"], f"{path}.unconscious")
        try:
            kwargs["unconscious"] = UnconsciousConfig(
                leak_rate=_require_number(
                    unc.get("leak_rate", 0.0), f"{path}.unconscious.leak_rate"
                ),
                retry_attempts=_require_int(
                    unc.get("retry_attempts", 2), f"{path}.unconscious.retry_attempts"
                ),
            )
        except ValueError as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(f"{path}.unconscious", str(exc)) from exc

    learning = mapping.get("learning", False)
    if not isinstance(learning, bool):
        raise ScenarioError(f"{path}.learning", f"expected a boolean, got {learning!r}")

    try:
        return AgentConfig(
            agent_id=agent_id,
            space=space,
            model_level=_require_int(mapping.get("model_level", 3), f"{path}.model_level"),
            processors=processors,
            routing=tuple(routing),
            interest_db=parse_db("interest_db"),
            interdiction_db=parse_db("interdiction_db"),
            learning=learning,
            seed=derive_agent_seed(scenario_seed, agent_id),
            **kwargs,
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(path, str(exc)) from exc


def load_scenario(text: str) -> Scenario:
    """Parse and validate a YAML scenario; errors carry the field path."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError("<document>", f"not valid YAML: {exc}") from exc
    mapping = _require_mapping(data, "<document>")

    space = _parse_metric(mapping.get("metric", {}), "metric")
    seed = _require_int(mapping.get("seed", 0), "seed")
    run_ticks = _require_int(mapping.get("run_ticks", 10), "run_ticks")
    if run_ticks < 0:
        raise ScenarioError("run_ticks", "must be >= 0")
    coupling = mapping.get("coupling", "none")
    if coupling not in COUPLING_MODES:
        raise ScenarioError(
            "coupling", f"unknown mode {coupling!r} (one of: {', '.join(COUPLING_MODES)})"
        )

    agent_entries = _require_list(mapping.get("agents", []), "agents")
    if not agent_entries:
        raise ScenarioError("agents", "at least one agent is required")
    agents = tuple(
        _parse_agent(space, entry, f"agents[{i}]", seed)
        for i, entry in enumerate(agent_entries)
    )
    ids = [cfg.agent_id for cfg in agents]
    if len(set(ids)) != len(ids):
        raise ScenarioError("agents", "agent ids must be unique")

    schedule = []
    for i, entry in enumerate(_require_list(mapping.get("stimuli", []), "stimuli")):
        entry_map = _require_mapping(entry, f"stimuli[{i}]")
        tick = _require_int(entry_map.get("tick"), f"stimuli[{i}].tick")
        if not 0 <= tick < run_ticks:
            raise ScenarioError(f"stimuli[{i}].tick", f"must lie in [0, {run_ticks})")
        agent_id = _require_str(entry_map.get("agent", ""), f"stimuli[{i}].agent")
        if agent_id not in ids:
            raise ScenarioError(f"stimuli[{i}].agent", f"unknown agent {agent_id!r}")
        given = [key for key in ("stimulus", "point", "label") if key in entry_map]
        if len(given) != 1:
            raise ScenarioError(
                f"stimuli[{i}]", "exactly one of stimulus/point/label is required"
            )
        key = given[0]
        value = _require_str(entry_map[key], f"stimuli[{i}].{key}")
        mode = {"stimulus": "auto", "point": "point", "label": "label"}[key]
        if mode == "point":
            _parse_point(space, value, f"stimuli[{i}].point")
        schedule.append(
            StimulusCommand(tick=tick, agent_id=agent_id, stimulus=value, mode=mode)
        )

    return Scenario(
        space=space,
        agents=agents,
        schedule=tuple(schedule),
        coupling=coupling,
        run_ticks=run_ticks,
        seed=seed,
    )


def load_scenario_file(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as handle:
        return load_scenario(handle.read())


def apply_overrides(
    scenario: Scenario, run_ticks: int | None = None, seed: int | None = None
) -> Scenario:
    """Rebuild a scenario with a different tick count and/or master seed.

    A new seed re-derives every agent's rng seed the same way load_scenario
    does. Shrinking run_ticks below a scheduled stimulus is a validation
    error, mirroring the loader.
    """
    if run_ticks is None and seed is None:
        return scenario
    new_ticks = scenario.run_ticks if run_ticks is None else run_ticks
    if new_ticks < 0:
        raise ScenarioError("run_ticks", "must be >= 0")
    for i, cmd in enumerate(scenario.schedule):
        if cmd.tick >= new_ticks:
            raise ScenarioError(
                f"stimuli[{i}].tick", f"must lie in [0, {new_ticks}) after override"
            )
    new_seed = scenario.seed if seed is None else seed
    agents = scenario.agents
    if seed is not None:
        agents = tuple(
            replace(cfg, seed=derive_agent_seed(new_seed, cfg.agent_id))
            for cfg in scenario.agents
        )
    return Scenario(
        space=scenario.space,
        agents=agents,
        schedule=scenario.schedule,
        coupling=scenario.coupling,
        run_ticks=new_ticks,
        seed=new_seed,
    )


# --- reports -----------------------------------------------------------------

@dataclass
class AgentReport:
    counts: dict[str, int]
    mean_pleasure: tuple[float | None, ...]
    queue_depth: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "counts": dict(self.counts),
            "mean_pleasure": list(self.mean_pleasure),
            "queue_depth": list(self.queue_depth),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AgentReport":
        return cls(
            counts=dict(data["counts"]),
            mean_pleasure=tuple(data["mean_pleasure"]),
            queue_depth=tuple(data["queue_depth"]),
        )


@dataclass
class RunReport:
    run_ticks: int
    agents: dict[str, AgentReport]

    def to_dict(self) -> dict:
        return {
            "run_ticks": self.run_ticks,
            "agents": {aid: rep.to_dict() for aid, rep in self.agents.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        return cls(
            run_ticks=data["run_ticks"],
            agents={
                aid: AgentReport.from_dict(rep) for aid, rep in data["agents"].items()
            },
        )


# --- running -------------------------------------------------------------------

class SimulationRun:
    """Live multi-agent run; step() advances every agent by one tick."""

    def __init__(
        self,
        scenario: Scenario,
        enable_schedule: bool = True,
        enable_coupling: bool = True,
    ) -> None:
        self.scenario = scenario
        self.agents: dict[str, PsychotAgent] = {
            cfg.agent_id: PsychotAgent(cfg) for cfg in scenario.agents
        }
        self.tick = 0
        self._schedule_enabled = enable_schedule
        self._coupling_enabled = enable_coupling and scenario.coupling == "broadcast"
        self._schedule_by_tick: dict[int, list[StimulusCommand]] = {}
        for cmd in scenario.schedule:
            self._schedule_by_tick.setdefault(cmd.tick, []).append(cmd)
        self._pending_broadcast: list[tuple[str, MentalPoint]] = []
        self._agent_index = {cfg.agent_id: i for i, cfg in enumerate(scenario.agents)}

    def step(self) -> None:
        t = self.tick
        if self._schedule_enabled:
            for cmd in self._schedule_by_tick.get(t, ()):
                self.agents[cmd.agent_id].inject_stimulus(cmd.stimulus, cmd.mode)
        if self._pending_broadcast:
            for source_id, point in self._pending_broadcast:
                for agent_id, agent in self.agents.items():
                    if agent_id != source_id:
                        agent.inject_stimulus(point)
            self._pending_broadcast = []
        for agent_id, agent in self.agents.items():
            produced = agent.tick()
            if self._coupling_enabled:
                for event in produced:
                    if event.kind in (EventKind.REALIZED, EventKind.SYMPTOM):
                        point = self.scenario.space.parse_point(event.point)
                        self._pending_broadcast.append((agent_id, point))
        self.tick += 1

    def merged_events(self) -> list[Event]:
        """All agents' events in canonical log order: (tick, agent, seq).

        Agents are ordered as configured, not alphabetically, so the merge
        matches the order in which a live service publishes them.
        """
        merged: list[Event] = []
        for agent in self.agents.values():
            merged.extend(agent.events)
        merged.sort(key=lambda ev: (ev.tick, self._agent_index[ev.agent_id], ev.seq))
        return merged

    def snapshots(self) -> dict[str, dict]:
        return {agent_id: agent.snapshot() for agent_id, agent in self.agents.items()}


@dataclass
class RunResult:
    scenario: Scenario
    events: list[Event]
    report: RunReport
    agents: dict[str, PsychotAgent]


def run(scenario: Scenario) -> RunResult:
    """Execute a scenario to completion, collecting the report as it goes."""
    sim = SimulationRun(scenario)
    depth: dict[str, list[int]] = {cfg.agent_id: [] for cfg in scenario.agents}
    pleasure: dict[str, list[float | None]] = {cfg.agent_id: [] for cfg in scenario.agents}
    for _ in range(scenario.run_ticks):
        sim.step()
        for agent_id, agent in sim.agents.items():
            depth[agent_id].append(len(agent.collector))
            pleasure[agent_id].append(agent.metrics.mean_pleasure)
    report = RunReport(
        run_ticks=scenario.run_ticks,
        agents={
            agent_id: AgentReport(
                counts=dict(agent.metrics.counts),
                mean_pleasure=tuple(pleasure[agent_id]),
                queue_depth=tuple(depth[agent_id]),
            )
            for agent_id, agent in sim.agents.items()
        },
    )
    return RunResult(
        scenario=scenario, events=sim.merged_events(), report=report, agents=sim.agents
    )


# --- log serialization ------------------------------------------------------------

def run_header(scenario: Scenario) -> dict:
    return {
        "kind": "RunHeader",
        "version": LOG_FORMAT_VERSION,
        "run_ticks": scenario.run_ticks,
        "seed": scenario.seed,
        "coupling": scenario.coupling,
        "metric": {
            "kind": scenario.space.kind.value,
            "p": scenario.space.p,
            "m": scenario.space.m,
        },
        "agents": [
            {"id": cfg.agent_id, "model_level": cfg.model_level}
            for cfg in scenario.agents
        ],
    }


def serialize_log(scenario: Scenario, events: Iterable[Event]) -> str:
    lines = [json.dumps(run_header(scenario), separators=(",", ":"))]
    lines.extend(event.to_json_line() for event in events)
    return "\n".join(lines) + "\n"


def parse_log(text: str) -> tuple[dict, list[Event]]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("log is empty")
    header = json.loads(lines[0])
    if header.get("kind") != "RunHeader":
        raise ValueError("log does not start with a RunHeader line")
    events = [Event.from_dict(json.loads(line)) for line in lines[1:]]
    return header, events


# --- analysis ---------------------------------------------------------------------

def analyze(log_text: str) -> RunReport:
    """Rebuild the run report from a serialized log alone.

    Queue depth is reconstructed by tracking which ideas are currently
    seated: Queued seats one, Realized/Symptom/Purged unseat it, and a
    Discarded unseats it only when it was seated (capacity eviction);
    analyzer discards and capacity rejections never seated the idea.
    """
    header, events = parse_log(log_text)
    run_ticks = header["run_ticks"]
    agent_ids = [entry["id"] for entry in header["agents"]]

    counts = {aid: {key: 0 for key in COUNTER_KEYS} for aid in agent_ids}
    seated: dict[str, set[str]] = {aid: set() for aid in agent_ids}
    pleasure_sum = {aid: 0.0 for aid in agent_ids}
    pleasure_count = {aid: 0 for aid in agent_ids}
    depth: dict[str, list[int]] = {aid: [] for aid in agent_ids}
    pleasure: dict[str, list[float | None]] = {aid: [] for aid in agent_ids}

    by_tick: dict[int, list[Event]] = {}
    for event in events:
        by_tick.setdefault(event.tick, []).append(event)

    for t in range(run_ticks):
        for event in by_tick.get(t, ()):
            aid = event.agent_id
            if aid not in counts:
                raise ValueError(f"event for unknown agent {aid!r}")
            key = _COUNTED.get(event.kind)
            if key is not None:
                counts[aid][key] += 1
            if event.kind is EventKind.QUEUED:
                seated[aid].add(event.idea_id)
            elif event.kind in (EventKind.REALIZED, EventKind.SYMPTOM):
                seated[aid].discard(event.idea_id)
                if event.measures is not None and event.measures.pleasure is not None:
                    pleasure_sum[aid] += event.measures.pleasure
                    pleasure_count[aid] += 1
            elif event.kind in (EventKind.PURGED, EventKind.DISCARDED):
                seated[aid].discard(event.idea_id)
        for aid in agent_ids:
            depth[aid].append(len(seated[aid]))
            pleasure[aid].append(
                pleasure_sum[aid] / pleasure_count[aid] if pleasure_count[aid] else None
            )

    return RunReport(
        run_ticks=run_ticks,
        agents={
            aid: AgentReport(
                counts=counts[aid],
                mean_pleasure=tuple(pleasure[aid]),
                queue_depth=tuple(depth[aid]),
            )
            for aid in agent_ids
        },
    )


# --- replay ------------------------------------------------------------------------

@dataclass
class ReplayResult:
    events: list[Event]
    snapshots: list[dict[str, dict]]  # one {agent_id: snapshot} per tick
    agents: dict[str, PsychotAgent]


def replay(scenario: Scenario, events: Iterable[Event], ticks: int | None = None) -> ReplayResult:
    """Re-execute a run from its event log.

    The log is the command source: every StimulusEncoded is re-injected (as
    a point) at its recorded tick and every ConfigChanged re-applied, in
    per-agent seq order. The scenario's own schedule and coupling stay off
    since their effects are already recorded as StimulusEncoded lines, so
    a replayed run emits the original event stream again exactly.
    """
    commands: dict[tuple[str, int], list[Event]] = {}
    max_tick = -1
    for event in events:
        max_tick = max(max_tick, event.tick)
        if event.kind in (EventKind.STIMULUS_ENCODED, EventKind.CONFIG_CHANGED):
            commands.setdefault((event.agent_id, event.tick), []).append(event)
    if ticks is None:
        ticks = max_tick + 1

    sim = SimulationRun(scenario, enable_schedule=False, enable_coupling=False)
    snapshots: list[dict[str, dict]] = []
    for t in range(ticks):
        for agent_id, agent in sim.agents.items():
            for command in commands.get((agent_id, t), ()):
                if command.kind is EventKind.STIMULUS_ENCODED:
                    agent.inject_stimulus(command.point, mode="point")
                else:
                    payload = command.config or {}
                    thresholds = payload.get("thresholds")
                    profile = payload.get("profile")
                    agent.apply_config_patch(
                        thresholds=Thresholds(**thresholds) if thresholds else None,
                        profile=EmotionProfile(**profile) if profile else None,
                    )
        sim.step()
        snapshots.append(sim.snapshots())
    return ReplayResult(
        events=sim.merged_events(), snapshots=snapshots, agents=sim.agents
    )
