"""psychot: a deterministic engine for agents that think in metric spaces.

Ideas are points of a finite metric space; thinking is the iteration of maps
toward attractors; a subconscious pipeline weighs every attractor for
interest and interdiction, queues what is consistent, represses what is
doubtful, and lets repressed wishes leak back as symptoms. Runs are
event-sourced and replayable byte for byte.
"""

from .affect import (
    ADRENALINE,
    NORMAL,
    PROFILE_PRESETS,
    RISKY,
    Disposition,
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
from .agent import (
    AgentConfig,
    AgentMetrics,
    Event,
    EventKind,
    Idea,
    IdeaOrigin,
    Measures,
    PsychotAgent,
    encode_label,
    encode_stimulus,
)
from .collector import (
    CapacityExhaustedByPinned,
    Collector,
    CollectorConfig,
    QueuedIdea,
)
from .dynamics import (
    AffineMap,
    Attractor,
    Cycle,
    Exhausted,
    MonomialMap,
    OutputTarget,
    PrefixRewriteMap,
    ProcessorSpec,
    apply,
    int_to_point,
    iterate,
    point_to_int,
)
from .simulation import (
    RunReport,
    Scenario,
    ScenarioError,
    SimulationRun,
    StimulusCommand,
    analyze,
    derive_agent_seed,
    load_scenario,
    load_scenario_file,
    parse_log,
    replay,
    run,
    serialize_log,
)
from .space import (
    Database,
    InvalidPointError,
    MentalPoint,
    MetricKind,
    MetricSpec,
    distance,
    distance_to_set,
)
from .unconscious import (
    DuplicateWishError,
    RepressedCollector,
    RepressedWish,
    UnconsciousConfig,
    resistance_blocks,
    unconscious_nearness,
)

__version__ = "0.1.0"
