"""The full pathway: a forbidden craving goes under and returns in disguise."""

from __future__ import annotations

from pathlib import Path

from psychot.simulation import load_scenario_file, run

SCENARIO = Path(__file__).resolve().parent.parent / "fixtures" / "scenarios" / "symptom_pathway.yaml"

NARRATION = {
    "StimulusEncoded": "a stimulus lands in the mental space",
    "Dispatched": "the idea is sent to a thinking processor",
    "AttractorFound": "thinking settles on a solution",
    "Repressed": "craved AND forbidden: the wish is buried, not decided",
    "Leaked": "the buried wish slips back into thinking",
    "Blocked": "the censor deletes a solution too close to a buried wish",
    "Queued": "the analyzer admits the idea to the waiting queue",
    "Symptom": "realized at last, but disguised and traceable to the wish",
    "Realized": "the idea is acted on",
}


def main() -> None:
    scenario = load_scenario_file(str(SCENARIO))
    result = run(scenario)

    print(f"running {SCENARIO.name}: {scenario.run_ticks} ticks, 1 agent")
    print()
    last_tick = -1
    for event in result.events:
        if event.tick != last_tick:
            print(f"--- tick {event.tick} ---")
            last_tick = event.tick
        gloss = NARRATION.get(event.kind.value, "")
        detail = f"{event.kind.value:22s} idea={event.idea_id} point={event.point}"
        if event.root_wish_id:
            detail += f" wish={event.root_wish_id}"
        print(f"  {detail}  {gloss}")

    anna = result.report.agents["anna"]
    print()
    print(f"totals: {anna.counts['repressions']} repressions, "
          f"{anna.counts['leaks']} leaks, {anna.counts['symptoms']} symptoms")
    print("every symptom names its wish: the disguise can always be unwound")


if __name__ == "__main__":
    main()
