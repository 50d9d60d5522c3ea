"""Regenerate the recorded protocol fixtures under fixtures/protocol/.

The fixtures capture one full service session over the symptom pathway
scenario: the per-tick advance batches a streaming client would see, the
per-tick state snapshots, and the final persisted log. Both the Python
tests and the console tests parse these same bytes.

Run from the repository root:

    python3 fixtures/regen_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from psychot.service import create_app

ROOT = Path(__file__).resolve().parent
SCENARIO = ROOT / "scenarios" / "symptom_pathway.yaml"
OUT_DIR = ROOT / "protocol"
RUN_TICKS = 6


def record() -> dict[str, str]:
    text = SCENARIO.read_text()
    with TestClient(create_app()) as client:
        created = client.post("/create-session", json={"scenario": text}).json()
        sid = created["session_id"]
        batches = []
        states = []
        cursor = 0
        for _ in range(RUN_TICKS):
            body = client.post(
                "/advance", json={"session_id": sid, "ticks": 1, "cursor": cursor}
            ).json()
            batches.append(
                {"tick": body["tick"], "cursor": body["cursor"], "events": body["events"]}
            )
            cursor = body["cursor"]
            state = client.get("/get-state", params={"session_id": sid}).json()
            states.append(
                {"tick": state["tick"], "cursor": state["cursor"], "agents": state["agents"]}
            )
        log_text = client.post("/end-session", json={"session_id": sid}).json()["log"]

    stream = {"scenario": SCENARIO.name, "run_ticks": RUN_TICKS, "batches": batches}
    snapshots = {"scenario": SCENARIO.name, "states": states}
    return {
        "symptom_run.jsonl": log_text,
        "symptom_stream.json": json.dumps(stream, indent=2) + "\n",
        "symptom_snapshots.json": json.dumps(snapshots, indent=2) + "\n",
    }


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, content in record().items():
        target = OUT_DIR / name
        target.write_text(content, encoding="utf-8")
        print(f"wrote {target} ({len(content)} bytes)")


if __name__ == "__main__":
    main()
