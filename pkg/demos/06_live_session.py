"""Drive a live session over HTTP, then prove the log replays it exactly."""

from __future__ import annotations

import json
import socket
import threading
import time
import urllib.request
from pathlib import Path

import uvicorn

from psychot.service import create_app
from psychot.simulation import load_scenario, parse_log, replay

SCENARIO = Path(__file__).resolve().parent.parent / "fixtures" / "scenarios" / "symptom_pathway.yaml"


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def call(base: str, path: str, payload: dict | None = None) -> dict:
    if payload is None:
        request = urllib.request.Request(base + path)
    else:
        request = urllib.request.Request(
            base + path,
            data=json.dumps(payload).encode(),
            headers={"Content-Type": "application/json"},
        )
    with urllib.request.urlopen(request) as response:
        return json.loads(response.read())


def main() -> None:
    port = free_port()
    server = uvicorn.Server(
        uvicorn.Config(create_app(), host="127.0.0.1", port=port, log_level="error")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{port}"
    while not server.started:
        time.sleep(0.02)

    text = SCENARIO.read_text()
    session = call(base, "/create-session", {"scenario": text})
    sid = session["session_id"]
    print(f"session {sid} with agents {session['agents']}")

    snapshots = []
    for tick in range(6):
        if tick == 3:
            call(base, "/set-thresholds", {
                "session_id": sid,
                "agent_id": "anna",
                "thresholds": {"max_interest": 1.5, "max_interdiction": 1.5},
            })
            print("tick 3: raised both ceilings mid-session (what-if)")
        state = call(base, "/advance", {"session_id": sid, "ticks": 1})
        fresh = [e["kind"] for e in state["events"]]
        print(f"tick {state['tick'] - 1}: {len(fresh)} events  {fresh}")
        snapshots.append(call(base, f"/get-state?session_id={sid}")["agents"])

    log_text = call(base, "/end-session", {"session_id": sid})["log"]
    server.should_exit = True
    thread.join(timeout=5)

    header, events = parse_log(log_text)
    offline = replay(load_scenario(text), events, ticks=header["run_ticks"])
    matches = all(offline.snapshots[t] == snapshots[t] for t in range(6))
    print()
    print(f"recorded {len(events)} events; offline replay of the log")
    print(f"reproduces all 6 per-tick snapshots exactly: {matches}")


if __name__ == "__main__":
    main()
