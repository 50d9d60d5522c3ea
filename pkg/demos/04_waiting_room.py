"""The waiting queue: scores fade tick by tick unless an idea is pinned."""

from __future__ import annotations

from psychot.collector import Collector, CollectorConfig, QueuedIdea

REALIZATION = 0.25


def main() -> None:
    collector = Collector(
        CollectorConfig(capacity=4, half_life_ticks=2.0, realizations_per_tick=0)
    )
    collector.enqueue(QueuedIdea("fleeting", score=0.8, pinned=False, enqueued_tick=0))
    collector.enqueue(QueuedIdea("precious", score=0.5, pinned=True, enqueued_tick=0))

    print("tick  fleeting  precious")
    for tick in range(1, 7):
        purged = collector.decay(1.0, realization_threshold=REALIZATION)
        scores = {item.idea_id: item.score for item in collector.peek()}
        fleeting = f"{scores['fleeting']:.3f}" if "fleeting" in scores else "gone"
        print(f"{tick:3d}   {fleeting:8s} {scores['precious']:.3f}")
        for item in purged:
            print(f"      tick {tick}: {item.idea_id} sank under {REALIZATION} and was purged")

    print()
    print("order is by score; a full queue evicts its weakest unpinned idea:")
    for name, score in (("alpha", 0.9), ("beta", 0.6), ("gamma", 0.3), ("delta", 0.7)):
        collector.enqueue(QueuedIdea(name, score=score, pinned=False, enqueued_tick=6))
    evicted = collector.enqueue(QueuedIdea("omega", score=0.65, pinned=False, enqueued_tick=7))
    print(f"  seated: {[item.idea_id for item in collector.peek()]}")
    print(f"  evicted on arrival of omega: {[item.idea_id for item in evicted]}")


if __name__ == "__main__":
    main()
