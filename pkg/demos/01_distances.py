"""Tour of mental spaces: points, two metrics, and idea databases."""

from __future__ import annotations

from psychot.space import Database, MetricKind, MetricSpec, distance, distance_to_set


def main() -> None:
    tree = MetricSpec(kind=MetricKind.PREFIX_ULTRAMETRIC, p=2, m=4)
    flat = MetricSpec(kind=MetricKind.HAMMING, p=2, m=4)

    print(f"space: {tree.p}^{tree.m} = {tree.size} ideas")
    print(f"tree metric diameter {tree.diameter}, floor measure {tree.floor_measure}")
    print(f"hamming diameter {flat.diameter}, floor measure {flat.floor_measure:.3f}")
    print()

    a = tree.parse_point("0110")
    b = tree.parse_point("0111")
    c = tree.parse_point("1110")
    print("under the tree metric, ideas sharing a long prefix are close:")
    print(f"  d({a}, {b}) = {distance(tree, a, b)}   (agree on 3 leading digits)")
    print(f"  d({a}, {c}) = {distance(tree, a, c)}   (split at the first digit)")
    print("the flat metric counts differing positions instead:")
    print(f"  d({a}, {b}) = {distance(flat, a, b)}")
    print(f"  d({a}, {c}) = {distance(flat, a, c)}")
    print()

    wants = Database("interesting", tree)
    for text in ("0000", "0110", "1111"):
        wants.add(tree.parse_point(text))
    probe = tree.parse_point("0100")
    print(f"database {wants.name!r} holds {len(wants)} ideas")
    print(f"nearest of them to {probe}: {distance_to_set(tree, probe, list(wants))}")


if __name__ == "__main__":
    main()
