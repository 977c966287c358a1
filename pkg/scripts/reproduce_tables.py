"""Print every intermediate table for the three worked instances."""

import argparse
import json
from pathlib import Path

from quadric_weierstrass.documents import parse_instance
from quadric_weierstrass.point_transport import run_full

ROOT = Path(__file__).resolve().parents[1]

INSTANCES = {
    "worked": json.loads((ROOT / "data" / "worked_example.json").read_text()),
    "euler": {"family": "euler", "M": 3, "N": 2},
    "klm": {"family": "klm", "k": 2, "l": 3, "m": 5},
}


def show(name: str, doc: dict) -> None:
    _, A, B, x = parse_instance(doc)
    trace = run_full(A, B, x)
    print(f"== {name}")
    print(f"{'C0':<15}{fmt(trace.quadrics.cubic)}")
    for s in trace.steps:
        flags = f"  [{', '.join(s.flags)}]" if s.flags else ""
        print(f"{s.name:<15}{fmt(s.cubic_after)}{flags}")
    print(f"{'final':<15}{trace.curve.factored() or trace.curve.equation()}\n")


def fmt(C) -> str:
    return "  ".join(f"{k}:{v}" for k, v in C.nonzero().items())


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", help=f"subset of {', '.join(INSTANCES)} (default: all)")
    args = parser.parse_args()
    unknown = set(args.names) - set(INSTANCES)
    if unknown:
        parser.error(f"unknown instance(s): {', '.join(sorted(unknown))}")
    for name in args.names or INSTANCES:
        show(name, INSTANCES[name])


if __name__ == "__main__":
    main()
