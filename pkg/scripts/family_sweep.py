"""Compare the pipeline with the closed-form curves over a grid of family parameters."""

import argparse
from math import gcd

from quadric_weierstrass.families import (
    EulerInstance,
    KlmInstance,
    euler_curve,
    euler_quadrics,
    klm_curve,
    klm_quadrics,
)
from quadric_weierstrass.point_transport import run_full


def sweep_euler(bound: int) -> tuple[int, int, list]:
    literal = reduced = 0
    bad = []
    for M in range(-bound, bound + 1):
        for N in range(-bound, bound + 1):
            if M == 0 or N == 0 or M == N:
                continue
            inst = EulerInstance(M, N)
            curve = run_full(*euler_quadrics(inst)).curve
            if curve == euler_curve(inst):
                literal += 1
            elif curve == euler_curve(inst.reduced()):
                reduced += 1
            else:
                bad.append((M, N))
    return literal, reduced, bad


def sweep_klm(bound: int) -> tuple[int, int, list]:
    literal = reduced = 0
    bad = []
    for k in range(1, bound + 1):
        for l in range(1, bound + 1):  # noqa: E741
            for m in range(1, bound + 1):
                inst = KlmInstance(k, l, m)
                curve = run_full(*klm_quadrics(inst)).curve
                if curve == klm_curve(inst):
                    literal += 1
                elif gcd(k, l, m) > 1 and curve == klm_curve(inst.reduced()):
                    reduced += 1
                else:
                    bad.append((k, l, m))
    return literal, reduced, bad


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--euler-bound", type=int, default=12, help="|M|, |N| <= bound")
    parser.add_argument("--klm-bound", type=int, default=8, help="1 <= k, l, m <= bound")
    args = parser.parse_args()
    for name, (literal, reduced, bad) in (("euler", sweep_euler(args.euler_bound)),
                                          ("klm", sweep_klm(args.klm_bound))):
        print(f"{name}: {literal} literal, {reduced} via the reduced instance, {len(bad)} mismatches {bad[:5]}")


if __name__ == "__main__":
    main()
