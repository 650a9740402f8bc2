"""Update a uniform die to a chosen mean and inspect the result.

The posterior weights always form a geometric progression in the face
number; this prints the common ratio alongside the usual report.

Usage: python3 scripts/run_die_update.py [--mean 4.5] [--faces 6]
"""

import argparse

from relent import Distribution, Expectation, RandomVariable, SampleSpace, maxent_update
from relent.scenario import emit_report, fmt10


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mean", type=float, default=4.5)
    ap.add_argument("--faces", type=int, default=6)
    args = ap.parse_args()

    space = SampleSpace(tuple(f"face{k}" for k in range(1, args.faces + 1)))
    prior = Distribution.uniform(space)
    pips = RandomVariable(space, tuple(float(k) for k in range(1, args.faces + 1)))

    report = maxent_update(prior, [Expectation(pips, args.mean)])
    print(emit_report(report), end="")

    w = report.posterior.array
    ratios = [w[i + 1] / w[i] for i in range(len(w) - 1) if w[i] > 0]
    print(f"posterior mean: {fmt10(float(w @ pips.array))}")
    if ratios:
        print(f"weight ratio face(k+1)/face(k): {fmt10(ratios[0])}"
              f" (spread {fmt10(max(ratios) - min(ratios))})")


if __name__ == "__main__":
    main()
