#!/usr/bin/env python3
"""Serial-number counting experiment.

Sweep the sample size for the take-the-maximum learner on uniform serials
1..N and compare the Monte Carlo failure rate against the closed form:
for epsilon = 1/4 the learner fails iff the largest draw is at most
floor((1 - 1/4) * N), so the failure probability is (that/N)^m.
"""

import argparse
from fractions import Fraction

from emx import (
    EmxLearner,
    FiniteSupportDistribution,
    enumerated_tower,
    enumeration_scheme,
    evaluate,
    naturals_domain,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--population", type=int, default=20)
    parser.add_argument("--trials", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=2027)
    parser.add_argument("--epsilon", default="1/4")
    args = parser.parse_args()

    epsilon = Fraction(args.epsilon)
    learner = EmxLearner(enumeration_scheme(enumerated_tower(naturals_domain())), d=1)
    dist = FiniteSupportDistribution.uniform(range(1, args.population + 1))
    cutoff = int((1 - epsilon) * args.population)

    print(f"uniform serials 1..{args.population}, epsilon={epsilon}, trials={args.trials}")
    print(f"{'m':>4} {'empirical':>12} {'exact':>12} {'ci_halfwidth':>12}")
    for m in (2, 4, 8, 16, 32):
        rep = evaluate(learner, dist, m, epsilon, args.trials, args.seed)
        exact = float(Fraction(cutoff, args.population) ** m)
        print(f"{m:>4} {float(rep.failure_rate):>12.6f} {exact:>12.6f} {rep.ci_halfwidth:>12.6f}")


if __name__ == "__main__":
    main()
