#!/usr/bin/env python3
"""Diverse schedules for a work-package plan.

Teams agree on the order of three work packages but not on the task order
inside each package. Votes are noisy strict schedules; we aggregate them
and ask for three good, mutually different schedules to choose from.

Run: python3 demos/diverse_scheduling.py
"""

from kemeny import DiverseQuery, solve_diverse_kra, solve_single, reduce_to_co
from kemeny.instances import BucketSpec, generate_bucket_order, generate_profile


def main():
    packages = BucketSpec(bucket_sizes=(3, 2, 3), seed=2024)
    base = generate_bucket_order(packages)
    sample = generate_profile(base, m=9, noise=2, seed=2024)
    profile = sample.profile
    names = profile.candidates.names
    print(f"tasks: {', '.join(names)} in packages of sizes {packages.bucket_sizes}")
    print(f"{profile.m} noisy schedule votes; "
          f"{sum(sample.votes_extend_base)} still respect the package order")

    inst = reduce_to_co(profile)
    best = solve_single(inst)
    print(f"\nbest single schedule (disagreement score {best.cost}):")
    print("  " + " -> ".join(names[v] for v in best.extension.perm))

    for delta in (0, 1, 2):
        query = DiverseQuery(r=3, delta=delta, d=4, s=1)
        result = solve_diverse_kra(profile, query)
        verdict = "yes" if result.outcome.feasible else "no"
        print(f"\n3 schedules, within {delta} of optimal, diversity >= 4: {verdict}")
        if result.outcome.feasible:
            for w, score in zip(result.outcome.witnesses, result.scores):
                print(f"  score {score}: " + " -> ".join(names[v] for v in w.perm))
            break


if __name__ == "__main__":
    main()
