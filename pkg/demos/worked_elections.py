#!/usr/bin/env python3
"""Walk through the two small five-candidate elections end to end.

Run: python3 demos/worked_elections.py
"""

from kemeny import (
    DiverseQuery,
    diversity,
    kemeny_score,
    reduce_to_co,
    solve_diverse_kra,
    solve_max_diversity,
    solve_single,
    unanimity_order,
)
from kemeny.instances import fifty_fifty_profile, five_type_profile
from kemeny.oracle import oracle_optimum


def show(title):
    print()
    print(title)
    print("-" * len(title))


def ranking_str(ranking, names):
    return "<".join(names[v] for v in ranking.perm)


def main():
    show("Election 1: one hundred strict ballots, two camps")
    fifty = fifty_fifty_profile()
    names = fifty.candidates.names
    inst = reduce_to_co(fifty)
    solution = solve_single(inst)
    print(f"optimal ranking : {ranking_str(solution.extension, names)}")
    print(f"optimal score   : {solution.cost}")
    opt, winners = oracle_optimum(inst)
    print(f"all optima      : {[ranking_str(w, names) for w in winners]}")
    print(f"their diversity : {diversity(list(winners))}")

    best = solve_max_diversity(inst, r=2, delta=0)
    print(f"max diversity of two optimal rankings: {best.diversity}")

    show("Election 2: ninety ballots in five weak-order types")
    five = five_type_profile()
    una = unanimity_order(five)
    agreed = sorted(
        f"{names[x]}<{names[y]}" for x, y in una.strict_pairs()
    )
    print(f"pairs every voter agrees on: {agreed}")
    result = solve_diverse_kra(five, DiverseQuery(r=1))
    print(f"optimal score: {result.scores[0]}")
    print(f"winner       : {ranking_str(result.outcome.witnesses[0], names)}")

    # weak ballots leave room for several optimal rankings
    pair = solve_diverse_kra(five, DiverseQuery(r=2, delta=0, d=1, s=1))
    if pair.outcome.feasible:
        a, b = pair.outcome.witnesses
        print(f"two distinct optima: {ranking_str(a, names)}  and  {ranking_str(b, names)}")
        print(f"scores: {pair.scores}, distance {pair.outcome.pairwise[0]}")
        for w, score in zip(pair.outcome.witnesses, pair.scores):
            assert kemeny_score(five, w) == score


if __name__ == "__main__":
    main()
