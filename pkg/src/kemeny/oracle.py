"""Brute-force reference implementations.

Everything here enumerates exhaustively and exists to generate expected
values and to back equivalence tests for the dynamic programs. Hard size
caps keep accidental misuse loud; the environment variables
KEMENY_ORACLE_CAP and KEMENY_DIVERSE_CAP override them for test rigs only.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator

from .errors import CapabilityError, InputError
from .orders import CostInstance, LinearOrder, PartialOrder, _bits, kt_distance

ORACLE_CAP = 10
DIVERSE_CAP = 6
DIVERSE_R_CAP = 3


def _cap(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


def _require(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapabilityError(f"{what} capped at {cap}, got {n}")


def enumerate_extensions(order: PartialOrder) -> Iterator[LinearOrder]:
    """Every linear extension exactly once, lexicographic by vertex index."""
    _require(order.n, _cap("KEMENY_ORACLE_CAP", ORACLE_CAP), "oracle universe size")
    full = (1 << order.n) - 1

    def rec(remaining: int, prefix: list[int]) -> Iterator[LinearOrder]:
        if not remaining:
            yield LinearOrder(tuple(prefix))
            return
        for v in _bits(remaining):
            if order.strict_down(v) & remaining:
                continue
            prefix.append(v)
            yield from rec(remaining & ~(1 << v), prefix)
            prefix.pop()

    yield from rec(full, [])


def count_extensions(order: PartialOrder) -> int:
    """Number of linear extensions, by recursion over the remaining set."""
    _require(order.n, _cap("KEMENY_ORACLE_CAP", ORACLE_CAP), "oracle universe size")
    memo: dict[int, int] = {0: 1}

    def rec(remaining: int) -> int:
        if remaining in memo:
            return memo[remaining]
        total = 0
        for v in _bits(remaining):
            if not order.strict_down(v) & remaining:
                total += rec(remaining & ~(1 << v))
        memo[remaining] = total
        return total

    return rec((1 << order.n) - 1)


def oracle_optimum(instance: CostInstance) -> tuple[int, tuple[LinearOrder, ...]]:
    """Exact minimum charged cost and the complete set of minimizers."""
    _require(instance.n, _cap("KEMENY_ORACLE_CAP", ORACLE_CAP), "oracle universe size")
    charge = instance.charge  # type: ignore[attr-defined]
    base = instance.base
    best = None
    winners: list[tuple[int, ...]] = []

    def rec(remaining: int, prefix: list[int], cost: int) -> None:
        nonlocal best, winners
        if not remaining:
            if best is None or cost < best:
                best = cost
                winners = [tuple(prefix)]
            elif cost == best:
                winners.append(tuple(prefix))
            return
        for v in _bits(remaining):
            if base.strict_down(v) & remaining:
                continue
            added = sum(charge[u][v] for u in prefix)
            prefix.append(v)
            rec(remaining & ~(1 << v), prefix, cost + added)
            prefix.pop()

    rec((1 << instance.n) - 1, [], 0)
    assert best is not None
    return best, tuple(LinearOrder(w) for w in winners)


@dataclass(frozen=True)
class OracleDiverseResult:
    feasible: bool
    witnesses: tuple[LinearOrder, ...] | None
    diversity: int | None
    optimum: int


def _within_budget(
    instance: CostInstance, delta: int
) -> tuple[int, list[LinearOrder]]:
    opt, _ = oracle_optimum(instance)
    kept = [
        ext
        for ext in enumerate_extensions(instance.base)
        if instance.extension_cost(ext) <= opt + delta
    ]
    kept.sort(key=lambda e: e.perm)
    return opt, kept


def oracle_diverse(
    instance: CostInstance,
    r: int,
    delta: int,
    d: int,
    s: int,
    maximize: bool = False,
) -> OracleDiverseResult:
    """Exhaustive search over r-subsets of within-budget extensions.

    Decision mode asks for pairwise distance at least max(s, 1) (solution
    sets contain distinct rankings) and total diversity at least d, both
    under the unordered-pair convention. Maximize mode allows repeats and
    returns a maximum-diversity selection.
    """
    _require(instance.n, _cap("KEMENY_DIVERSE_CAP", DIVERSE_CAP), "diverse oracle size")
    _require(r, DIVERSE_R_CAP, "diverse oracle solution count")
    if r < 1:
        raise InputError("need at least one solution")
    opt, pool = _within_budget(instance, delta)
    dist = [
        [kt_distance(a, b) for b in pool] for a in pool
    ]
    if maximize:
        best_div = None
        best: tuple[int, ...] | None = None
        for combo in itertools.combinations_with_replacement(range(len(pool)), r):
            if s >= 1 and any(
                dist[i][j] < s for i, j in itertools.combinations(combo, 2)
            ):
                continue
            div = sum(dist[i][j] for i, j in itertools.combinations(combo, 2))
            if best_div is None or div > best_div:
                best_div = div
                best = combo
        if best is None:
            return OracleDiverseResult(False, None, None, opt)
        return OracleDiverseResult(
            True, tuple(pool[i] for i in best), best_div, opt
        )
    s_req = max(s, 1)
    for combo in itertools.combinations(range(len(pool)), r):
        pairs = list(itertools.combinations(combo, 2))
        if any(dist[i][j] < s_req for i, j in pairs):
            continue
        div = sum(dist[i][j] for i, j in pairs)
        if div >= d:
            return OracleDiverseResult(
                True, tuple(pool[i] for i in combo), div, opt
            )
    return OracleDiverseResult(False, None, None, opt)
