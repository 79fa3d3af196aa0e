"""Positive-cost completion: edge-count rejection and budget decisions."""

import random

import pytest

from kemeny.errors import InputError
from kemeny.instances import random_cost_instance
from kemeny.oracle import oracle_optimum
from kemeny.orders import CostInstance, PartialOrder
from kemeny.pco import PcoInstance, pco_preprocess, solve_pco


def chain(n):
    return PartialOrder.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def unit_antichain(n):
    cost = tuple(tuple(0 if x == y else 1 for y in range(n)) for x in range(n))
    return PcoInstance(CostInstance(n, cost, PartialOrder.antichain(n)))


class TestPcoInstance:
    def test_rejects_zero_cost_incomparable_pair(self):
        base = PartialOrder.antichain(2)
        with pytest.raises(InputError):
            PcoInstance(CostInstance(2, ((0, 0), (1, 0)), base))

    def test_comparable_pairs_may_cost_zero(self):
        inst = CostInstance(2, ((0, 0), (0, 0)), chain(2))
        PcoInstance(inst)  # no incomparable pairs at all


class TestPreprocess:
    def test_linear_base_proceeds_with_width_zero(self):
        cost = tuple(tuple(0 for _ in range(4)) for _ in range(4))
        inst = PcoInstance(CostInstance(4, cost, chain(4)))
        pre = pco_preprocess(inst, 0)
        assert not pre.rejected
        assert pre.edges == 0
        assert pre.width == 0

    def test_edge_count_rejection(self):
        # complete incomparability on 5 vertices: 10 edges, budget 9
        pre = pco_preprocess(unit_antichain(5), 9)
        assert pre.rejected
        assert pre.edges == 10
        assert pco_preprocess(unit_antichain(5), 10).rejected is False

    def test_rejection_never_loses_a_yes_instance(self):
        rng = random.Random(41)
        for _ in range(60):
            inst = random_cost_instance(
                rng.randint(2, 7), rng, rng.random(), max_cost=3, positive=True
            )
            pco = PcoInstance(inst)
            opt, _ = oracle_optimum(inst)
            for k in (opt, opt + 2):
                assert not pco_preprocess(pco, k).rejected


class TestSolve:
    def test_linear_base_zero_budget(self):
        cost = tuple(tuple(0 for _ in range(3)) for _ in range(3))
        result = solve_pco(PcoInstance(CostInstance(3, cost, chain(3))), 0)
        assert result.feasible
        assert result.witness.perm == (0, 1, 2)

    def test_unit_antichain_three(self):
        # any extension pays all three pairs
        assert not solve_pco(unit_antichain(3), 2).feasible
        result = solve_pco(unit_antichain(3), 3)
        assert result.feasible and result.optimum == 3

    def test_matches_oracle_on_random_instances(self):
        rng = random.Random(42)
        for _ in range(60):
            inst = random_cost_instance(
                rng.randint(2, 7), rng, rng.random(), max_cost=3, positive=True
            )
            pco = PcoInstance(inst)
            opt, _ = oracle_optimum(inst)
            k = rng.randint(max(0, opt - 3), opt + 3)
            result = solve_pco(pco, k)
            assert result.feasible == (opt <= k)
            if result.feasible:
                assert inst.extension_cost(result.witness) <= k
