import math

import numpy as np
import pytest

import horizoncast as hc
from horizoncast.chinchilla import DEFAULT_CHINCHILLA as P
from horizoncast.errors import DomainError, InfeasibleError


def grid_optimal_allocation(p, budget_flop, n_grid=20001):
    """Brute-force oracle: loss-minimizing (N, D) at a fixed 6ND budget."""
    ln_n = np.linspace(math.log(1e5), math.log(1e15), n_grid)
    n = np.exp(ln_n)
    d = budget_flop / (6.0 * n)
    losses = p.e0 + p.a0 * n ** -p.exp_n + p.b0 * d ** -p.exp_d
    k = int(np.argmin(losses))
    return float(n[k]), float(d[k]), float(losses[k])


def grid_optimal_compute(p, target_loss, n_grid=200001):
    """Brute-force oracle: minimum 6ND subject to loss == target."""
    reducible = target_loss - p.e0
    ln_n_min = math.log(p.a0 / reducible) / p.exp_n
    ln_n = np.linspace(ln_n_min + 1e-6, ln_n_min + 40.0, n_grid)
    n = np.exp(ln_n)
    remaining = reducible - p.a0 * n ** -p.exp_n
    valid = remaining > 0
    d = (p.b0 / remaining[valid]) ** (1.0 / p.exp_d)
    budgets = 6.0 * n[valid] * d
    return float(budgets.min())


class TestLoss:
    def test_irreducible_limit(self):
        # the reducible part decays like b0 * D^-exp_d (~1.7e-6 at 1e30,
        # ~8.6e-7 at 1e31), so the bound holds from 1e31 up
        assert hc.loss(P, 1e31, 1e31) - P.e0 < 1e-6
        assert hc.loss(P, 1e31, 1e31) > P.e0

    def test_frozen_example(self):
        # 1.69 + 406.4*(8e9)^-0.34 + 410.7*(1.5e13)^-0.28, evaluated separately
        assert hc.loss(P, 8e9, 1.5e13) == pytest.approx(1.9485316, abs=1e-6)

    def test_monotone_in_params(self):
        assert hc.loss(P, 2e9, 1e12) < hc.loss(P, 1e9, 1e12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            hc.loss(P, -1.0, 1e12)


class TestRawCompute:
    def test_arithmetic(self):
        assert hc.raw_compute(8e9, 1.5e13) == 7.2e23

    def test_unit(self):
        assert hc.raw_compute(1.0, 1.0) == 6.0

    def test_bilinear(self):
        assert hc.raw_compute(10 * 3e9, 10 * 1e12) == pytest.approx(
            100 * hc.raw_compute(3e9, 1e12)
        )


class TestOptimalComputeForLoss:
    def test_symmetric_params_give_equal_allocation(self):
        sym = hc.ChinchillaParams(e0=1.5, a0=300.0, b0=300.0, exp_n=0.3, exp_d=0.3)
        alloc = hc.optimal_compute_for_loss(sym, 2.0)
        assert alloc.n_params == pytest.approx(alloc.n_tokens, rel=1e-6)

    def test_round_trip_through_fixed_budget(self):
        # grid oracle finds the best loss at 1e24 FLOP; inverting that loss
        # must return the same budget
        n, d, best_loss = grid_optimal_allocation(P, 1e24)
        alloc = hc.optimal_compute_for_loss(P, best_loss)
        assert alloc.flop == pytest.approx(1e24, rel=1e-3)

    def test_dominates_suboptimal_allocation(self):
        target = hc.loss(P, 8e9, 1.5e13)
        alloc = hc.optimal_compute_for_loss(P, target)
        assert alloc.flop <= 7.2e23

    def test_first_order_condition(self):
        for target in (1.8, 1.95, 2.2, 2.6):
            alloc = hc.optimal_compute_for_loss(P, target)
            marginal_n = P.exp_n * P.a0 * alloc.n_params ** -P.exp_n
            marginal_d = P.exp_d * P.b0 * alloc.n_tokens ** -P.exp_d
            assert marginal_n == pytest.approx(marginal_d, rel=1e-6)

    def test_matches_grid_oracle_on_20_targets(self):
        for target in np.linspace(1.75, 2.8, 20):
            ours = hc.optimal_compute_for_loss(P, float(target)).flop
            oracle = grid_optimal_compute(P, float(target))
            assert ours == pytest.approx(oracle, rel=1e-6)

    def test_strictly_decreasing_in_target_loss(self):
        targets = np.linspace(1.75, 3.0, 12)
        budgets = [hc.optimal_compute_for_loss(P, float(t)).flop for t in targets]
        assert all(later < earlier for later, earlier in zip(budgets[1:], budgets))

    def test_infeasible_below_irreducible(self):
        with pytest.raises(InfeasibleError):
            hc.optimal_compute_for_loss(P, P.e0)


class TestEquivalentOptimalCompute:
    def test_never_exceeds_raw_compute(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            n = 10 ** rng.uniform(7, 12)
            d = 10 ** rng.uniform(9, 14)
            assert hc.equivalent_optimal_compute(P, n, d) <= 6.0 * n * d * (1 + 1e-9)

    def test_equality_on_optimal_pairs(self):
        for budget in (1e22, 1e24, 1e26):
            n, d, _ = grid_optimal_allocation(P, budget)
            equivalent = hc.equivalent_optimal_compute(P, n, d)
            assert equivalent == pytest.approx(6.0 * n * d, rel=1e-3)

    def test_overparameterized_model_much_cheaper(self):
        n, d = 1e12, 1e10  # far more params than tokens
        equivalent = hc.equivalent_optimal_compute(P, n, d)
        oracle = grid_optimal_compute(P, hc.loss(P, n, d))
        assert equivalent == pytest.approx(oracle, rel=1e-6)
        assert equivalent < 0.05 * hc.raw_compute(n, d)
