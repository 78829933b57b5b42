"""Tests for the brute-force oracle, value iteration and partition oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkk import (
    INF,
    NEG_INF,
    TooLargeError,
    ZeroMeanPayoffError,
    check_optimal_prefix_bound,
    check_simple,
    is_finite,
    lift_to_simple,
    make_game,
    oracle_partition,
    oracle_values,
    value_iteration_en_minus,
    value_iteration_en_plus,
)
from gkk.gamegen import GenSpec, generate, generate_simple

from conftest import enumerate_games, single_vertex


class TestOracleValues:
    def test_single_min_negative_loop(self):
        res = oracle_values(single_vertex("MIN", -1))
        assert res.mp == (Fraction(-1),)
        assert res.en_plus == (0,)
        assert res.en_minus == (NEG_INF,)

    def test_two_vertex_unique_strategy(self):
        g = make_game(["MIN", "MIN"], [(0, 1, 3), (1, 1, -1)])
        res = oracle_values(g)
        assert res.en_plus == (3, 0)

    def test_example_a(self, example_a):
        res = oracle_values(example_a)
        assert res.en_plus == (INF, INF)
        assert res.en_minus == (-1, 0)
        assert res.mp == (Fraction(1, 2), Fraction(1, 2))

    def test_zero_mean_payoff_rejected(self):
        with pytest.raises(ZeroMeanPayoffError):
            oracle_values(single_vertex("MIN", 0))

    def test_too_large(self):
        g = generate(GenSpec(n=7, m=7, max_abs_weight=1, seed=1))
        with pytest.raises(TooLargeError):
            oracle_values(g, n_limit=6)


class TestValueIteration:
    def test_negative_self_loop(self):
        assert value_iteration_en_plus(single_vertex("MIN", -1)).values == (0,)

    def test_positive_self_loop_exceeds_cap(self):
        assert value_iteration_en_plus(single_vertex("MIN", 1)).values == (INF,)

    def test_two_vertex_chain(self):
        g = make_game(["MIN", "MIN"], [(0, 1, 3), (1, 1, -1)])
        assert value_iteration_en_plus(g).values == (3, 0)

    def test_dual_positive_self_loop(self):
        assert value_iteration_en_minus(single_vertex("MIN", 1)).values == (0,)

    def test_dual_negative_self_loop(self):
        assert value_iteration_en_minus(single_vertex("MIN", -1)).values == (NEG_INF,)

    def test_dual_example_a(self, example_a):
        assert value_iteration_en_minus(example_a).values == (-1, 0)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**9))
    def test_matches_oracle_on_random_small_games(self, seed):
        g = generate_simple(GenSpec(n=4, m=8, max_abs_weight=3, seed=seed))
        oracle = oracle_values(g)
        assert value_iteration_en_plus(g).values == oracle.en_plus
        assert value_iteration_en_minus(g).values == oracle.en_minus

    def test_finiteness_matches_mp_sign_exhaustively(self):
        # En+ finite exactly when the mean payoff is <= 0, and the finite
        # value is capped by (n-1)*N; exhaustive over 1-vertex games and a
        # slice of 2-vertex games.
        for g in enumerate_games(2, weights=(-2, 0, 2), max_out_degree=2):
            lifted = lift_to_simple(g)
            oracle = oracle_values(lifted)
            vi = value_iteration_en_plus(lifted).values
            cap = (lifted.n - 1) * lifted.max_abs_weight
            for v in range(lifted.n):
                assert (oracle.mp[v] <= 0) == is_finite(vi[v])
                if is_finite(vi[v]):
                    assert 0 <= vi[v] <= cap


class TestOraclePartition:
    def test_all_negative(self):
        g = make_game(["MIN", "MAX"], [(0, 1, -2), (1, 0, -1)])
        neg, pos = oracle_partition(g)
        assert neg == {0, 1} and not pos

    def test_example_a(self, example_a):
        assert oracle_partition(example_a) == ({0}, {1})

    def test_zero_chain(self, zero_chain):
        neg, pos = oracle_partition(zero_chain)
        assert neg == {0, 1, 2}


class TestCheckSimple:
    def test_zero_self_loop(self):
        assert not check_simple(single_vertex("MIN", 0))

    def test_cancelling_two_cycle(self):
        g = make_game(["MIN", "MAX"], [(0, 1, -1), (1, 0, 1)])
        assert not check_simple(g)

    def test_lift_guarantees_simplicity(self):
        for seed in range(10):
            g = generate_simple(GenSpec(n=5, m=12, max_abs_weight=3, seed=seed))
            assert check_simple(g)

    def test_too_large(self):
        g = generate(GenSpec(n=9, m=9, max_abs_weight=1, seed=0))
        with pytest.raises(TooLargeError):
            check_simple(g)


class TestOptimalPrefixBound:
    def test_chain_holds_with_equality(self):
        g = make_game(["MIN", "MIN"], [(0, 1, 3), (1, 1, -1)])
        assert check_optimal_prefix_bound(g)

    def test_negative_self_loop(self):
        assert check_optimal_prefix_bound(single_vertex("MIN", -1))

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10**9))
    def test_random_small_simple_games(self, seed):
        g = generate_simple(GenSpec(n=4, m=7, max_abs_weight=2, seed=seed))
        assert check_optimal_prefix_bound(g)
