import itertools

import pytest

from fairsic import (
    CapacityError,
    DecodingProfile,
    EnumerationBudget,
    RankFunctionSet,
    brute_force_maxmin,
    certify,
    count_orders,
    decode_sequence,
    enumerate_orders,
    greedy_profile,
    min_rate,
    random_gaussian_channel,
    random_submodular_tables,
    rate_vector,
    rng_from_seed,
)

from conftest import LOG2_21_11, tabulated_from_values


def reference_configurations(num_users, receiver):
    """Independent enumeration: filter raw decode sequences over subsets."""
    users = range(1, num_users + 1)
    found = set()
    for size in range(1, num_users + 1):
        for subset in itertools.combinations(users, size):
            if receiver not in subset:
                continue
            for sequence in itertools.permutations(subset):
                if sequence[-1] == receiver:
                    found.add(sequence)
    return found


class TestEnumeration:
    def test_counts_closed_form(self):
        assert [count_orders(num_users) for num_users in (1, 2, 3, 4)] == [1, 2, 5, 16]

    def test_counts_match_enumeration(self):
        for num_users in (1, 2, 3, 4):
            for receiver in range(1, num_users + 1):
                orders = enumerate_orders(num_users, receiver)
                assert len(orders) == count_orders(num_users)
                assert len(set(orders)) == len(orders)

    def test_matches_independent_enumeration(self):
        for num_users in (1, 2, 3, 4):
            for receiver in range(1, num_users + 1):
                produced = {
                    decode_sequence(o) for o in enumerate_orders(num_users, receiver)
                }
                assert produced == reference_configurations(num_users, receiver)

    def test_two_user_configurations(self):
        sequences = {decode_sequence(o) for o in enumerate_orders(2, 1)}
        assert sequences == {(1,), (2, 1)}

    def test_user_count_guard(self):
        with pytest.raises(CapacityError):
            enumerate_orders(5, 1)
        assert len(enumerate_orders(5, 1, EnumerationBudget(K_limit=5))) == 65


class TestBruteForce:
    def test_two_user_fixture(self, two_user_ranks):
        result = brute_force_maxmin(two_user_ranks)
        assert result.num_configs == 4
        assert result.opt_min_rate == pytest.approx(LOG2_21_11, abs=1e-12)
        assert [decode_sequence(o) for o in result.best_profile.orders] == [(2, 1), (2,)]

    def test_single_user(self, single_user_ranks):
        result = brute_force_maxmin(single_user_ranks)
        assert result.num_configs == 1
        assert result.opt_min_rate == 1.0

    def test_matches_direct_profile_scan(self):
        # Independent slow path: evaluate min_rate(rate_vector(...)) on the
        # cartesian product of configurations and maximize.
        for seed in (5, 6, 7):
            ranks = RankFunctionSet.for_channel(
                random_gaussian_channel(3, rng_from_seed(seed))
            )
            per_receiver = [
                sorted(enumerate_orders(3, j), key=lambda o: o.perm)
                for j in (1, 2, 3)
            ]
            best = -1.0
            for combo in itertools.product(*per_receiver):
                profile = DecodingProfile(combo)
                value, _ = min_rate(rate_vector(ranks, profile))
                if value > best:
                    best = value
            result = brute_force_maxmin(ranks)
            assert result.opt_min_rate == best
            assert result.num_configs == 125

    def test_joint_budget_guard(self, two_user_ranks):
        with pytest.raises(CapacityError):
            brute_force_maxmin(two_user_ranks, EnumerationBudget(max_joint_configs=3))

    def test_deterministic_across_jobs(self):
        ranks = RankFunctionSet.for_channel(
            random_gaussian_channel(3, rng_from_seed(99))
        )
        baseline = brute_force_maxmin(ranks, jobs=1)
        for jobs in (2, 3, 8):
            repeat = brute_force_maxmin(ranks, jobs=jobs)
            assert repeat.opt_min_rate == baseline.opt_min_rate
            assert repeat.best_profile == baseline.best_profile

    def test_repeatable(self, two_user_ranks):
        first = brute_force_maxmin(two_user_ranks)
        second = brute_force_maxmin(two_user_ranks)
        assert first == second


class TestCertify:
    def test_passes_on_fixture(self, two_user_ranks):
        report = certify(two_user_ranks)
        assert report.passed
        assert report.gap == 0.0
        assert report.counterexample is None
        assert report.greedy_min_rate == report.oracle_min_rate

    def test_passes_on_single_user(self, single_user_ranks):
        report = certify(single_user_ranks)
        assert report.passed and report.gap == 0.0

    def test_passes_on_random_tabulated(self):
        for seed in (21, 22, 23):
            ranks = RankFunctionSet.for_channel(
                random_submodular_tables(3, rng_from_seed(seed))
            )
            assert certify(ranks).passed

    def test_corrupted_table_reports_counterexample_on_failure(self):
        # Superadditive table: optimality is void, the report must stay
        # internally consistent either way.
        ranks = RankFunctionSet.for_channel(
            tabulated_from_values([(0.0, 1.0, 1.0, 3.0), (0.0, 1.0, 1.0, 2.0)])
        )
        report = certify(ranks, force=True)
        greedy = greedy_profile(ranks, force=True)
        assert report.oracle_min_rate >= greedy.min_rate
        if report.passed:
            assert report.counterexample is None
        else:
            assert report.counterexample is not None
            value, _ = min_rate(rate_vector(ranks, report.counterexample))
            assert value == report.oracle_min_rate
