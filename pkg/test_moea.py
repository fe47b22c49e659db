import itertools
import unittest
from unittest import mock

import numpy as np

from demand import DemandProfile
from moea import (
    DE,
    GA,
    GRAND_TOTAL,
    LS,
    P_FLOOR,
    PSO,
    AhmoaConfig,
    Solution,
    StrategyState,
    apply_probability_floor,
    assign_rank_and_crowding,
    binary_tournament,
    crowding_distance,
    de_offspring,
    dominates,
    environmental_selection,
    evaluate_population,
    first_front,
    ga_offspring,
    generate_offspring,
    local_search_offspring,
    non_dominated_sort,
    pso_offspring,
    refresh_personal_bests,
    run_ahmoa,
    select_strategy,
)
from objectives import LAMBDA_MAX, LAMBDA_MIN, ObjectiveVector
from seeded_streams import SeededStream
from traffic_network import ConfigurationError, build_grid_city


def _brute_force_ranks(F):
    remaining = set(range(len(F)))
    ranks = {}
    rank = 0
    while remaining:
        front = {a for a in remaining
                 if not any(dominates(F[b], F[a]) for b in remaining if b != a)}
        for a in front:
            ranks[a] = rank
        remaining -= front
        rank += 1
    return ranks


def _solution(f1, f2, r, lam=None):
    return Solution(np.full(3, 0.5) if lam is None else lam, objectives=ObjectiveVector(f1=f1, f2=f2, r=r))


class _SumContext:
    """Evaluation double: f1 = sum(lambda), f2 = sum((1 - lambda)), r = 0."""

    def evaluate_all(self, lambdas, workers=1):
        return [ObjectiveVector(f1=float(np.sum(l)), f2=float(np.sum(1 - l)), r=0.0) for l in lambdas]


class _ScaledContext:
    """Evaluation double whose f1 and f2 scale with the draw; r is the roughness of lambda."""

    def __init__(self, scale):
        self.scale = scale
        self.calls = []

    def evaluate_all(self, lambdas, workers=1):
        self.calls.append(len(lambdas))
        return [ObjectiveVector(f1=self.scale * float(np.sum((np.asarray(l) - 0.2) ** 2)),
                                f2=self.scale * float(np.sum((np.asarray(l) - 0.7) ** 2)),
                                r=float(np.abs(np.diff(l)).sum())) for l in lambdas]


class _ShiftingEvaluator:
    """Hands out a differently scaled context for every seed."""

    def __init__(self):
        self.scales = []

    def snapshot(self, memory, seed):
        scale = 1.0 + seed % 5
        self.scales.append(scale)
        return _ScaledContext(scale), memory


class TestDominance(unittest.TestCase):

    def test_examples(self):
        self.assertTrue(dominates([1, 2, 3], [1, 2, 4]))
        self.assertFalse(dominates([1, 2, 3], [1, 2, 3]))
        self.assertFalse(dominates([1, 5, 3], [2, 2, 3]))
        self.assertTrue(dominates(ObjectiveVector(f1=1, f2=1, r=1), ObjectiveVector(f1=2, f2=1, r=1)))

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            dominates([1, 2], [1, 2, 3])

    def test_sort_matches_brute_force(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            n = int(rng.integers(1, 16))
            F = rng.integers(0, 5, size=(n, 3)).astype(float)
            fronts = non_dominated_sort(F)
            oracle = _brute_force_ranks(F)
            self.assertEqual(sorted(itertools.chain.from_iterable(fronts)), list(range(n)))
            for rank, front in enumerate(fronts):
                self.assertEqual(front, sorted(front))
                for k in front:
                    self.assertEqual(oracle[k], rank)

    def test_empty_population(self):
        self.assertEqual(non_dominated_sort([]), [])


class TestCrowdingDistance(unittest.TestCase):

    def test_small_fronts_infinite(self):
        self.assertTrue(np.all(np.isinf(crowding_distance([[1, 2, 3]]))))
        self.assertTrue(np.all(np.isinf(crowding_distance([[1, 2, 3], [2, 1, 3]]))))

    def test_three_points(self):
        distance = crowding_distance([[0, 3, 0], [1, 1, 0], [3, 0, 0]])
        self.assertTrue(np.isinf(distance[0]))
        self.assertTrue(np.isinf(distance[2]))
        self.assertAlmostEqual(distance[1], 2.0)

    def test_degenerate_front(self):
        np.testing.assert_array_equal(crowding_distance([[1, 1, 1]] * 4), np.zeros(4))

    def test_empty_rejected(self):
        with self.assertRaises(ValueError):
            crowding_distance([])


class TestStrategyUpdate(unittest.TestCase):

    def test_smoothing_without_floor(self):
        state = StrategyState([0.25] * 4, alpha=0.3).with_counts([2, 0, 0, 0], [2, 1, 1, 1])
        np.testing.assert_allclose(state.updated().probabilities, [0.475, 0.175, 0.175, 0.175])

    def test_zero_alpha_is_noop(self):
        state = StrategyState([0.4, 0.3, 0.2, 0.1], alpha=0.0).with_counts([3, 0, 1, 0], [3, 2, 1, 1])
        np.testing.assert_allclose(state.updated().probabilities, [0.4, 0.3, 0.2, 0.1], rtol=0, atol=1e-12)

    def test_symmetric_success_keeps_uniform(self):
        state = StrategyState([0.25] * 4, alpha=0.3).with_counts([1, 1, 1, 1], [2, 2, 2, 2])
        np.testing.assert_allclose(state.updated().probabilities, [0.25] * 4, rtol=0, atol=1e-12)

    def test_single_successful_strategy(self):
        state = StrategyState([0.25] * 4, alpha=0.5).with_counts([4, 0, 0, 0], [4, 4, 4, 4])
        np.testing.assert_allclose(state.updated().probabilities, [0.625, 0.125, 0.125, 0.125], rtol=0, atol=1e-12)

    def test_floor_redistribution(self):
        state = StrategyState([0.97, 0.01, 0.01, 0.01], alpha=0.0)
        np.testing.assert_allclose(state.updated().probabilities, [0.94, 0.02, 0.02, 0.02])

    def test_all_zero_raw_becomes_uniform(self):
        state = StrategyState([0.25] * 4, alpha=1.0).with_counts([0] * 4, [3] * 4)
        np.testing.assert_allclose(state.updated().probabilities, [0.25] * 4)

    def test_untried_strategy_has_zero_rate(self):
        state = StrategyState([0.25] * 4, alpha=0.5).with_counts([1, 0, 0, 0], [2, 0, 0, 0])
        np.testing.assert_allclose(state.success_rates(), [0.5, 0, 0, 0])

    def test_grand_total_denominator(self):
        state = StrategyState([0.25] * 4, alpha=0.5).with_counts([1, 1, 0, 0], [2, 1, 1, 0])
        np.testing.assert_allclose(state.success_rates(GRAND_TOTAL), [0.25, 0.25, 0, 0])

    def test_invariants_over_random_counts(self):
        rng = np.random.default_rng(5)
        state = StrategyState([0.25] * 4, alpha=0.3)
        for _ in range(500):
            totals = rng.integers(0, 20, 4)
            successes = np.array([rng.integers(0, t + 1) for t in totals])
            state = state.with_counts(successes, totals).updated()
            self.assertAlmostEqual(state.probabilities.sum(), 1.0, places=9)
            self.assertTrue(np.all(state.probabilities >= P_FLOOR - 1e-12))

    def test_successes_cannot_exceed_totals(self):
        with self.assertRaises(ValueError):
            StrategyState([0.25] * 4, alpha=0.3, successes=[2, 0, 0, 0], totals=[1, 0, 0, 0])

    def test_floor_helper_keeps_valid_vector(self):
        np.testing.assert_allclose(apply_probability_floor(np.array([0.4, 0.3, 0.2, 0.1]), 0.02), [0.4, 0.3, 0.2, 0.1])


class TestRoulette(unittest.TestCase):

    def test_empirical_frequencies(self):
        state = StrategyState([0.1, 0.2, 0.3, 0.4], alpha=0.3)
        rng = SeededStream(2024, 77)
        counts = np.bincount([select_strategy(state, rng) for _ in range(100000)], minlength=4)
        np.testing.assert_allclose(counts / 100000, [0.1, 0.2, 0.3, 0.4], atol=0.01)

    def test_zero_probability_never_selected(self):
        state = StrategyState([0.0, 1.0, 0.0, 0.0], alpha=0.0)
        rng = SeededStream(3, 1)
        self.assertEqual({select_strategy(state, rng) for _ in range(2000)}, {DE})

    def test_sequence_repeatable_for_seed(self):
        state = StrategyState([0.1, 0.2, 0.3, 0.4], alpha=0.3)
        a, b = SeededStream(7, 3), SeededStream(7, 3)
        first = [select_strategy(state, a) for _ in range(500)]
        second = [select_strategy(state, b) for _ in range(500)]
        self.assertEqual(first, second)
        self.assertEqual(set(first), {GA, DE, PSO, LS})
        other = SeededStream(8, 3)
        self.assertNotEqual(first, [select_strategy(state, other) for _ in range(500)])


class TestBinaryTournament(unittest.TestCase):

    def test_lower_rank_wins(self):
        population = [Solution(np.full(2, 0.5), rank=1, crowding=5.0), Solution(np.full(2, 0.5), rank=0, crowding=0.0)]
        rng = SeededStream(4, 1)
        # Index 0 only wins when both draws land on it.
        picks = [binary_tournament(population, rng) for _ in range(4000)]
        self.assertAlmostEqual(picks.count(0) / 4000, 0.25, delta=0.03)

    def test_crowding_breaks_rank_ties(self):
        population = [Solution(np.full(2, 0.5), rank=0, crowding=0.1), Solution(np.full(2, 0.5), rank=0, crowding=2.0)]
        rng = SeededStream(4, 2)
        picks = [binary_tournament(population, rng) for _ in range(4000)]
        self.assertAlmostEqual(picks.count(1) / 4000, 0.75, delta=0.03)

    def test_single_member(self):
        self.assertEqual(binary_tournament([Solution(np.full(2, 0.5))], SeededStream(1, 1)), 0)


class TestOperators(unittest.TestCase):

    def setUp(self):
        self.cfg = AhmoaConfig(population_size=8)
        self.rng = SeededStream(99, 5)

    def test_sbx_identical_parents_without_mutation(self):
        cfg = self.cfg.model_copy(update={"mutation_probability": 0.0})
        parent = np.array([0.1, 0.4, 0.9])
        np.testing.assert_allclose(ga_offspring(parent, parent, cfg, self.rng), parent, atol=1e-12)

    def test_de_zero_scale_copies_a_donor(self):
        cfg = self.cfg.model_copy(update={"de_f": 0.0, "de_cr": 1.0})
        population = [np.full(3, v) for v in (0.1, 0.3, 0.5, 0.7, 0.9)]
        for _ in range(50):
            child = de_offspring(population[0], population, cfg, self.rng, parent_index=0)
            self.assertTrue(any(np.array_equal(child, member) for member in population[1:]))

    def test_de_population_too_small(self):
        with self.assertRaises(ValueError):
            de_offspring(np.full(3, 0.5), [np.full(3, 0.5)] * 3, self.cfg, self.rng)

    def test_pso_at_rest_on_best(self):
        lam = np.array([0.2, 0.6, 0.8])
        particle = Solution(lam.copy(), personal_best=(lam.copy(), None))
        position, velocity = pso_offspring(particle, lam, self.cfg, self.rng)
        np.testing.assert_allclose(position, lam)
        np.testing.assert_array_equal(velocity, np.zeros(3))

    def test_pso_velocity_clamped(self):
        particle = Solution(np.full(4, LAMBDA_MIN), velocity=np.full(4, 5.0))
        position, velocity = pso_offspring(particle, np.full(4, LAMBDA_MAX), self.cfg, self.rng)
        self.assertTrue(np.all(np.abs(velocity) <= self.cfg.v_max + 1e-12))

    def test_local_search_zero_step(self):
        cfg = self.cfg.model_copy(update={"ls_delta": 0.0})
        parent = np.array([0.3, 0.5])
        np.testing.assert_array_equal(local_search_offspring(parent, cfg, self.rng), parent)

    def test_bounds_over_many_draws(self):
        rng = np.random.default_rng(8)
        population = [rng.uniform(LAMBDA_MIN, LAMBDA_MAX, 6) for _ in range(6)]
        for _ in range(2500):
            a, b = population[int(rng.integers(6))], population[int(rng.integers(6))]
            children = [
                ga_offspring(a, b, self.cfg, self.rng),
                de_offspring(population[0], population, self.cfg, self.rng, parent_index=0),
                pso_offspring(Solution(a.copy()), b, self.cfg, self.rng)[0],
                local_search_offspring(a, self.cfg, self.rng),
            ]
            for child in children:
                self.assertTrue(np.all(child >= LAMBDA_MIN) and np.all(child <= LAMBDA_MAX))

    def test_de_zero_crossover_changes_one_gene(self):
        cfg = self.cfg.model_copy(update={"de_cr": 0.0})
        rng = np.random.default_rng(31)
        population = [rng.uniform(0.2, 0.8, 6) for _ in range(8)]
        for _ in range(300):
            child = de_offspring(population[0], population, cfg, self.rng, parent_index=0)
            self.assertEqual(int(np.sum(child != population[0])), 1)

    def test_sbx_large_index_stays_near_a_parent(self):
        cfg = self.cfg.model_copy(update={"eta_c": 1e6, "mutation_probability": 0.0})
        rng = np.random.default_rng(17)
        for _ in range(50):
            a, b = rng.uniform(LAMBDA_MIN, LAMBDA_MAX, (2, 40))
            child = ga_offspring(a, b, cfg, self.rng)
            gap = np.minimum(np.abs(child - a), np.abs(child - b))
            self.assertTrue(np.all(gap <= 1e-3), f"max gap {gap.max()}")

    def test_sbx_mixes_genes_from_both_parents(self):
        cfg = self.cfg.model_copy(update={"eta_c": 1e6, "mutation_probability": 0.0})
        child = ga_offspring(np.full(60, 0.1), np.full(60, 0.9), cfg, self.rng)
        near_a = np.abs(child - 0.1) <= 1e-3
        near_b = np.abs(child - 0.9) <= 1e-3
        self.assertTrue(np.all(near_a | near_b))
        self.assertGreater(near_a.sum(), 10)
        self.assertGreater(near_b.sum(), 10)

    def test_pso_zero_coefficients_keep_position(self):
        cfg = self.cfg.model_copy(update={"pso_w": 0.0, "pso_c1": 0.0, "pso_c2": 0.0})
        lam = np.array([0.2, 0.6, 0.8, 0.35])
        particle = Solution(lam.copy(), velocity=np.full(4, 0.15), personal_best=(np.full(4, 0.9), None))
        position, velocity = pso_offspring(particle, np.full(4, 0.1), cfg, self.rng)
        np.testing.assert_array_equal(position, lam)
        np.testing.assert_array_equal(velocity, np.zeros(4))

    def test_local_search_positive_step_at_upper_bound(self):
        parent = np.full(5, LAMBDA_MAX)
        rng = mock.Mock()
        rng.uniform.return_value = np.full(5, self.cfg.ls_delta)
        child = local_search_offspring(parent, self.cfg, rng)
        np.testing.assert_array_equal(child, parent)
        rng.uniform.assert_called_once_with(-self.cfg.ls_delta, self.cfg.ls_delta, 5)

    def test_local_search_from_upper_bound_never_exceeds_it(self):
        parent = np.full(50, LAMBDA_MAX)
        for _ in range(100):
            child = local_search_offspring(parent, self.cfg, self.rng)
            self.assertTrue(np.all(child <= LAMBDA_MAX))
            self.assertTrue(np.all(child >= LAMBDA_MAX - self.cfg.ls_delta))
            self.assertIn(LAMBDA_MAX, child)


class TestGenerateOffspring(unittest.TestCase):

    def test_counts_and_update(self):
        cfg = AhmoaConfig(population_size=6)
        rng = np.random.default_rng(0)
        population = [Solution(rng.uniform(LAMBDA_MIN, LAMBDA_MAX, 4)) for _ in range(6)]
        context = _SumContext()
        for solution, objectives in zip(population, context.evaluate_all([s.lam for s in population])):
            solution.objectives = objectives
            solution.rank = 0
        children, state = generate_offspring(population, StrategyState.initial(cfg), cfg, context, SeededStream(1, 2))
        self.assertEqual(len(children), 6)
        self.assertEqual(int(state.totals.sum()), 6)
        self.assertTrue(np.all(state.successes <= state.totals))
        self.assertAlmostEqual(state.probabilities.sum(), 1.0, places=9)
        self.assertTrue(all(c.strategy in (GA, DE, PSO, LS) for c in children))

    def test_non_adaptive_keeps_probabilities(self):
        cfg = AhmoaConfig(population_size=6, adaptive=False, alpha=0.0, initial_probabilities=(0.0, 0.0, 0.0, 1.0))
        population = [Solution(np.full(3, 0.5), objectives=ObjectiveVector(f1=1.5, f2=1.5, r=0.0), rank=0)
                      for _ in range(6)]
        children, state = generate_offspring(population, StrategyState.initial(cfg), cfg, _SumContext(), SeededStream(1, 3))
        np.testing.assert_array_equal(state.probabilities, [0.0, 0.0, 0.0, 1.0])
        self.assertEqual(state.totals.tolist(), [0, 0, 0, 6])


class TestPersonalBests(unittest.TestCase):

    def test_rescored_on_new_context(self):
        old, new = _ScaledContext(1.0), _ScaledContext(3.0)
        lam, best = np.array([0.3, 0.5, 0.6]), np.array([0.2, 0.4, 0.9])
        solution = Solution(lam.copy(), personal_best=(best.copy(), old.evaluate_all([best])[0]))
        solution.objectives = new.evaluate_all([lam])[0]
        refresh_personal_bests([solution], new)
        np.testing.assert_array_equal(solution.personal_best[0], best)
        self.assertEqual(solution.personal_best[1], new.evaluate_all([best])[0])
        self.assertNotEqual(solution.personal_best[1], old.evaluate_all([best])[0])

    def test_own_position_reuses_objectives(self):
        context = _ScaledContext(2.0)
        lam = np.array([0.3, 0.5, 0.6])
        solution = Solution(lam.copy(), personal_best=(lam.copy(), ObjectiveVector(f1=9, f2=9, r=9)))
        solution.objectives = context.evaluate_all([lam])[0]
        context.calls.clear()
        refresh_personal_bests([solution, Solution(lam.copy())], context)
        self.assertIs(solution.personal_best[1], solution.objectives)
        self.assertEqual(sum(context.calls), 0)

    def test_run_keeps_bests_on_final_context(self):
        network = build_grid_city(3, 3, seed=4)
        cfg = AhmoaConfig(population_size=10, max_generations=6, seed=13,
                          initial_probabilities=(0.1, 0.1, 0.7, 0.1))
        evaluator = _ShiftingEvaluator()
        result = run_ahmoa(network, DemandProfile(), cfg, evaluator=evaluator)
        self.assertGreater(len(set(evaluator.scales)), 1)
        for solution in result.population:
            self.assertIsNotNone(solution.personal_best)
            expected = result.context.evaluate_all([solution.personal_best[0]])[0]
            self.assertEqual(solution.personal_best[1], expected)


class TestRunningArchive(unittest.TestCase):

    def test_points_leave_only_when_dominated(self):
        cfg = AhmoaConfig(population_size=12)
        context = _ScaledContext(1.0)
        population = [Solution(lam) for lam in SeededStream(5, 1).uniform(LAMBDA_MIN, LAMBDA_MAX, (12, 5))]
        evaluate_population(population, context)
        for solution in population:
            solution.personal_best = (solution.lam.copy(), solution.objectives)
        assign_rank_and_crowding(population)
        archive = first_front(population)
        state = StrategyState.initial(cfg)
        for generation in range(1, 16):
            offspring, state = generate_offspring(population, state, cfg, context, SeededStream(5, 2, generation))
            population = environmental_selection(population, offspring, cfg.population_size)
            merged = first_front(archive + population)
            for old in archive:
                if not any(old is kept for kept in merged):
                    self.assertTrue(any(dominates(new.objectives, old.objectives) for new in population),
                                    f"generation {generation}: archived point dropped without a dominator")
            for kept in merged:
                self.assertFalse(any(dominates(s.objectives, kept.objectives) for s in archive + population))
            archive = merged


class TestEnvironmentalSelection(unittest.TestCase):

    def test_keeps_first_front(self):
        parents = [_solution(1, 4, 0), _solution(4, 1, 0), _solution(5, 5, 5)]
        offspring = [_solution(2, 2, 0), _solution(6, 6, 6), _solution(7, 7, 7)]
        survivors = environmental_selection(parents, offspring, 3)
        self.assertEqual({(s.objectives.f1, s.objectives.f2) for s in survivors}, {(1, 4), (4, 1), (2, 2)})
        self.assertTrue(all(s.rank == 0 for s in survivors))

    def test_truncation_prefers_boundaries(self):
        front = [_solution(float(k), float(10 - k), 0.0) for k in range(11)]
        survivors = environmental_selection(front[:6], front[6:], 2)
        self.assertEqual(sorted(s.objectives.f1 for s in survivors), [0.0, 10.0])

    def test_size_preserved(self):
        rng = np.random.default_rng(2)
        pool = [_solution(*rng.uniform(0, 10, 3)) for _ in range(20)]
        self.assertEqual(len(environmental_selection(pool[:10], pool[10:], 10)), 10)

    def test_target_too_large(self):
        with self.assertRaises(ValueError):
            environmental_selection([_solution(1, 1, 1)], [_solution(2, 2, 2)], 3)


class TestConfig(unittest.TestCase):

    def test_defaults(self):
        cfg = AhmoaConfig()
        self.assertEqual((cfg.population_size, cfg.max_generations, cfg.n_e, cfg.alpha), (120, 50, 5, 0.3))
        self.assertAlmostEqual(cfg.resolved_mutation_probability(40), 1 / 40)

    def test_rejects_bad_probabilities(self):
        with self.assertRaises(ValueError):
            AhmoaConfig(initial_probabilities=(0.5, 0.5, 0.5, 0.0))

    def test_rejects_inverted_bounds(self):
        with self.assertRaises(ValueError):
            AhmoaConfig(lambda_min=0.9, lambda_max=0.1)

    def test_rejects_unknown_key(self):
        with self.assertRaises(ValueError):
            AhmoaConfig(temperature=3)


class TestRunAhmoa(unittest.TestCase):

    def setUp(self):
        self.network = build_grid_city(3, 3, seed=4)
        self.profile = DemandProfile()
        self.cfg = AhmoaConfig(population_size=8, max_generations=3, n_e=1, memory_depth=2, seed=21)

    def test_deterministic(self):
        a = run_ahmoa(self.network, self.profile, self.cfg)
        b = run_ahmoa(self.network, self.profile, self.cfg)
        self.assertEqual(len(a.front), len(b.front))
        for x, y in zip(a.front, b.front):
            np.testing.assert_array_equal(x.lam, y.lam)
            self.assertEqual(x.objectives, y.objectives)
        self.assertEqual([r.to_dict() for r in a.history], [r.to_dict() for r in b.history])

    def test_population_and_telemetry(self):
        records = []
        result = run_ahmoa(self.network, self.profile, self.cfg, on_generation=records.append)
        self.assertEqual(len(result.population), 8)
        self.assertEqual(len(result.history), 4)
        self.assertEqual(len(records), 3)
        self.assertEqual(result.history[0].totals, [0, 0, 0, 0])
        for record in result.history[1:]:
            self.assertEqual(sum(record.totals), 8)
            self.assertAlmostEqual(sum(record.p), 1.0, places=9)
            self.assertTrue(min(record.p) >= P_FLOOR - 1e-12)
        for solution in result.front:
            self.assertTrue(np.all(solution.lam >= LAMBDA_MIN) and np.all(solution.lam <= LAMBDA_MAX))
        for a, b in itertools.permutations(result.front, 2):
            self.assertFalse(dominates(a.objectives, b.objectives))

    def test_zero_generations_returns_initial_front(self):
        result = run_ahmoa(self.network, self.profile, self.cfg.model_copy(update={"max_generations": 0}))
        self.assertEqual(len(result.history), 1)
        self.assertEqual(sorted(s.objectives.f1 for s in result.front),
                         sorted(s.objectives.f1 for s in result.initial_front))

    def test_seed_changes_result(self):
        a = run_ahmoa(self.network, self.profile, self.cfg)
        b = run_ahmoa(self.network, self.profile, self.cfg.model_copy(update={"seed": 22}))
        self.assertFalse(np.array_equal(a.population[0].lam, b.population[0].lam))

    def test_invalid_floor(self):
        with self.assertRaises(ValueError):
            run_ahmoa(self.network, self.profile, self.cfg.model_copy(update={"p_floor": 0.3}))

    def test_configuration_error_type(self):
        self.assertTrue(issubclass(ConfigurationError, ValueError))


if __name__ == '__main__':
    unittest.main(verbosity=2)
