import itertools
import math
import unittest
from collections import Counter, defaultdict

import numpy as np

from domain.diffusion.forward_process import forward_step, sample_pair
from domain.diffusion.likelihood import forward_logpmf, posterior_logpmf, Transition
from domain.diffusion.schedule import schedule_from_betas
from domain.exceptions.contract_violation import ContractViolation
from domain.numerics.rng import create_rng


def lattice(weight, cond, trials):
    """
    Every distribution reachable from cond when the noise vector has the given trial count, for two classes
    """
    return [weight * cond + (1 - weight) * np.array([c, trials - c]) / trials for c in range(trials + 1)]


class ForwardLogpmfTests(unittest.TestCase):
    def test_hand_evaluated_binomial(self):
        schedule = schedule_from_betas([0.5], 2)
        value = forward_logpmf([0.75, 0.25], [1.0, 0.0], 1, schedule, Transition.STEP)
        self.assertAlmostEqual(value, math.log(0.5), places=12)

    def test_support(self):
        schedule = schedule_from_betas([0.3, 0.3], 20)
        cond = np.array([0.2, 0.5, 0.3])
        z = forward_step(cond, 1, schedule, create_rng(0))
        self.assertTrue(math.isfinite(forward_logpmf(z, cond, 1, schedule, Transition.STEP)))

        off = z.copy()
        off[0] += 0.5
        self.assertEqual(forward_logpmf(off, cond, 1, schedule, Transition.STEP), -math.inf)

    def test_step_pmf_sums_to_one(self):
        schedule = schedule_from_betas([0.4], 10)
        cond = np.array([0.3, 0.7])
        total = sum(math.exp(forward_logpmf(z, cond, 1, schedule, Transition.STEP))
                    for z in lattice(0.6, cond, 10))
        self.assertAlmostEqual(total, 1.0, places=12)

    def test_mode_is_closest_to_cond(self):
        schedule = schedule_from_betas([0.01], 10)
        cond = np.array([0.5, 0.5])
        candidates = lattice(0.99, cond, 10)
        scores = [forward_logpmf(z, cond, 1, schedule, Transition.STEP) for z in candidates]
        best = candidates[int(np.argmax(scores))]
        closest = min(candidates, key=lambda z: np.abs(z - cond).sum())
        self.assertTrue(np.allclose(best, closest))

    def test_jump_without_noise(self):
        schedule = schedule_from_betas([0.2], 10)
        z0 = np.array([1.0, 0.0])
        self.assertEqual(forward_logpmf(z0, z0, 0, schedule, Transition.JUMP), 0.0)
        self.assertEqual(forward_logpmf([0.9, 0.1], z0, 0, schedule, Transition.JUMP), -math.inf)

    def test_shape_mismatch(self):
        with self.assertRaises(ContractViolation):
            forward_logpmf([0.5, 0.5], [1.0, 0.0, 0.0], 1, schedule_from_betas([0.2], 10), Transition.STEP)


class PosteriorLogpmfTests(unittest.TestCase):
    def setUp(self):
        self.schedule = schedule_from_betas([0.5] * 5, 10)
        self.z0 = np.array([1.0, 0.0])

    def previous_lattice(self, t):
        return lattice(self.schedule.alpha_bar[t - 1], self.z0, self.schedule.jump_trials(t - 1))

    def test_joint_lattice_normalizes(self):
        for t in range(2, 6):
            total = 0.0
            for z_prev in self.previous_lattice(t):
                for z_t in lattice(1 - self.schedule.beta[t], z_prev, self.schedule.trials):
                    total += math.exp(posterior_logpmf(z_prev, z_t, self.z0, t, self.schedule))
            self.assertAlmostEqual(total, 1.0, delta=1e-9)

    def test_off_lattice(self):
        z_prev = np.array([0.512345, 0.487655])
        self.assertEqual(posterior_logpmf(z_prev, [0.5, 0.5], self.z0, 2, self.schedule), -math.inf)

    def test_mode_for_clean_observation(self):
        schedule = schedule_from_betas([0.01] * 3, 10)
        one_hot = np.array([0.0, 1.0])
        candidates = lattice(schedule.alpha_bar[1], one_hot, schedule.jump_trials(1))
        z_t = (1 - schedule.beta[2]) * candidates[0] + schedule.beta[2] * one_hot
        scores = [posterior_logpmf(z_prev, z_t, one_hot, 2, schedule) for z_prev in candidates]
        best = candidates[int(np.argmax(scores))]
        self.assertEqual(int(np.argmax(best)), 1)
        self.assertTrue(np.allclose(best, candidates[0]))

    def test_matches_sampled_conditional(self):
        t = 2
        previous, current = sample_pair(np.tile(self.z0, (100_000, 1)), t, self.schedule, create_rng(8))

        groups = defaultdict(Counter)
        for z_prev, z_t in zip(np.round(previous[:, 0], 9), np.round(current[:, 0], 9)):
            groups[z_t][z_prev] += 1

        candidates = self.previous_lattice(t)
        checked = 0
        for z_t_first, counts in groups.items():
            observed = sum(counts.values())
            if observed < 5_000:
                continue
            z_t = np.array([z_t_first, 1 - z_t_first])
            scores = np.array([posterior_logpmf(z_prev, z_t, self.z0, t, self.schedule) for z_prev in candidates])
            weights = np.exp(scores - scores.max())
            posterior = weights / weights.sum()
            self.assertAlmostEqual(posterior.sum(), 1.0, delta=1e-9)

            empirical = np.array([counts.get(round(z_prev[0], 9), 0) / observed for z_prev in candidates])
            self.assertLess(0.5 * np.abs(empirical - posterior).sum(), 0.03)
            checked += 1
        self.assertGreater(checked, 0)

    def test_step_range(self):
        with self.assertRaises(ContractViolation):
            posterior_logpmf(self.z0, self.z0, self.z0, 1, self.schedule)

    def test_lattice_helper_covers_every_count(self):
        points = lattice(0.5, self.z0, 10)
        self.assertEqual(len(points), 11)
        self.assertEqual(len({round(p[0], 9) for p in points}), 11)
        self.assertTrue(all(abs(p.sum() - 1) < 1e-12 for p in points))


if __name__ == '__main__':
    unittest.main()
