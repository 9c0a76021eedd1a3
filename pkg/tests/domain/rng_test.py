import json
import unittest

import numpy as np

from domain.exceptions.simplex_invalid import SimplexInvalid
from domain.numerics.rng import create_rng, derive_rng, Stream, rng_state, restore_rng, multinomial_sample, \
    uniform_multinomial_rows


class RngTests(unittest.TestCase):
    def test_same_seed_same_draws(self):
        self.assertTrue(np.array_equal(create_rng(5).random(10), create_rng(5).random(10)))
        self.assertFalse(np.array_equal(create_rng(5).random(10), create_rng(6).random(10)))

    def test_derived_streams_are_independent(self):
        first = derive_rng(1, Stream.VIDEO, 0).random(5)
        self.assertTrue(np.array_equal(first, derive_rng(1, Stream.VIDEO, 0).random(5)))
        self.assertFalse(np.array_equal(first, derive_rng(1, Stream.VIDEO, 1).random(5)))
        self.assertFalse(np.array_equal(first, derive_rng(1, Stream.DETECTION, 0).random(5)))

    def test_state_round_trips_through_json(self):
        rng = create_rng(9)
        rng.random(3)
        rng.multinomial(5, [0.5, 0.5])
        state = json.loads(json.dumps(rng_state(rng)))

        restored = restore_rng(state)
        self.assertTrue(np.array_equal(rng.random(20), restored.random(20)))
        self.assertTrue(np.array_equal(rng.integers(0, 100, size=20), restored.integers(0, 100, size=20)))

    def test_negative_seed_rejected(self):
        with self.assertRaises(ValueError):
            create_rng(-1)


class MultinomialTests(unittest.TestCase):
    def test_degenerate_simplex(self):
        self.assertEqual(multinomial_sample(create_rng(0), 7, [1.0, 0.0, 0.0]).tolist(), [7, 0, 0])

    def test_counts_conserve_trials(self):
        rng = create_rng(1)
        for trials in (1, 3, 200, 2000):
            counts = multinomial_sample(rng, trials, [0.2, 0.3, 0.1, 0.4])
            self.assertEqual(counts.sum(), trials)
            self.assertTrue(np.all(counts >= 0))

    def test_mean_of_single_trial(self):
        # one trial per seed over 10^5 seeds, vectorized as independent rows
        counts = uniform_multinomial_rows(create_rng(2), 1, 100000, 2)
        self.assertTrue(np.all(counts.sum(axis=1) == 1))
        self.assertAlmostEqual(counts[:, 0].mean(), 0.5, delta=0.01)

    def test_deterministic(self):
        self.assertEqual(multinomial_sample(create_rng(4), 50, [0.25] * 4).tolist(),
                         multinomial_sample(create_rng(4), 50, [0.25] * 4).tolist())

    def test_off_simplex_rejected(self):
        with self.assertRaises(SimplexInvalid):
            multinomial_sample(create_rng(0), 5, [0.5, 0.6])
        with self.assertRaises(SimplexInvalid):
            multinomial_sample(create_rng(0), 5, [1.5, -0.5])

    def test_simplex_tolerance(self):
        counts = multinomial_sample(create_rng(0), 10, [0.5, 0.5 + 5e-10])
        self.assertEqual(counts.sum(), 10)

    def test_trials_must_be_positive(self):
        with self.assertRaises(ValueError):
            multinomial_sample(create_rng(0), 0, [1.0])

    def test_rows_match_single_draws(self):
        rows = uniform_multinomial_rows(create_rng(8), 30, 4, 3)
        rng = create_rng(8)
        singles = np.stack([rng.multinomial(30, np.full(3, 1.0 / 3)) for _ in range(4)])
        self.assertTrue(np.array_equal(rows, singles))


if __name__ == '__main__':
    unittest.main()
