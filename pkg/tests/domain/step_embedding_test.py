import math
import unittest

import torch

from domain.exceptions.contract_violation import ContractViolation
from domain.model.step_embedding import step_embedding


class StepEmbeddingTests(unittest.TestCase):
    def test_values(self):
        self.assertEqual(step_embedding(0, 50, 3).tolist(), [[0.0]] * 3)
        self.assertAlmostEqual(step_embedding(50, 50, 1).item(), 1.0, places=15)
        self.assertAlmostEqual(step_embedding(25, 50, 1).item(), math.sin(math.pi / 4), places=15)

    def test_distinct_and_monotone(self):
        values = [step_embedding(t, 50, 1).item() for t in range(51)]
        self.assertTrue(all(a < b for a, b in zip(values, values[1:])))

    def test_shape_and_type(self):
        embedding = step_embedding(3, 10, 7)
        self.assertEqual(tuple(embedding.shape), (7, 1))
        self.assertEqual(embedding.dtype, torch.float64)

    def test_out_of_range(self):
        with self.assertRaises(ContractViolation):
            step_embedding(11, 10, 2)


if __name__ == '__main__':
    unittest.main()
