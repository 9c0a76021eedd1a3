import unittest

import numpy as np

from domain.evaluation.average_precision import average_precision, interpolated_area
from domain.inference.action_instance import ActionInstance


def instance(start, end, score=1.0, class_id=1, video_id='v'):
    return ActionInstance(video_id=video_id, start=start, end=end, class_id=class_id, score=score)


class AveragePrecisionTests(unittest.TestCase):
    def test_exact_prediction(self):
        self.assertEqual(average_precision([instance(0, 9, 0.4)], [instance(0, 9)], 1, 0.5), 1.0)

    def test_below_threshold(self):
        self.assertEqual(average_precision([instance(0, 9, 0.4)], [instance(5, 14)], 1, 0.5), 0.0)

    def test_hand_computed_curve(self):
        truths = [instance(0, 9), instance(20, 29)]
        predictions = [instance(0, 9, 0.9), instance(40, 49, 0.8), instance(20, 29, 0.7)]
        self.assertAlmostEqual(average_precision(predictions, truths, 1, 0.5), 0.5 + 0.5 * 2 / 3, places=12)
        self.assertAlmostEqual(average_precision(predictions, truths, 1, 0.5), 0.8333, places=4)

    def test_duplicates_count_once(self):
        truths = [instance(0, 9)]
        predictions = [instance(0, 9, 0.9), instance(0, 9, 0.8), instance(1, 9, 0.7)]
        self.assertEqual(average_precision(predictions, truths, 1, 0.5), 1.0)
        # a prediction from another video ranks above the only true positive
        reordered = [instance(0, 9, 0.5), instance(0, 9, 0.8, video_id='other')]
        self.assertEqual(average_precision(reordered, truths, 1, 0.5), 0.5)

    def test_other_classes_and_videos_are_ignored(self):
        truths = [instance(0, 9), instance(0, 9, class_id=2)]
        predictions = [instance(0, 9, 0.9, class_id=2), instance(0, 9, 0.5, video_id='w')]
        self.assertEqual(average_precision(predictions, truths, 1, 0.5), 0.0)
        self.assertEqual(average_precision(predictions, truths, 2, 0.5), 1.0)

    def test_no_ground_truth(self):
        self.assertEqual(average_precision([instance(0, 9)], [], 1, 0.5), 0.0)

    def test_best_overlap_wins(self):
        truths = [instance(0, 9), instance(2, 11)]
        predictions = [instance(2, 11, 0.9), instance(0, 9, 0.8)]
        self.assertEqual(average_precision(predictions, truths, 1, 0.5), 1.0)

    def test_monotone_rescaling(self):
        rng = np.random.default_rng(0)
        truths = [instance(int(s), int(s) + 5, video_id=str(v)) for v in range(4) for s in rng.integers(0, 50, 3)]
        predictions = [instance(int(s), int(s) + int(rng.integers(2, 8)), float(rng.uniform(0.01, 0.99)),
                                video_id=str(int(rng.integers(0, 4))))
                       for s in rng.integers(0, 50, 40)]
        rescaled = [p.model_copy(update={'score': p.score ** 3}) for p in predictions]
        for threshold in (0.3, 0.5, 0.7):
            self.assertEqual(average_precision(predictions, truths, 1, threshold),
                             average_precision(rescaled, truths, 1, threshold))


class InterpolatedAreaTests(unittest.TestCase):
    def test_envelope(self):
        precision = np.array([1.0, 0.5, 2 / 3])
        recall = np.array([0.5, 0.5, 1.0])
        self.assertAlmostEqual(interpolated_area(precision, recall), 0.5 + 0.5 * 2 / 3, places=12)

    def test_later_precision_lifts_earlier(self):
        precision = np.array([0.0, 0.5])
        recall = np.array([0.0, 1.0])
        self.assertAlmostEqual(interpolated_area(precision, recall), 0.5, places=12)


if __name__ == '__main__':
    unittest.main()
