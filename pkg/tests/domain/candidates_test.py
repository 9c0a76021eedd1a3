import unittest

import numpy as np
from pydantic import ValidationError

from domain.adimage.ad_image import AdImage, ImageKind, blocks_for, stitch
from domain.adimage.annotation import Annotation, AnnotatedInstance
from domain.adimage.encoding import encode_ground_truth
from domain.inference.action_instance import ActionInstance, ground_truth_instances
from domain.inference.candidates import generate_candidates


def combined_image(action, start_probs, end_probs):
    """
    Builds a combined image from action rows and the boundary probabilities of the start and end columns
    """
    start = np.stack([start_probs, 1 - np.asarray(start_probs)], axis=1)
    end = np.stack([end_probs, 1 - np.asarray(end_probs)], axis=1)
    classes = np.shape(action)[1]
    return AdImage(np.concatenate([action, start, end], axis=1), blocks_for(ImageKind.COMBINED, classes),
                   ImageKind.COMBINED)


class GenerateCandidatesTests(unittest.TestCase):
    def test_ends_must_follow_starts(self):
        action = np.tile([0.1, 0.9], (7, 1))
        start = [0, 0, 0.95, 0, 0, 0, 0]
        end = [0, 0.95, 0, 0, 0, 0.95, 0]
        candidates = generate_candidates(combined_image(action, start, end), 0.9, 200)
        self.assertEqual([(c.start, c.end) for c in candidates], [(2, 5)])

    def test_score(self):
        action = np.tile([0.2, 0.8, 0.0], (4, 1))
        candidates = generate_candidates(combined_image(action, [0.95, 0, 0, 0], [0, 0, 0, 0.9]), 0.85, 200)
        self.assertEqual(len(candidates), 1)
        self.assertEqual(candidates[0].class_id, 1)
        self.assertAlmostEqual(candidates[0].score, (0.95 * 0.9 * 0.8) ** (1 / 3), places=12)
        self.assertAlmostEqual(candidates[0].score, 0.8811, places=4)

    def test_class_ignores_background(self):
        action = np.tile([0.7, 0.1, 0.2], (3, 1))
        candidates = generate_candidates(combined_image(action, [1, 0, 0], [0, 0, 1]), 0.9, 200)
        self.assertEqual(candidates[0].class_id, 2)

    def test_perfect_image(self):
        truth = Annotation(video_id='v', num_frames=8, instances=[AnnotatedInstance(start=2, end=4, class_id=2)])
        image = stitch(*encode_ground_truth(truth, 3))
        candidates = generate_candidates(image, 0.9, 200, video_id='v')
        self.assertEqual(candidates, [ActionInstance(video_id='v', start=2, end=4, class_id=2, score=1.0)])

    def test_sorted_and_capped(self):
        action = np.tile([0.0, 1.0], (10, 1))
        start = np.array([0.99, 0, 0.95, 0, 0.92, 0, 0, 0, 0, 0])
        end = np.array([0, 0, 0, 0, 0, 0, 0.97, 0, 0.93, 0])
        candidates = generate_candidates(combined_image(action, start, end), 0.9, 200)
        self.assertEqual(len(candidates), 6)
        scores = [c.score for c in candidates]
        self.assertEqual(scores, sorted(scores, reverse=True))
        self.assertEqual((candidates[0].start, candidates[0].end), (0, 6))

        capped = generate_candidates(combined_image(action, start, end), 0.9, 2)
        self.assertEqual(capped, candidates[:2])


class ActionInstanceTests(unittest.TestCase):
    def test_start_after_end(self):
        with self.assertRaises(ValidationError):
            ActionInstance(start=5, end=4, class_id=1, score=0.5)

    def test_background_class(self):
        with self.assertRaises(ValidationError):
            ActionInstance(start=1, end=4, class_id=0, score=0.5)

    def test_ground_truth_instances(self):
        annotations = [Annotation(video_id='a', num_frames=5, instances=[AnnotatedInstance(start=0, end=1, class_id=1)]),
                       Annotation(video_id='b', num_frames=5)]
        self.assertEqual(ground_truth_instances(annotations),
                         [ActionInstance(video_id='a', start=0, end=1, class_id=1, score=1.0)])


if __name__ == '__main__':
    unittest.main()
