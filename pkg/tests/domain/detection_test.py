import unittest

import numpy as np

from domain.adimage.annotation import Annotation, AnnotatedInstance
from domain.diffusion.schedule import schedule_from_config
from domain.evaluation.eval_report import map_report
from domain.exceptions.video_too_long import VideoTooLong
from domain.inference.action_instance import ActionInstance, ground_truth_instances
from domain.inference.decode_config import DecodeConfig
from domain.inference.detection import detect, detect_videos
from domain.numerics.rng import create_rng
from tests.domain.reverse_chain_test import untrained_denoiser
from tests.fixtures import PerfectDenoiser, tiny_train_config, tiny_dataset, random_features


class DetectTests(unittest.TestCase):
    def setUp(self):
        self.schedule = schedule_from_config(tiny_train_config().schedule_config())

    def test_perfect_denoiser(self):
        truth = Annotation(video_id='v', num_frames=12, instances=[
            AnnotatedInstance(start=1, end=3, class_id=1), AnnotatedInstance(start=6, end=9, class_id=2)])
        detections = detect(PerfectDenoiser(truth, 3), np.zeros((12, 4)), np.ones(12, dtype=bool), self.schedule,
                            DecodeConfig(), create_rng(0), video_id='v')

        self.assertEqual(detections[:2], [ActionInstance(video_id='v', start=1, end=3, class_id=1, score=1.0),
                                          ActionInstance(video_id='v', start=6, end=9, class_id=2, score=1.0)])
        # the cross coupling 1..9 survives with a decayed score below both
        self.assertTrue(all(d.score < 1.0 for d in detections[2:]))
        report = map_report(detections, ground_truth_instances([truth]), [0.3, 0.5, 0.7])
        self.assertEqual(report.average, 1.0)

    def test_untrained_model_gives_valid_instances(self):
        features = random_features(create_rng(3), 14, 4)
        mask = np.array([True] * 10 + [False] * 4)
        for seed in range(3):
            detections = detect(untrained_denoiser(seed=seed), features, mask, self.schedule,
                                DecodeConfig(threshold=0.5, samples=2), create_rng(seed))
            self.assertIsInstance(detections, list)
            for detection in detections:
                self.assertGreaterEqual(detection.class_id, 1)
                self.assertLessEqual(detection.class_id, 2)
                self.assertLess(detection.start, detection.end)
                self.assertLess(detection.end, 10)


class DetectVideosTests(unittest.TestCase):
    def setUp(self):
        self.schedule = schedule_from_config(tiny_train_config().schedule_config())
        self.dataset = tiny_dataset()
        self.config = DecodeConfig(threshold=0.5, samples=2)

    def test_jobs_do_not_change_results(self):
        denoiser = untrained_denoiser()
        indices = self.dataset.split_indices('all')
        serial, serial_seconds = detect_videos(denoiser, self.dataset, indices, self.schedule, self.config, 4)
        parallel, _ = detect_videos(denoiser, self.dataset, indices, self.schedule, self.config, 4, jobs=3)

        self.assertEqual(serial, parallel)
        self.assertEqual(len(serial_seconds), len(indices))
        video_ids = {video.video_id for video in self.dataset.videos}
        self.assertTrue(all(d.video_id in video_ids for d in serial))

    def test_video_longer_than_model(self):
        denoiser = untrained_denoiser()
        for model in denoiser.models.values():
            model.config = model.config.model_copy(update={'n_max': 8})
        with self.assertRaises(VideoTooLong):
            detect_videos(denoiser, self.dataset, [0], self.schedule, self.config, 0)

    def test_jobs_must_be_positive(self):
        with self.assertRaises(ValueError):
            detect_videos(untrained_denoiser(), self.dataset, [0], self.schedule, self.config, 0, jobs=0)


if __name__ == '__main__':
    unittest.main()
