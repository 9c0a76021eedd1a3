import unittest

from domain.exceptions.contract_violation import ContractViolation
from tests.fixtures import tiny_dataset


class VideoDatasetTests(unittest.TestCase):
    def setUp(self):
        self.dataset = tiny_dataset()

    def test_lookups(self):
        self.assertEqual(self.dataset.index_of('video_0003'), 3)
        self.assertEqual(self.dataset.indices_of(['video_0005', 'video_0000']), [5, 0])
        self.assertEqual(self.dataset.split_indices('all'), list(range(6)))
        self.assertEqual(sorted(self.dataset.split_indices('train') + self.dataset.split_indices('test')),
                         list(range(6)))

    def test_unknown_video(self):
        with self.assertRaises(ContractViolation):
            self.dataset.index_of('missing')
        with self.assertRaises(ContractViolation):
            self.dataset.indices_of(['video_0000', 'missing'])

    def test_unknown_split(self):
        with self.assertRaises(ContractViolation):
            self.dataset.split_indices('validation')

    def test_frames_follow_features(self):
        for video in self.dataset.videos:
            self.assertEqual(video.num_frames, video.annotation.num_frames)


if __name__ == '__main__':
    unittest.main()
