from dataclasses import dataclass

import numpy as np
from nptyping import NDArray, Shape, Bool, Float64

from domain.adimage.ad_image import ImageKind, blocks_for, stitch, uniform_image
from domain.adimage.encoding import encode_ground_truth
from domain.exceptions.video_too_long import VideoTooLong
from domain.validation.argument_validation import ensure_not_falsy, ensure_positive_int


@dataclass(frozen=True)
class Batch:
    """
    Videos padded to a common length. Padded rows have zero features, a false mask and uniform
    ground truth rows.
    """
    video_ids: tuple
    num_frames: tuple
    features: NDArray[Shape["*, *, *"], Float64]
    mask: NDArray[Shape["*, *"], Bool]
    targets: NDArray[Shape["*, *, *"], Float64]
    blocks: tuple

    @property
    def size(self):
        return len(self.video_ids)

    @property
    def n_max(self):
        return self.mask.shape[1]


def make_batch(dataset, indices, n_max):
    """
    Pads the selected videos to n_max frames and encodes their combined ground truth images
    :param dataset: The VideoDataset
    :param indices: Positions of the videos in the dataset
    :param n_max: The padded length
    :return: The Batch
    """
    ensure_not_falsy(list(indices), 'indices must not be empty (make_batch).')
    ensure_positive_int(n_max, 'n_max must be a positive integer (make_batch).')

    classes = dataset.classes
    padding_row = uniform_image(1, ImageKind.COMBINED, classes).data[0]
    blocks = blocks_for(ImageKind.COMBINED, classes)

    features = np.zeros((len(indices), n_max, dataset.feature_channels))
    mask = np.zeros((len(indices), n_max), dtype=bool)
    targets = np.tile(padding_row, (len(indices), n_max, 1))

    for position, index in enumerate(indices):
        video = dataset.videos[index]
        frames = video.num_frames
        if frames > n_max:
            raise VideoTooLong(video.video_id, frames, n_max)

        features[position, :frames] = video.features
        mask[position, :frames] = True
        targets[position, :frames] = stitch(*encode_ground_truth(video.annotation, classes)).data

    return Batch(tuple(dataset.videos[index].video_id for index in indices),
                 tuple(dataset.videos[index].num_frames for index in indices),
                 features, mask, targets, blocks)
