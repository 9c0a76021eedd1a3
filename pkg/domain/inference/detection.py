from concurrent.futures import ThreadPoolExecutor

import numpy as np

from domain.adimage.ad_image import AdImage, ImageKind
from domain.exceptions.video_too_long import VideoTooLong
from domain.inference.candidates import generate_candidates
from domain.inference.reverse_chain import reverse_chain
from domain.inference.soft_nms import soft_nms
from domain.logging.app_logging import configure_logging
from domain.numerics.rng import Stream, derive_rng
from domain.performance.timing import timing_wrapper
from domain.validation.argument_validation import ensure_positive_int

logger = configure_logging(__name__)


def detect(denoiser, features, mask, schedule, config, rng, video_id=''):
    """
    Detects the actions of one video: reverse chain, boundary extraction on the real frames,
    start/end coupling and Soft-NMS
    :param denoiser: The Denoiser (or any callable with the same contract)
    :param features: (N, C_ST) video features
    :param mask: (N,) booleans, true on real frames
    :param schedule: The Schedule
    :param config: The DecodeConfig
    :param rng: The generator for the initial noise
    :param video_id: Copied into the detections
    :return: A list of ActionInstance by descending score
    """
    estimate = reverse_chain(denoiser, features, mask, schedule, config, rng)
    valid = np.asarray(mask, dtype=bool)
    trimmed = AdImage(estimate.data[valid], estimate.blocks, ImageKind.COMBINED)
    candidates = generate_candidates(trimmed, config.threshold, config.max_candidates, video_id)
    return soft_nms(candidates, config.nms_sigma, config.score_floor)


def detect_videos(denoiser, dataset, indices, schedule, config, seed, jobs=1):
    """
    Detects the actions of several videos. Video i draws its noise from its own stream, so the
    output does not depend on the number of jobs.
    :param denoiser: The Denoiser
    :param dataset: The VideoDataset
    :param indices: Positions of the videos to process
    :param schedule: The Schedule
    :param config: The DecodeConfig
    :param seed: The run seed
    :param jobs: Worker threads
    :return: A tuple of the detections of all videos in index order and the seconds spent per video
    """
    ensure_positive_int(jobs, 'jobs must be a positive integer (detect_videos).')
    n_max = _n_max(denoiser)

    def run(index):
        video = dataset.videos[index]
        if n_max is not None and video.num_frames > n_max:
            raise VideoTooLong(video.video_id, video.num_frames, n_max)
        mask = np.ones(video.num_frames, dtype=bool)
        return timing_wrapper(lambda: detect(denoiser, video.features, mask, schedule, config,
                                             derive_rng(seed, Stream.DETECTION, index), video.video_id),
                              f'detect {video.video_id}')

    if jobs == 1:
        results = [run(index) for index in indices]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(run, indices))

    detections = [instance for instances, _ in results for instance in instances]
    seconds = [elapsed for _, elapsed in results]
    if seconds:
        logger.info(f'Detected {len(detections)} instances in {len(seconds)} videos, '
                    f'{sum(seconds) / len(seconds):.3f} s per clip')
    return detections, seconds


def _n_max(denoiser):
    models = getattr(denoiser, 'models', None)
    if not models:
        return None
    return min(model.config.n_max for model in models.values())
