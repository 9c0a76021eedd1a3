import numpy as np
from pydantic import BaseModel

from domain.adimage.annotation import Annotation, AnnotatedInstance
from domain.exceptions.config_infeasible import ConfigInfeasible
from domain.logging.app_logging import configure_logging
from domain.numerics.rng import Stream, derive_rng
from domain.synthdata.synth_config import SynthConfig
from domain.synthdata.video_dataset import VideoDataset, VideoRecord

logger = configure_logging(__name__)

MANIFEST_VERSION = 1


class Manifest(BaseModel):
    """
    The index of a generated dataset: the echo of its configuration and the split lists
    """
    version: int = MANIFEST_VERSION
    config: SynthConfig
    classes: int
    feature_channels: int
    videos: list[str]
    train: list[str]
    test: list[str]


def video_id_for(index):
    return f'video_{index:04d}'


def class_signatures(config):
    """
    The mean feature vector of every class, background included. Vectors are orthonormal when the
    feature width allows it, then scaled to the configured separation.
    :param config: The SynthConfig
    :return: A (classes, feature_channels) matrix
    """
    rng = derive_rng(config.seed, Stream.SIGNATURES)
    raw = rng.normal(size=(config.feature_channels, config.classes))
    if config.classes <= config.feature_channels:
        basis, _ = np.linalg.qr(raw)
        directions = basis.T
    else:
        directions = (raw / np.linalg.norm(raw, axis=0, keepdims=True)).T
    return config.separation * directions


def draw_instances(config, num_frames, rng):
    """
    Draws non-overlapping instances that are separated by at least one background frame
    :return: A list of AnnotatedInstance
    """
    fits = (num_frames + 1) // (config.min_length + 1)
    if fits < config.min_instances:
        raise ConfigInfeasible(f'{config.min_instances} instances of at least {config.min_length} frames do not '
                               f'fit in {num_frames} frames (draw_instances).')

    count = int(rng.integers(config.min_instances, min(config.max_instances, fits) + 1))
    # each instance uses its length plus one separating frame; the last one needs no separator
    budget = num_frames + 1
    lengths = []
    for index in range(count):
        reserved = (count - index - 1) * (config.min_length + 1)
        longest = min(config.max_length, budget - reserved - 1)
        length = int(rng.integers(config.min_length, longest + 1))
        lengths.append(length)
        budget -= length + 1

    slack = rng.multinomial(budget, np.full(count + 1, 1.0 / (count + 1))) if count else np.zeros(1, dtype=int)
    classes = rng.integers(1, config.classes, size=count)

    instances = []
    position = int(slack[0])
    for index, length in enumerate(lengths):
        instances.append(AnnotatedInstance(start=position, end=position + length - 1, class_id=int(classes[index])))
        position += length + 1 + int(slack[index + 1])
    return instances


def gen_video(config, rng, video_id='video_0000', signatures=None):
    """
    Generates one video: instances first, then per-frame features equal to the signature of the
    frame's class plus Gaussian noise
    :param config: The SynthConfig
    :param rng: The generator of this video
    :param video_id: The id written into the annotation
    :param signatures: Precomputed class_signatures(config)
    :return: A tuple of the (N, C_ST) features and the Annotation
    """
    if signatures is None:
        signatures = class_signatures(config)

    num_frames = int(rng.integers(config.min_frames, config.max_frames + 1))
    instances = draw_instances(config, num_frames, rng)

    labels = np.zeros(num_frames, dtype=np.int64)
    for instance in instances:
        labels[instance.start:instance.end + 1] = instance.class_id

    features = signatures[labels] + config.noise_std * rng.normal(size=(num_frames, config.feature_channels))
    return features, Annotation(video_id=video_id, num_frames=num_frames, instances=instances)


def split_videos(config, video_ids):
    """
    Assigns round(test_fraction * num_videos) randomly chosen videos to the test split
    :return: A tuple of the sorted train ids and the sorted test ids
    """
    order = derive_rng(config.seed, Stream.SPLIT).permutation(len(video_ids))
    test_count = int(np.floor(config.test_fraction * len(video_ids) + 0.5))
    test = sorted(video_ids[index] for index in order[:test_count])
    train = sorted(video_ids[index] for index in order[test_count:])
    return train, test


def generate_dataset(config):
    """
    Generates every video from its own stream and splits them
    :param config: The SynthConfig
    :return: A tuple of the VideoDataset and its Manifest
    """
    signatures = class_signatures(config)
    videos = []
    for index in range(config.num_videos):
        video_id = video_id_for(index)
        features, annotation = gen_video(config, derive_rng(config.seed, Stream.VIDEO, index), video_id, signatures)
        videos.append(VideoRecord(video_id, features, annotation))

    video_ids = [video.video_id for video in videos]
    train, test = split_videos(config, video_ids)
    logger.info(f'Generated {len(videos)} videos ({len(train)} train, {len(test)} test)')

    manifest = Manifest(config=config, classes=config.classes, feature_channels=config.feature_channels,
                        videos=video_ids, train=train, test=test)
    dataset = VideoDataset(config.classes, config.feature_channels, videos, train, test)
    return dataset, manifest
