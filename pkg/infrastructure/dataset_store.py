import json
import os

from pydantic import TypeAdapter, ValidationError

from domain.adimage.annotation import Annotation
from domain.exceptions.format_invalid import FormatInvalid, UnsupportedVersion
from domain.exceptions.shape_mismatch import ShapeMismatch
from domain.logging.app_logging import configure_logging
from domain.synthdata.generator import Manifest, MANIFEST_VERSION, generate_dataset
from domain.synthdata.video_dataset import VideoDataset, VideoRecord
from infrastructure.feature_store import read_features, write_features
from infrastructure.io_wrapper import logging_wrapper

logger = configure_logging(__name__)

MANIFEST_FILE = 'manifest.json'
ANNOTATIONS_FILE = 'annotations.json'
FEATURES_DIR = 'features'

annotation_list = TypeAdapter(list[Annotation])


def feature_path(data_dir, video_id):
    return os.path.join(data_dir, FEATURES_DIR, f'{video_id}.adft')


@logging_wrapper
def gen_dataset(out_dir, config):
    """
    Generates the synthetic dataset and writes it. Identical configurations give byte-identical files.
    :param out_dir: The dataset directory
    :param config: The SynthConfig
    :return: The Manifest
    """
    dataset, manifest = generate_dataset(config)
    write_dataset(out_dir, dataset, manifest)
    return manifest


@logging_wrapper
def write_dataset(out_dir, dataset, manifest):
    """
    Writes manifest.json, annotations.json and one feature file per video
    """
    os.makedirs(out_dir, exist_ok=True)
    if dataset.videos:
        os.makedirs(os.path.join(out_dir, FEATURES_DIR), exist_ok=True)
    for video in dataset.videos:
        write_features(feature_path(out_dir, video.video_id), video.features)

    write_json(os.path.join(out_dir, ANNOTATIONS_FILE),
               [video.annotation.model_dump(mode='json') for video in dataset.videos])
    write_json(os.path.join(out_dir, MANIFEST_FILE), manifest.model_dump(mode='json'))


@logging_wrapper
def read_manifest(data_dir):
    path = os.path.join(data_dir, MANIFEST_FILE)
    content = read_json(path)
    if isinstance(content, dict) and content.get('version', MANIFEST_VERSION) != MANIFEST_VERSION:
        raise UnsupportedVersion(path, content.get('version'), MANIFEST_VERSION)
    try:
        return Manifest.model_validate(content)
    except ValidationError as e:
        raise FormatInvalid(path, str(e)) from e


@logging_wrapper
def read_annotations(data_dir):
    path = os.path.join(data_dir, ANNOTATIONS_FILE)
    try:
        return annotation_list.validate_python(read_json(path))
    except ValidationError as e:
        raise FormatInvalid(path, str(e)) from e


@logging_wrapper
def load_dataset(data_dir):
    """
    Loads a dataset written by write_dataset
    :param data_dir: The dataset directory
    :return: A tuple of the VideoDataset and its Manifest
    """
    manifest = read_manifest(data_dir)
    annotations = {annotation.video_id: annotation for annotation in read_annotations(data_dir)}

    videos = []
    for video_id in manifest.videos:
        if video_id not in annotations:
            raise FormatInvalid(os.path.join(data_dir, ANNOTATIONS_FILE), f'no annotation for {video_id}')
        features = read_features(feature_path(data_dir, video_id))
        annotation = annotations[video_id]
        if features.shape != (annotation.num_frames, manifest.feature_channels):
            raise ShapeMismatch(f'{video_id} has features {features.shape} but {annotation.num_frames} annotated '
                                f'frames and {manifest.feature_channels} channels (load_dataset).')
        videos.append(VideoRecord(video_id, features, annotation))

    logger.info(f'Loaded {len(videos)} videos from {data_dir}')
    return VideoDataset(manifest.classes, manifest.feature_channels, videos, list(manifest.train),
                        list(manifest.test)), manifest


@logging_wrapper
def write_json(path, content):
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(content, file, sort_keys=True, indent=2)
        file.write('\n')


@logging_wrapper
def read_json(path):
    with open(path, 'r', encoding='utf-8') as file:
        try:
            return json.load(file)
        except json.JSONDecodeError as e:
            raise FormatInvalid(path, str(e)) from e
