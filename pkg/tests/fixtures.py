import numpy as np
import torch

from domain.adimage.ad_image import ImageKind, blocks_for, stitch
from domain.adimage.encoding import encode_ground_truth
from domain.model.model_config import ModelConfig
from domain.synthdata.generator import generate_dataset
from domain.synthdata.synth_config import SynthConfig
from domain.training.train_config import TrainConfig


def tiny_synth_config(**overrides):
    """
    A dataset small enough for unit tests: 6 videos of 12 to 16 frames, 2 action classes
    """
    values = dict(num_videos=6, min_frames=12, max_frames=16, classes=3, feature_channels=4, min_instances=1,
                  max_instances=2, min_length=2, max_length=4, noise_std=0.3, test_fraction=0.34, seed=3)
    values.update(overrides)
    return SynthConfig(**values)


def tiny_dataset(**overrides):
    dataset, _ = generate_dataset(tiny_synth_config(**overrides))
    return dataset


def tiny_train_config(**overrides):
    """
    One small row-column block and a 4 step schedule that still converges to uniform noise
    """
    values = dict(epochs=1, batch_size=2, learning_rate=1e-3, n_max=16, train_samples=1, steps=4, beta_min=0.8,
                  beta_max=0.9, trials=20, num_blocks=1, heads=2, column_width=4, attention_width=4, mlp_ratio=2,
                  seed=11)
    values.update(overrides)
    return TrainConfig(**values)


def tiny_model_config(**overrides):
    values = dict(num_blocks=1, heads=2, classes=3, feature_channels=4, n_max=16, mlp_ratio=2, column_width=4,
                  attention_width=4)
    values.update(overrides)
    return ModelConfig(**values)


class PerfectDenoiser:
    """
    A stand-in for a trained model that always answers with the ground truth image
    """

    def __init__(self, annotation, classes):
        self.blocks = blocks_for(ImageKind.COMBINED, classes)
        self.truth = torch.from_numpy(stitch(*encode_ground_truth(annotation, classes)).data)
        self.calls = 0

    def __call__(self, x_t, features, step, mask):
        self.calls += 1
        return self.truth.expand(x_t.shape[0], -1, -1).clone()


def random_simplex_rows(rng, rows, width):
    values = rng.random((rows, width)) + 1e-3
    return values / values.sum(axis=1, keepdims=True)


def random_features(rng, rows, channels):
    return rng.normal(size=(rows, channels))


def batched(array):
    return torch.from_numpy(np.asarray(array, dtype=np.float64)).unsqueeze(0)
