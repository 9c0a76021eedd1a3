import numpy as np
import torch

from domain.adimage.ad_image import AdImage, ImageKind
from domain.diffusion.forward_process import init_noise
from domain.model.step_embedding import step_embedding
from domain.numerics.ops import ensure_finite


def reverse_chain(denoiser, features, mask, schedule, config, rng):
    """
    Runs the learned reverse process from multinomial noise down to step 0. config.samples chains
    run side by side as one batch; their final images are averaged and every block-row is
    renormalized.
    :param denoiser: Any callable (x_t, features, step, mask) -> x_{t-1} over batched combined images,
    with a blocks attribute giving the combined layout
    :param features: (N, C_ST) video features
    :param mask: (N,) booleans, true on real frames
    :param schedule: The Schedule
    :param config: The DecodeConfig
    :param rng: The generator the initial noise is drawn from
    :return: The combined AdImage estimate of x_0
    """
    features = np.asarray(features, dtype=np.float64)
    mask = np.asarray(mask, dtype=bool)
    num_rows, samples = features.shape[0], config.samples
    blocks = tuple(denoiser.blocks)

    noise = init_noise(num_rows, blocks, schedule, rng, samples, ImageKind.COMBINED)
    x = torch.from_numpy(np.stack([image.data for image in noise]))
    batched_features = torch.from_numpy(np.tile(features, (samples, 1, 1)))
    batched_mask = torch.from_numpy(np.tile(mask, (samples, 1)))

    with torch.no_grad():
        for t in range(schedule.steps, 0, -1):
            step = step_embedding(t, schedule.steps, num_rows).expand(samples, num_rows, 1)
            x = ensure_finite(denoiser(x, batched_features, step, batched_mask), f'reverse step {t}')

    mean = x.mean(dim=0).numpy()
    parts = [mean[:, offset:offset + width] / mean[:, offset:offset + width].sum(axis=1, keepdims=True)
             for offset, width in blocks]
    return AdImage(np.concatenate(parts, axis=1), blocks, ImageKind.COMBINED)
