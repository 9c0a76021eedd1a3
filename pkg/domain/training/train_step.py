import math
from dataclasses import dataclass

import numpy as np
import torch

from domain.adimage.ad_image import AdImage, ImageKind, uniform_image
from domain.diffusion.forward_process import sample_pair_image
from domain.exceptions.numeric_error import NumericError
from domain.exceptions.training_diverged import TrainingDiverged
from domain.model.step_embedding import step_embedding
from domain.numerics.autodiff import backward
from domain.training.optimization import current_lr


@dataclass(frozen=True)
class StepResult:
    loss: float
    grad_norm: float
    lr: float
    steps: tuple


def noisy_pairs(batch, steps, schedule, rng, samples):
    """
    Draws the supervision pairs (x_{t-1}, x_t) for every example and noise sample. Rows are
    ordered sample-major, so row m * B + b holds draw m of example b. Noise is only drawn for
    real frames; padded rows stay uniform.
    :return: A tuple of two (samples * B, n_max, W) arrays
    """
    classes = batch.blocks[0][1]
    padding_row = uniform_image(1, ImageKind.COMBINED, classes).data[0]
    previous = np.tile(padding_row, (samples * batch.size, batch.n_max, 1))
    current = previous.copy()

    for sample in range(samples):
        for example in range(batch.size):
            frames = batch.num_frames[example]
            clean = AdImage(batch.targets[example, :frames], batch.blocks, ImageKind.COMBINED)
            x_prev, x_t = sample_pair_image(clean, int(steps[example]), schedule, rng)
            previous[sample * batch.size + example, :frames] = x_prev.data
            current[sample * batch.size + example, :frames] = x_t.data

    return previous, current


def compute_loss(denoiser, batch, schedule, rng, samples):
    """
    Draws one step per example and samples noise pairs for it, then scores the denoiser's
    prediction of x_{t-1} from x_t
    :return: A tuple of the scalar loss tensor and the drawn steps
    """
    steps = rng.integers(1, schedule.steps + 1, size=batch.size)
    previous, current = noisy_pairs(batch, steps, schedule, rng, samples)

    step_columns = np.stack([step_embedding(int(t), schedule.steps, batch.n_max).numpy() for t in steps])
    features = torch.from_numpy(np.tile(batch.features, (samples, 1, 1)))
    step = torch.from_numpy(np.tile(step_columns, (samples, 1, 1)))
    mask = torch.from_numpy(np.tile(batch.mask, (samples, 1)))

    prediction = denoiser(torch.from_numpy(current), features, step, mask)
    return denoiser.loss(prediction, torch.from_numpy(previous), mask), tuple(int(t) for t in steps)


def train_step(denoiser, optimizer, scheduler, batch, schedule, rng, config):
    """
    One optimizer update: loss, gradients, global norm clipping, AdamW step and learning rate decay
    :param denoiser: The Denoiser being trained
    :param optimizer: The AdamW optimizer over the denoiser parameters
    :param scheduler: The learning rate scheduler
    :param batch: The Batch
    :param schedule: The diffusion Schedule
    :param rng: The training generator
    :param config: The TrainConfig
    :return: The StepResult
    """
    parameters = denoiser.named_parameters()
    lr = current_lr(optimizer)
    previous_norms = _grad_norms(parameters)

    loss, steps = compute_loss(denoiser, batch, schedule, rng, config.train_samples)
    if not torch.isfinite(loss):
        raise TrainingDiverged(steps, lr, previous_norms)

    try:
        gradients = backward(loss, parameters)
    except NumericError as e:
        raise TrainingDiverged(steps, lr, previous_norms, f'gradient of {e.op_name} is not finite') from e
    for name, parameter in parameters.items():
        parameter.grad = gradients[name]

    grad_norm = torch.nn.utils.clip_grad_norm_(list(parameters.values()), config.grad_clip)
    if not math.isfinite(float(grad_norm)):
        raise TrainingDiverged(steps, lr, previous_norms, 'gradient norm is not finite')
    optimizer.step()
    scheduler.step()

    return StepResult(float(loss.detach()), float(grad_norm), lr, steps)


def _grad_norms(parameters):
    # norms of the gradients of the last applied update
    norms = {name: float(parameter.grad.norm()) for name, parameter in parameters.items()
             if parameter.grad is not None}
    if not norms:
        return {}
    largest = max(norms, key=norms.get)
    return {'global': math.sqrt(sum(norm ** 2 for norm in norms.values())), largest: norms[largest]}
