import numpy as np

from domain.adimage.ad_image import AdImage
from domain.exceptions.contract_violation import ContractViolation
from domain.exceptions.schedule_invalid import ScheduleInvalid
from domain.exceptions.simplex_invalid import SimplexInvalid
from domain.numerics.rng import uniform_multinomial_rows

INPUT_TOLERANCE = 1e-6


def forward_step(z_prev, t, schedule, rng, noise=None):
    """
    Adds one step of multinomial noise: z_t = (1 - beta_t) z_{t-1} + beta_t v_t, where v_t is a
    Multinomial(K, uniform) count vector divided by K. Works on a single distribution or on a
    matrix of row distributions, drawing rows in order.
    :param z_prev: Distributions at step t - 1, shape (C,) or (rows, C)
    :param t: The step, 1..T
    :param schedule: The Schedule
    :param rng: The generator to draw from
    :param noise: Optional fixed v_t with the same shape as z_prev, used instead of a draw
    :return: Distributions at step t with the same shape
    """
    if not 1 <= t <= schedule.steps:
        raise ContractViolation(f'step {t} is outside 1..{schedule.steps} (forward_step).')
    rows = _as_rows(z_prev, 'forward_step')

    if noise is None:
        counts = uniform_multinomial_rows(rng, schedule.trials, rows.shape[0], rows.shape[1])
        noise_rows = counts / schedule.trials
    else:
        noise_rows = _as_rows(noise, 'forward_step noise')

    beta = schedule.beta[t]
    return ((1.0 - beta) * rows + beta * noise_rows).reshape(np.shape(z_prev))


def forward_jump(z0, t, schedule, rng):
    """
    Jumps t steps at once: z_t = alpha_bar_t z_0 + (1 - alpha_bar_t) c / n with
    c ~ Multinomial(n, uniform) and n = round(B_t K). A jump of zero steps returns z_0 unchanged
    and draws nothing.
    :param z0: Clean distributions, shape (C,) or (rows, C)
    :param t: The step, 0..T
    :param schedule: The Schedule
    :param rng: The generator to draw from
    :return: Distributions at step t with the same shape
    """
    if not 0 <= t <= schedule.steps:
        raise ContractViolation(f'step {t} is outside 0..{schedule.steps} (forward_jump).')
    rows = _as_rows(z0, 'forward_jump')
    if t == 0:
        return rows.copy().reshape(np.shape(z0))

    trials = schedule.jump_trials(t)
    if trials < 1:
        raise ScheduleInvalid(f'step {t} has no multinomial trials (forward_jump).')

    counts = uniform_multinomial_rows(rng, trials, rows.shape[0], rows.shape[1])
    alpha_bar = schedule.alpha_bar[t]
    return (alpha_bar * rows + (1.0 - alpha_bar) * counts / trials).reshape(np.shape(z0))


def sample_pair(z0, t, schedule, rng):
    """
    Draws (z_{t-1}, z_t) from the joint law of the forward chain: a jump to t - 1 followed by one
    step. This is the supervision pair for the reverse step at t.
    :param z0: Clean distributions, shape (C,) or (rows, C)
    :param t: The step, 1..T
    :param schedule: The Schedule
    :param rng: The generator to draw from
    :return: A tuple (z_{t-1}, z_t)
    """
    if not 1 <= t <= schedule.steps:
        raise ContractViolation(f'step {t} is outside 1..{schedule.steps} (sample_pair).')
    z_prev = forward_jump(z0, t - 1, schedule, rng)
    return z_prev, forward_step(z_prev, t, schedule, rng)


def init_noise(num_rows, blocks, schedule, rng, samples, kind):
    """
    Draws the starting images of the reverse process. Each block-row is an independent
    Multinomial(round(B_T K), uniform) count vector divided by its trial count.
    :param num_rows: The row count N
    :param blocks: The block layout of the image
    :param schedule: The Schedule
    :param rng: The generator to draw from
    :param samples: The number of images M
    :param kind: The ImageKind of the produced images
    :return: A list of M AdImages
    """
    if samples < 1:
        raise ContractViolation(f'samples must be at least 1, got {samples} (init_noise).')

    trials = schedule.jump_trials(schedule.steps)
    images = []
    for _ in range(samples):
        parts = [uniform_multinomial_rows(rng, trials, num_rows, width) / trials for _, width in blocks]
        images.append(AdImage(np.concatenate(parts, axis=1), tuple(blocks), kind))
    return images


def step_image(image, t, schedule, rng):
    """
    Applies forward_step to every block of an image, block by block
    """
    return _map_blocks(image, lambda block: forward_step(block, t, schedule, rng))


def jump_image(image, t, schedule, rng):
    """
    Applies forward_jump to every block of an image, block by block
    """
    return _map_blocks(image, lambda block: forward_jump(block, t, schedule, rng))


def sample_pair_image(image, t, schedule, rng):
    """
    Applies sample_pair to every block of an image
    :return: A tuple of AdImages (x_{t-1}, x_t)
    """
    previous_parts = []
    current_parts = []
    for offset, width in image.blocks:
        previous, current = sample_pair(image.data[:, offset:offset + width], t, schedule, rng)
        previous_parts.append(previous)
        current_parts.append(current)
    return (AdImage(np.concatenate(previous_parts, axis=1), image.blocks, image.kind),
            AdImage(np.concatenate(current_parts, axis=1), image.blocks, image.kind))


def _map_blocks(image, function):
    parts = [function(image.data[:, offset:offset + width]) for offset, width in image.blocks]
    return AdImage(np.concatenate(parts, axis=1), image.blocks, image.kind)


def _as_rows(z, operation):
    rows = np.asarray(z, dtype=np.float64)
    rows = rows.reshape(1, -1) if rows.ndim == 1 else rows.reshape(-1, rows.shape[-1])
    if not np.all(np.isfinite(rows)) or np.any(rows < -INPUT_TOLERANCE) \
            or np.any(np.abs(rows.sum(axis=1) - 1.0) > INPUT_TOLERANCE):
        raise SimplexInvalid(f'input rows must be distributions ({operation}).')
    return rows
