import math

import torch

from domain.exceptions.contract_violation import ContractViolation


def step_embedding(t, steps, num_rows):
    """
    The diffusion step embedding, a column of sin(pi t / 2T) repeated down the rows. It is
    monotone in t, so every step gets a distinct value in [0, 1].
    :param t: The step, 0..T
    :param steps: The step count T
    :param num_rows: The row count N
    :return: An (N, 1) float64 tensor
    """
    if not 0 <= t <= steps:
        raise ContractViolation(f'step {t} is outside 0..{steps} (step_embedding).')
    return torch.full((num_rows, 1), math.sin(math.pi * t / (2 * steps)), dtype=torch.float64)
