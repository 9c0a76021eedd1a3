import math
from enum import Enum

import numpy as np

from domain.config.diffusion import lattice_tolerance
from domain.exceptions.contract_violation import ContractViolation


class Transition(str, Enum):
    STEP = 'step'
    JUMP = 'jump'


def forward_logpmf(z, cond, t, schedule, kind):
    """
    Log-likelihood of observing z given cond under one forward step (cond is z_{t-1}) or a t step
    jump (cond is z_0). z is mapped back to the multinomial count vector that would have produced it,
    and the multinomial pmf is evaluated with log-gamma in place of factorials.
    :param z: The observed distribution
    :param cond: The conditioning distribution
    :param t: The step
    :param schedule: The Schedule
    :param kind: Transition.STEP or Transition.JUMP
    :return: The log pmf, or -inf when z is not reachable from cond
    """
    z = np.asarray(z, dtype=np.float64)
    cond = np.asarray(cond, dtype=np.float64)
    if z.shape != cond.shape or z.ndim != 1:
        raise ContractViolation('z and cond must be vectors of the same length (forward_logpmf).')

    if kind == Transition.STEP:
        if not 1 <= t <= schedule.steps:
            raise ContractViolation(f'step {t} is outside 1..{schedule.steps} (forward_logpmf).')
        keep, trials = 1.0 - schedule.beta[t], schedule.trials
    else:
        if not 0 <= t <= schedule.steps:
            raise ContractViolation(f'step {t} is outside 0..{schedule.steps} (forward_logpmf).')
        keep, trials = schedule.alpha_bar[t], schedule.jump_trials(t)

    noise_weight = 1.0 - keep
    if noise_weight <= 0:
        return 0.0 if np.allclose(z, cond, rtol=0, atol=lattice_tolerance) else -math.inf

    counts = trials * (z - keep * cond) / noise_weight
    return _multinomial_logpmf(counts, trials)


def posterior_logpmf(z_prev, z_t, z0, t, schedule):
    """
    Unnormalized log posterior of z_{t-1} given z_t and z_0: the step likelihood of z_t from
    z_{t-1}, times the jump likelihood of z_{t-1} from z_0, divided by the fixed sigma.
    :param z_prev: The candidate z_{t-1}
    :param z_t: The observed z_t
    :param z0: The clean z_0
    :param t: The step, 2..T
    :param schedule: The Schedule
    :return: The log posterior up to a constant, -inf off the support
    """
    if not 2 <= t <= schedule.steps:
        raise ContractViolation(f'step {t} is outside 2..{schedule.steps} (posterior_logpmf).')

    step = forward_logpmf(z_t, z_prev, t, schedule, Transition.STEP)
    if step == -math.inf:
        return -math.inf
    jump = forward_logpmf(z_prev, z0, t - 1, schedule, Transition.JUMP)
    if jump == -math.inf:
        return -math.inf
    return step + jump - math.log(schedule.sigma)


def _multinomial_logpmf(counts, trials):
    nearest = np.rint(counts)
    if np.any(counts < -lattice_tolerance) or np.any(np.abs(counts - nearest) > lattice_tolerance):
        return -math.inf
    if abs(counts.sum() - trials) > lattice_tolerance * max(1, counts.size):
        return -math.inf

    counts = np.clip(counts, 0.0, None)
    classes = counts.size
    log_coefficient = math.lgamma(trials + 1) - sum(math.lgamma(count + 1) for count in counts)
    return log_coefficient - trials * math.log(classes)
