from dataclasses import dataclass

import numpy as np
from nptyping import NDArray, Shape, Float64
from pydantic import BaseModel, Field

from domain.config.diffusion import default_steps, default_beta_min, default_beta_max, default_trials, \
    default_sigma, max_final_alpha_bar
from domain.exceptions.schedule_invalid import ScheduleInvalid, ConvergenceViolation
from domain.validation.argument_validation import ensure_positive_int


class ScheduleConfig(BaseModel):
    """
    The small header that fully determines a schedule. It is stored inside checkpoints.
    """
    steps: int = Field(default=default_steps, ge=1)
    beta_min: float = Field(default=default_beta_min, gt=0, lt=1)
    beta_max: float = Field(default=default_beta_max, gt=0, lt=1)
    trials: int = Field(default=default_trials, ge=1)
    sigma: float = Field(default=default_sigma, gt=0)


@dataclass(frozen=True)
class Schedule:
    """
    A T step noise schedule. Arrays are indexed by step with index 0 standing for the clean data,
    so beta[0] = 0, alpha_bar[0] = 1 and trial_scale[0] = 1.
    """
    steps: int
    beta: NDArray[Shape["*"], Float64]
    alpha: NDArray[Shape["*"], Float64]
    alpha_bar: NDArray[Shape["*"], Float64]
    trial_scale: NDArray[Shape["*"], Float64]
    sigma: float
    trials: int
    beta_min: float
    beta_max: float

    def jump_trials(self, t):
        """
        The integer trial count of the t step jump, round(B_t K) floored at 1
        """
        return max(1, int(np.floor(self.trial_scale[t] * self.trials + 0.5)))

    def to_config(self):
        return ScheduleConfig(steps=self.steps, beta_min=self.beta_min, beta_max=self.beta_max,
                              trials=self.trials, sigma=self.sigma)


def build_schedule(steps, beta_min, beta_max, trials, sigma=default_sigma, check_convergence=True):
    """
    Builds a schedule with betas ramping linearly from beta_min to beta_max
    :param steps: The step count T
    :param beta_min: The first beta
    :param beta_max: The last beta
    :param trials: The multinomial trial count K
    :param sigma: The fixed posterior normalizer
    :param check_convergence: Reject schedules whose alpha_bar_T is too large to be uniform noise.
    Only tests of the schedule algebra switch this off.
    :return: The Schedule
    """
    ensure_positive_int(steps, 'steps must be a positive integer (build_schedule).')
    ensure_positive_int(trials, 'trials must be a positive integer (build_schedule).')
    if not 0 < beta_min <= beta_max < 1:
        raise ScheduleInvalid(f'betas must satisfy 0 < beta_min <= beta_max < 1, got {beta_min} and {beta_max} '
                              f'(build_schedule).')
    if not sigma > 0:
        raise ScheduleInvalid(f'sigma must be positive, got {sigma} (build_schedule).')

    betas = _linear_betas(steps, beta_min, beta_max)
    schedule = schedule_from_betas(betas, trials, sigma)
    schedule = Schedule(schedule.steps, schedule.beta, schedule.alpha, schedule.alpha_bar, schedule.trial_scale,
                        sigma, trials, beta_min, beta_max)

    if check_convergence and schedule.alpha_bar[-1] > max_final_alpha_bar:
        raise ConvergenceViolation(float(schedule.alpha_bar[-1]), max_final_alpha_bar, beta_min,
                                   _required_beta_max(steps, beta_min))

    return schedule


def schedule_from_config(config, check_convergence=True):
    return build_schedule(config.steps, config.beta_min, config.beta_max, config.trials, config.sigma,
                          check_convergence)


def schedule_from_betas(betas, trials, sigma=default_sigma):
    """
    Builds a schedule from explicit betas. Zero betas are allowed here for noise-free test schedules.
    :param betas: beta_1..beta_T, each in [0, 1)
    :param trials: The multinomial trial count K
    :param sigma: The fixed posterior normalizer
    :return: The Schedule
    """
    betas = np.asarray(betas, dtype=np.float64)
    if betas.ndim != 1 or betas.size == 0 or np.any(betas < 0) or np.any(betas >= 1):
        raise ScheduleInvalid('betas must be a non-empty vector of values in [0, 1) (schedule_from_betas).')

    beta = np.concatenate([[0.0], betas])
    alpha = 1.0 - beta
    alpha_bar = np.cumprod(alpha)

    # Variance of the accumulated noise weights: D_t = alpha_t^2 D_{t-1} + beta_t^2
    denominator = np.zeros_like(beta)
    for t in range(1, beta.size):
        denominator[t] = alpha[t] ** 2 * denominator[t - 1] + beta[t] ** 2

    trial_scale = np.ones_like(beta)
    noisy = denominator > 0
    trial_scale[noisy] = (1.0 - alpha_bar[noisy]) ** 2 / denominator[noisy]
    # (1 - alpha_1)^2 / beta_1^2 is one by algebra, keep it exact
    trial_scale[1] = 1.0

    return Schedule(int(betas.size), beta, alpha, alpha_bar, trial_scale, float(sigma), int(trials),
                    float(betas.min()), float(betas.max()))


def _linear_betas(steps, beta_min, beta_max):
    if steps == 1:
        return np.array([beta_min])
    return np.linspace(beta_min, beta_max, steps)


def _required_beta_max(steps, beta_min):
    # Bisect the smallest beta_max that brings alpha_bar_T under the limit
    def final_alpha_bar(beta_max):
        return np.prod(1.0 - _linear_betas(steps, beta_min, beta_max))

    low, high = beta_min, 1.0 - 1e-12
    if final_alpha_bar(high) > max_final_alpha_bar:
        return float('nan')
    for _ in range(100):
        middle = (low + high) / 2
        if final_alpha_bar(middle) > max_final_alpha_bar:
            low = middle
        else:
            high = middle
    return high
