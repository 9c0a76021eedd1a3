from dataclasses import dataclass

import numpy as np

from domain.diffusion.forward_process import forward_jump, forward_step
from domain.exceptions.contract_violation import ContractViolation
from domain.validation.argument_validation import ensure_positive_int


@dataclass(frozen=True)
class DriftRow:
    """
    Monte Carlo checks of the forward process at one step, starting from the one-hot class 0
    """
    t: int
    alpha_bar: float
    jump_drift: float
    step_drift: float
    jump_step_gap: float
    uniform_gap: float


def drift_table(schedule, steps, samples, classes, rng):
    """
    For every requested step, compares the sample means of the t step jump and of t iterated single
    steps with the analytic mean alpha_bar_t z_0 + (1 - alpha_bar_t) / C and with each other
    :param schedule: The Schedule
    :param steps: The steps to report, each 1..T
    :param samples: Rows drawn per estimate
    :param classes: The class count C
    :param rng: The generator to draw from
    :return: A list of DriftRow
    """
    ensure_positive_int(samples, 'samples must be a positive integer (drift_table).')
    ensure_positive_int(classes, 'classes must be a positive integer (drift_table).')
    for t in steps:
        if not 1 <= t <= schedule.steps:
            raise ContractViolation(f'step {t} is outside 1..{schedule.steps} (drift_table).')

    clean = np.zeros((samples, classes))
    clean[:, 0] = 1.0

    rows = []
    for t in steps:
        expected = schedule.alpha_bar[t] * clean[0] + (1.0 - schedule.alpha_bar[t]) / classes
        jumped = forward_jump(clean, t, schedule, rng).mean(axis=0)

        stepped = clean
        for s in range(1, t + 1):
            stepped = forward_step(stepped, s, schedule, rng)
        stepped = stepped.mean(axis=0)

        rows.append(DriftRow(t=int(t),
                             alpha_bar=float(schedule.alpha_bar[t]),
                             jump_drift=float(np.abs(jumped - expected).max()),
                             step_drift=float(np.abs(stepped - expected).max()),
                             jump_step_gap=float(np.abs(jumped - stepped).max()),
                             uniform_gap=float(np.abs(jumped - 1.0 / classes).max())))
    return rows


def format_drift_table(rows):
    lines = [f'{"t":>4} {"alpha_bar":>10} {"jump":>9} {"step":>9} {"gap":>9} {"uniform":>9}']
    for row in rows:
        lines.append(f'{row.t:>4} {row.alpha_bar:>10.4g} {row.jump_drift:>9.5f} {row.step_drift:>9.5f} '
                     f'{row.jump_step_gap:>9.5f} {row.uniform_gap:>9.5f}')
    return '\n'.join(lines)
