class ScheduleInvalid(ValueError):
    """
    Represents a noise schedule that can not be used by the diffusion process
    """
    pass


class ConvergenceViolation(ScheduleInvalid):
    """
    Represents a schedule whose final cumulative signal is too large for the last step to be
    indistinguishable from uniform noise
    """

    def __init__(self, alpha_bar_final, limit, beta_min, required_beta_max):
        self.alpha_bar_final = alpha_bar_final
        self.limit = limit
        self.required_beta_max = required_beta_max
        super().__init__(f'Schedule does not converge to uniform noise: alpha_bar_T={alpha_bar_final:.3g} '
                         f'exceeds {limit:g}. With beta_min={beta_min:g}, beta_max must be at least '
                         f'{required_beta_max:.4f} (and below 1).')
