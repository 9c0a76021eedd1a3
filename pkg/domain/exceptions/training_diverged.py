class TrainingDiverged(ArithmeticError):
    """
    Represents a training step whose loss or gradients are NaN or infinite. The parameters are
    left as they were before the step, and grad_norms describe the last update that was applied.
    """

    def __init__(self, steps, lr, grad_norms, reason='loss is not finite'):
        self.steps = steps
        self.lr = lr
        self.grad_norms = grad_norms
        self.reason = reason
        super().__init__(f'Training diverged, {reason} (diffusion steps={steps}, lr={lr}, '
                         f'grad norms of the previous update={grad_norms})')
