import math

import torch


def cosine_factor(step, total_steps):
    """
    The cosine decay multiplier, 1 at step 0 and 0 after the last step
    """
    if total_steps <= 0:
        return 1.0
    return 0.5 * (1.0 + math.cos(math.pi * min(step, total_steps) / total_steps))


def create_optimizer(parameters, config):
    """
    AdamW with decoupled weight decay over the given parameters
    :param parameters: A list of parameter tensors
    :param config: The TrainConfig
    """
    return torch.optim.AdamW(parameters, lr=config.learning_rate, betas=tuple(config.adam_betas),
                             weight_decay=config.weight_decay)


def create_scheduler(optimizer, total_steps):
    """
    Decays the learning rate from its initial value to zero over total_steps optimizer steps
    """
    return torch.optim.lr_scheduler.LambdaLR(optimizer, lambda step: cosine_factor(step, total_steps))


def current_lr(optimizer):
    return optimizer.param_groups[0]['lr']
