import math
import time
from dataclasses import dataclass

import torch
from pydantic import BaseModel
from tqdm import tqdm

from domain.diffusion.schedule import schedule_from_config
from domain.exceptions.contract_violation import ContractViolation
from domain.exceptions.shape_mismatch import ShapeMismatch
from domain.logging.app_logging import configure_logging
from domain.model.denoiser import Denoiser, image_configs
from domain.model.row_column_transformer import RowColumnTransformer, init_model
from domain.numerics.rng import Stream, derive_rng, restore_rng, rng_state
from domain.training.batching import make_batch
from domain.training.checkpoint import Checkpoint, MODEL_PREFIX, ADAM_PREFIX
from domain.training.optimization import create_optimizer, create_scheduler, current_lr
from domain.training.train_step import train_step

logger = configure_logging(__name__)

ADAM_MOMENTS = ('exp_avg', 'exp_avg_sq', 'step')


class EpochMetrics(BaseModel):
    epoch: int
    mean_loss: float
    lr: float
    wall_ms: float


@dataclass
class TrainingState:
    """
    The mutable state threaded through the epochs of a run
    """
    denoiser: Denoiser
    optimizer: torch.optim.Optimizer
    scheduler: torch.optim.lr_scheduler.LambdaLR
    rng: object
    model_config: object
    epoch: int = 0
    step: int = 0


def steps_per_epoch(num_videos, batch_size):
    return math.ceil(num_videos / batch_size)


def initial_state(config, dataset):
    """
    A fresh run: models initialized from the model-init stream, training draws from the training stream
    """
    model_config = config.image_model_config(dataset.classes, dataset.feature_channels)
    init_rng = derive_rng(config.seed, Stream.MODEL_INIT)
    denoiser = Denoiser({name: init_model(image_config, init_rng)
                         for name, image_config in image_configs(model_config, config.stitching).items()})

    optimizer = create_optimizer(list(denoiser.named_parameters().values()), config)
    scheduler = create_scheduler(optimizer, _total_steps(config, dataset))
    return TrainingState(denoiser, optimizer, scheduler, derive_rng(config.seed, Stream.TRAINING), model_config)


def denoiser_from_checkpoint(checkpoint):
    """
    Rebuilds the trained models of a checkpoint
    :param checkpoint: The Checkpoint
    :return: The Denoiser
    """
    models = {name: RowColumnTransformer(image_config)
              for name, image_config in image_configs(checkpoint.model_config, checkpoint.stitching).items()}
    denoiser = Denoiser(models)

    stored = checkpoint.parameters()
    with torch.no_grad():
        for name, parameter in denoiser.named_parameters().items():
            if name not in stored:
                raise ShapeMismatch(f'checkpoint has no parameter {name} (denoiser_from_checkpoint).')
            if tuple(stored[name].shape) != tuple(parameter.shape):
                raise ShapeMismatch(f'parameter {name} is {tuple(stored[name].shape)} in the checkpoint but '
                                    f'{tuple(parameter.shape)} in the model (denoiser_from_checkpoint).')
            parameter.copy_(torch.from_numpy(stored[name]))
    return denoiser


def state_from_checkpoint(checkpoint, dataset):
    """
    Restores parameters, optimizer moments, learning rate schedule and generator exactly as saved
    """
    config = checkpoint.train_config
    denoiser = denoiser_from_checkpoint(checkpoint)
    parameters = denoiser.named_parameters()
    optimizer = create_optimizer(list(parameters.values()), config)

    moments = checkpoint.optimizer_moments()
    state = {}
    for index, name in enumerate(parameters):
        entry = {moment: _moment_tensor(moment, moments[f'{name}.{moment}'])
                 for moment in ADAM_MOMENTS if f'{name}.{moment}' in moments}
        if entry:
            state[index] = entry
    if checkpoint.optimizer_groups:
        groups = [dict(group, params=list(range(len(parameters)))) for group in checkpoint.optimizer_groups]
        optimizer.load_state_dict({'state': state, 'param_groups': groups})

    scheduler = create_scheduler(optimizer, _total_steps(config, dataset))
    if checkpoint.scheduler_state:
        scheduler.load_state_dict(dict(checkpoint.scheduler_state))
        for group, lr in zip(optimizer.param_groups, scheduler.get_last_lr()):
            group['lr'] = lr

    return TrainingState(denoiser, optimizer, scheduler, restore_rng(checkpoint.rng_state),
                         checkpoint.model_config, checkpoint.epoch, checkpoint.step)


def checkpoint_from_state(state, config):
    """
    Captures the training state between optimizer steps
    """
    parameters = state.denoiser.named_parameters()
    blobs = {MODEL_PREFIX + name: parameter.detach().numpy().copy() for name, parameter in parameters.items()}
    for name, parameter in parameters.items():
        for moment, value in sorted(state.optimizer.state.get(parameter, {}).items()):
            blobs[f'{ADAM_PREFIX}{name}.{moment}'] = value.detach().to(torch.float64).numpy().copy()

    groups = [{key: _plain(value) for key, value in group.items() if key != 'params'}
              for group in state.optimizer.state_dict()['param_groups']]
    scheduler_state = {key: _plain(value) for key, value in state.scheduler.state_dict().items()}

    return Checkpoint(train_config=config, model_config=state.model_config, epoch=state.epoch, step=state.step,
                      rng_state=rng_state(state.rng), optimizer_groups=groups, scheduler_state=scheduler_state,
                      blobs=blobs)


def train(config, dataset, on_epoch=None, on_checkpoint=None, progress=True):
    """
    Trains a fresh model on the training split
    :param config: The TrainConfig
    :param dataset: The VideoDataset
    :param on_epoch: Called with the EpochMetrics of every finished epoch
    :param on_checkpoint: Called with a Checkpoint every config.checkpoint_every epochs
    :param progress: Show a progress bar per epoch
    :return: The final Checkpoint
    """
    _ensure_training_videos(dataset)
    return _run(initial_state(config, dataset), config, dataset, on_epoch, on_checkpoint, progress)


def resume_training(checkpoint, dataset, on_epoch=None, on_checkpoint=None, progress=True):
    """
    Continues a run from a checkpoint up to its configured epoch count. The result is identical to
    a run that was never interrupted.
    """
    _ensure_training_videos(dataset)
    return _run(state_from_checkpoint(checkpoint, dataset), checkpoint.train_config, dataset, on_epoch,
                on_checkpoint, progress)


def _run(state, config, dataset, on_epoch, on_checkpoint, progress):
    schedule = schedule_from_config(config.schedule_config())
    train_indices = dataset.split_indices('train')
    logger.info(f'Training on {len(train_indices)} videos, epochs {state.epoch + 1} to {config.epochs}, '
                f'{steps_per_epoch(len(train_indices), config.batch_size)} steps per epoch')

    for epoch in range(state.epoch, config.epochs):
        start_time = time.perf_counter()
        order = state.rng.permutation(len(train_indices))
        losses = []

        offsets = range(0, len(train_indices), config.batch_size)
        for offset in tqdm(offsets, desc=f'epoch {epoch + 1}/{config.epochs}', disable=not progress, leave=False):
            batch = make_batch(dataset, [train_indices[i] for i in order[offset:offset + config.batch_size]],
                               config.n_max)
            result = train_step(state.denoiser, state.optimizer, state.scheduler, batch, schedule, state.rng,
                                config)
            losses.append(result.loss)
            state.step += 1

        state.epoch = epoch + 1
        metrics = EpochMetrics(epoch=state.epoch, mean_loss=sum(losses) / len(losses),
                               lr=current_lr(state.optimizer), wall_ms=(time.perf_counter() - start_time) * 1000)
        logger.info(f'Epoch {metrics.epoch}: mean loss {metrics.mean_loss:.6g}, lr {metrics.lr:.3g}, '
                    f'{metrics.wall_ms:.0f} ms')
        if on_epoch:
            on_epoch(metrics)

        if on_checkpoint and config.checkpoint_every and state.epoch % config.checkpoint_every == 0 \
                and state.epoch < config.epochs:
            on_checkpoint(checkpoint_from_state(state, config))

    return checkpoint_from_state(state, config)


def _total_steps(config, dataset):
    return config.epochs * steps_per_epoch(len(dataset.train_ids), config.batch_size)


def _ensure_training_videos(dataset):
    if not dataset.train_ids:
        raise ContractViolation('the dataset has no training videos (train).')


def _moment_tensor(moment, blob):
    if moment == 'step':
        return torch.tensor(float(blob))
    return torch.from_numpy(blob.copy())


def _plain(value):
    if isinstance(value, tuple):
        return list(value)
    if isinstance(value, torch.Tensor):
        return value.item()
    return value
