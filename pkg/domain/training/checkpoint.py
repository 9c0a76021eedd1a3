from dataclasses import dataclass, field

from domain.diffusion.schedule import ScheduleConfig
from domain.model.model_config import ModelConfig
from domain.training.train_config import TrainConfig

CHECKPOINT_VERSION = 1

# Blob name prefixes. Parameters are "model.<image>.<parameter>", optimizer moments
# "adam.<image>.<parameter>.<moment>".
MODEL_PREFIX = 'model.'
ADAM_PREFIX = 'adam.'


@dataclass
class Checkpoint:
    """
    A training run frozen between optimizer steps. The header holds the configuration, counters,
    scheduler and generator state; the blobs hold the parameter and optimizer tensors as float64 arrays.
    """
    train_config: TrainConfig
    model_config: ModelConfig
    epoch: int
    step: int
    rng_state: dict
    optimizer_groups: list = field(default_factory=list)
    scheduler_state: dict = field(default_factory=dict)
    blobs: dict = field(default_factory=dict)
    version: int = CHECKPOINT_VERSION

    @property
    def schedule_config(self):
        return self.train_config.schedule_config()

    @property
    def stitching(self):
        return self.train_config.stitching

    def parameters(self):
        return {name[len(MODEL_PREFIX):]: blob for name, blob in self.blobs.items() if name.startswith(MODEL_PREFIX)}

    def optimizer_moments(self):
        return {name[len(ADAM_PREFIX):]: blob for name, blob in self.blobs.items() if name.startswith(ADAM_PREFIX)}

    def header(self):
        """
        The JSON header written ahead of the blobs
        """
        return {
            'version': self.version,
            'schedule': self.schedule_config.model_dump(mode='json'),
            'model': self.model_config.model_dump(mode='json'),
            'train': self.train_config.model_dump(mode='json'),
            'epoch': self.epoch,
            'step': self.step,
            'rng': self.rng_state,
            'optimizer_groups': self.optimizer_groups,
            'scheduler': self.scheduler_state,
        }

    @staticmethod
    def from_header(header, blobs):
        train_config = TrainConfig.model_validate(header['train'])
        schedule = ScheduleConfig.model_validate(header['schedule'])
        if schedule != train_config.schedule_config():
            raise ValueError('the schedule header does not match the training configuration (from_header).')
        return Checkpoint(train_config=train_config,
                          model_config=ModelConfig.model_validate(header['model']),
                          epoch=header['epoch'],
                          step=header['step'],
                          rng_state=header['rng'],
                          optimizer_groups=header['optimizer_groups'],
                          scheduler_state=header['scheduler'],
                          blobs=dict(blobs),
                          version=header['version'])
