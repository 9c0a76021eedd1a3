from pydantic import BaseModel, Field

from domain.config.diffusion import default_steps, default_beta_min, default_beta_max, default_trials, \
    default_sigma
from domain.config.model import default_blocks, default_heads, default_mlp_ratio, default_column_width, \
    default_attention_width
from domain.config.training import default_epochs, default_batch_size, default_learning_rate, \
    default_weight_decay, default_adam_betas, default_grad_clip, default_train_samples, default_n_max, \
    default_checkpoint_every
from domain.diffusion.schedule import ScheduleConfig
from domain.model.model_config import ModelConfig


class TrainConfig(BaseModel):
    """
    Everything that determines a training run, loaded from the --config JSON file of the train command
    """
    epochs: int = Field(default=default_epochs, ge=0)
    batch_size: int = Field(default=default_batch_size, ge=1)
    learning_rate: float = Field(default=default_learning_rate, gt=0)
    weight_decay: float = Field(default=default_weight_decay, ge=0)
    adam_betas: tuple[float, float] = default_adam_betas
    grad_clip: float = Field(default=default_grad_clip, gt=0)
    train_samples: int = Field(default=default_train_samples, ge=1)
    n_max: int = Field(default=default_n_max, ge=1)
    seed: int = Field(default=0, ge=0)
    checkpoint_every: int = Field(default=default_checkpoint_every, ge=0)
    stitching: bool = True

    steps: int = Field(default=default_steps, ge=1)
    beta_min: float = Field(default=default_beta_min, gt=0, lt=1)
    beta_max: float = Field(default=default_beta_max, gt=0, lt=1)
    trials: int = Field(default=default_trials, ge=1)
    sigma: float = Field(default=default_sigma, gt=0)

    num_blocks: int = Field(default=default_blocks, ge=1)
    heads: int = Field(default=default_heads, ge=1)
    mlp_ratio: int = Field(default=default_mlp_ratio, ge=1)
    column_width: int = Field(default=default_column_width, ge=1)
    attention_width: int = Field(default=default_attention_width, ge=1)

    def schedule_config(self):
        return ScheduleConfig(steps=self.steps, beta_min=self.beta_min, beta_max=self.beta_max,
                              trials=self.trials, sigma=self.sigma)

    def image_model_config(self, classes, feature_channels):
        """
        The combined image model for a dataset with the given class count and feature width
        """
        return ModelConfig(num_blocks=self.num_blocks, heads=self.heads, classes=classes,
                           feature_channels=feature_channels, n_max=self.n_max, mlp_ratio=self.mlp_ratio,
                           column_width=self.column_width, attention_width=self.attention_width)
