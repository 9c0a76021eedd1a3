from pydantic import BaseModel, Field, model_validator

from domain.config.synthdata import default_num_videos, default_min_frames, default_max_frames, default_classes, \
    default_feature_channels, default_min_instances, default_max_instances, default_min_length, \
    default_max_length, default_noise_std, default_separation, default_test_fraction


class SynthConfig(BaseModel):
    """
    Parameters of the synthetic dataset, loaded from the --config JSON file of the synth command
    """
    num_videos: int = Field(default=default_num_videos, ge=0)
    min_frames: int = Field(default=default_min_frames, ge=1)
    max_frames: int = Field(default=default_max_frames, ge=1)
    classes: int = Field(default=default_classes, ge=2)
    feature_channels: int = Field(default=default_feature_channels, ge=1)
    min_instances: int = Field(default=default_min_instances, ge=0)
    max_instances: int = Field(default=default_max_instances, ge=0)
    min_length: int = Field(default=default_min_length, ge=1)
    max_length: int = Field(default=default_max_length, ge=1)
    noise_std: float = Field(default=default_noise_std, ge=0)
    separation: float = Field(default=default_separation, gt=0)
    test_fraction: float = Field(default=default_test_fraction, ge=0, le=1)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode='after')
    def ranges_ordered(self):
        for low, high in (('min_frames', 'max_frames'), ('min_instances', 'max_instances'),
                          ('min_length', 'max_length')):
            if getattr(self, low) > getattr(self, high):
                raise ValueError(f'{low} must not exceed {high}')
        return self
