from pydantic import BaseModel, Field, model_validator

from domain.adimage.ad_image import ImageKind, blocks_for, image_width
from domain.config.model import default_blocks, default_heads, default_column_width, default_attention_width, \
    default_mlp_ratio
from domain.config.synthdata import default_classes, default_feature_channels
from domain.config.training import default_n_max


class ModelConfig(BaseModel):
    """
    Shapes of the row-column transformer. Parameter shapes depend on nothing else.
    """
    num_blocks: int = Field(default=default_blocks, ge=1)
    heads: int = Field(default=default_heads, ge=1)
    classes: int = Field(default=default_classes, ge=2)
    feature_channels: int = Field(default=default_feature_channels, ge=1)
    n_max: int = Field(default=default_n_max, ge=1)
    mlp_ratio: int = Field(default=default_mlp_ratio, ge=1)
    column_width: int = Field(default=default_column_width, ge=1)
    attention_width: int = Field(default=default_attention_width, ge=1)
    image_kind: ImageKind = ImageKind.COMBINED

    @model_validator(mode='after')
    def heads_divide_widths(self):
        if self.attention_width % self.heads or self.column_width % self.heads:
            raise ValueError(f'heads ({self.heads}) must divide attention_width ({self.attention_width}) '
                             f'and column_width ({self.column_width})')
        return self

    @property
    def image_width(self):
        return image_width(self.image_kind, self.classes)

    @property
    def image_blocks(self):
        return blocks_for(self.image_kind, self.classes)

    @property
    def token_count(self):
        """
        Width of the concatenation of the image, the features and the step embedding
        """
        return self.image_width + self.feature_channels + 1
