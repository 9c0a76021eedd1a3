import torch

from domain.adimage.ad_image import ImageKind, blocks_for
from domain.numerics.ops import masked_mse

SEPARATE_IMAGES = (ImageKind.ACTION, ImageKind.START, ImageKind.END)


def image_configs(config, stitching):
    """
    Returns the model configuration of every image that gets its own transformer
    :param config: The base ModelConfig
    :param stitching: True for one model over the combined image, False for one model per image
    :return: A dict of image name to ModelConfig, in processing order
    """
    kinds = (ImageKind.COMBINED,) if stitching else SEPARATE_IMAGES
    return {kind.value: config.model_copy(update={'image_kind': kind}) for kind in kinds}


class Denoiser:
    """
    The reverse step over the combined image. With stitching a single model sees all C + 4
    columns; without it the action, start and end columns go through their own models and the
    outputs are concatenated again.
    """

    def __init__(self, models):
        self.models = dict(models)
        first = next(iter(self.models.values()))
        self.classes = first.config.classes
        self.blocks = blocks_for(ImageKind.COMBINED, self.classes)

    @property
    def stitched(self):
        return ImageKind.COMBINED.value in self.models

    def __call__(self, x_t, features, step, mask):
        if self.stitched:
            return self.models[ImageKind.COMBINED.value](x_t, features, step, mask)
        return torch.cat([self.models[name](x_t[..., columns], features, step, mask)
                          for name, columns in self._columns()], dim=-1)

    def loss(self, prediction, target, mask):
        """
        MSE against the target over the valid rows. Separate models contribute the sum of their
        per-image losses.
        """
        if self.stitched:
            return masked_mse(prediction, target, mask)
        return sum(masked_mse(prediction[..., columns], target[..., columns], mask)
                   for _, columns in self._columns())

    def named_parameters(self):
        """
        :return: A dict of "<image>.<parameter>" to parameter tensor, in a fixed order
        """
        return {f'{image}.{name}': parameter
                for image, model in self.models.items()
                for name, parameter in model.named_parameters()}

    def _columns(self):
        for kind, (offset, width) in zip(SEPARATE_IMAGES, self.blocks):
            yield kind.value, slice(offset, offset + width)
