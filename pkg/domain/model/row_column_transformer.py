import math

import numpy as np
import torch
import torch.nn as nn

from domain.config.model import positional_init_std
from domain.exceptions.shape_mismatch import ShapeMismatch
from domain.logging.app_logging import configure_logging
from domain.numerics.ops import block_softmax, conv1d_rows, ensure_finite

logger = configure_logging(__name__)


class MultiHeadSelfAttention(nn.Module):
    """
    Scaled dot product self-attention over the second to last dimension. Tokens are projected
    from in_dim to width, split into heads, and projected back to in_dim.
    """

    def __init__(self, in_dim, width, heads):
        super().__init__()
        self.heads = heads
        self.query = nn.Linear(in_dim, width)
        self.key = nn.Linear(in_dim, width)
        self.value = nn.Linear(in_dim, width)
        self.out = nn.Linear(width, in_dim)

    def forward(self, x, key_mask=None):
        leading, tokens = x.shape[:-2], x.shape[-2]
        head_dim = self.query.out_features // self.heads

        def split(projected):
            return projected.reshape(*leading, tokens, self.heads, head_dim).transpose(-2, -3)

        q, k, v = split(self.query(x)), split(self.key(x)), split(self.value(x))
        logits = q @ k.transpose(-1, -2) / math.sqrt(head_dim)
        if key_mask is not None:
            logits = logits.masked_fill(~key_mask[..., None, None, :], torch.finfo(logits.dtype).min)
        attended = torch.softmax(logits, dim=-1) @ v
        return self.out(attended.transpose(-2, -3).reshape(*leading, tokens, -1))


class FeedForward(nn.Sequential):
    def __init__(self, dim, ratio):
        super().__init__(nn.Linear(dim, dim * ratio), nn.GELU(), nn.Linear(dim * ratio, dim))


class ColumnStage(nn.Module):
    """
    Attention between the columns (classes, boundary flags, feature channels, step). Each entry
    is lifted to a small embedding with frame-shared weights, the column tokens attend to each other
    within a frame, and the result is projected back to one value per entry. Nothing mixes frames,
    so the stage is independent of the row count.
    """

    def __init__(self, tokens, width, heads, mlp_ratio):
        super().__init__()
        self.lift = nn.Linear(1, width)
        self.position = nn.Parameter(torch.zeros(tokens, width))
        self.attention_norm = nn.LayerNorm(width)
        self.attention = MultiHeadSelfAttention(width, width, heads)
        self.mlp_norm = nn.LayerNorm(width)
        self.mlp = FeedForward(width, mlp_ratio)
        self.project = nn.Linear(width, 1)

    def forward(self, x):
        hidden = self.lift(x.unsqueeze(-1)) + self.position
        hidden = hidden + self.attention(self.attention_norm(hidden))
        hidden = hidden + self.mlp(self.mlp_norm(hidden))
        return x + self.project(hidden).squeeze(-1)


class RowStage(nn.Module):
    """
    Temporal processing across rows: a 1x3 convolution for local structure, then attention
    between the row tokens for long range structure. Padded rows are zeroed before the convolution,
    excluded as attention keys, and zeroed on output.
    """

    def __init__(self, tokens, n_max, attention_width, heads, mlp_ratio):
        super().__init__()
        self.conv_norm = nn.LayerNorm(tokens)
        self.conv_weight = nn.Parameter(torch.zeros(tokens, tokens, 3))
        self.conv_bias = nn.Parameter(torch.zeros(tokens))
        self.position = nn.Parameter(torch.zeros(n_max, tokens))
        self.attention_norm = nn.LayerNorm(tokens)
        self.attention = MultiHeadSelfAttention(tokens, attention_width, heads)
        self.mlp_norm = nn.LayerNorm(tokens)
        self.mlp = FeedForward(tokens, mlp_ratio)

    def forward(self, x, mask):
        valid = mask.unsqueeze(-1).to(x.dtype)
        local = conv1d_rows(self.conv_norm(x) * valid, self.conv_weight, self.conv_bias)
        u = (x + local) * valid
        u = u + self.position[:x.shape[-2]]
        u = (u + self.attention(self.attention_norm(u), key_mask=mask)) * valid
        return (u + self.mlp(self.mlp_norm(u))) * valid


class RowColumnBlock(nn.Module):
    def __init__(self, config):
        super().__init__()
        self.column = ColumnStage(config.token_count, config.column_width, config.heads, config.mlp_ratio)
        self.row = RowStage(config.token_count, config.n_max, config.attention_width, config.heads,
                            config.mlp_ratio)

    def forward(self, x, mask):
        return self.row(self.column(x), mask)


class RowColumnTransformer(nn.Module):
    """
    The reverse step denoiser. Given the noisy image at step t, the video features and the step
    embedding, it predicts the image at step t - 1. Every block-row of the output is a distribution
    and padded rows are uniform.
    """

    def __init__(self, config):
        super().__init__()
        self.config = config
        self.blocks = nn.ModuleList([RowColumnBlock(config) for _ in range(config.num_blocks)])
        self.head_norm = nn.LayerNorm(config.token_count)
        self.head = nn.Linear(config.token_count, config.image_width)
        self.double()

    def forward(self, x_t, features, step, mask):
        """
        :param x_t: (B, N, W) noisy images
        :param features: (B, N, C_ST) video features
        :param step: (B, N, 1) step embeddings
        :param mask: (B, N) boolean, true on real frames
        :return: (B, N, W) predicted images
        """
        self._check_shapes(x_t, features, step, mask)

        x = torch.cat([x_t, features, step], dim=-1)
        for index, block in enumerate(self.blocks):
            x = ensure_finite(block(x, mask), f'row-column block {index}')

        output = block_softmax(self.head(self.head_norm(x)), self.config.image_blocks)
        uniform = torch.cat([torch.full((width,), 1.0 / width, dtype=output.dtype)
                             for _, width in self.config.image_blocks])
        return torch.where(mask.unsqueeze(-1), output, uniform)

    def _check_shapes(self, x_t, features, step, mask):
        config = self.config
        if x_t.dim() != 3 or x_t.shape[-1] != config.image_width:
            raise ShapeMismatch(f'x_t must be (B, N, {config.image_width}), got {tuple(x_t.shape)}.')
        batch, rows = x_t.shape[:2]
        if rows > config.n_max:
            raise ShapeMismatch(f'{rows} rows exceed n_max={config.n_max}.')
        if tuple(features.shape) != (batch, rows, config.feature_channels):
            raise ShapeMismatch(f'features must be ({batch}, {rows}, {config.feature_channels}), '
                                f'got {tuple(features.shape)}.')
        if tuple(step.shape) != (batch, rows, 1):
            raise ShapeMismatch(f'step must be ({batch}, {rows}, 1), got {tuple(step.shape)}.')
        if tuple(mask.shape) != (batch, rows) or mask.dtype != torch.bool:
            raise ShapeMismatch(f'mask must be a boolean ({batch}, {rows}) tensor, got {tuple(mask.shape)}.')


def init_model(config, rng):
    """
    Creates a model with Xavier-uniform weights, zero biases, unit layer norms and small normal
    positional embeddings, all drawn from the given generator
    :param config: The ModelConfig
    :param rng: A numpy Generator
    :return: The RowColumnTransformer
    """
    model = RowColumnTransformer(config)
    with torch.no_grad():
        for name, parameter in model.named_parameters():
            parameter.copy_(torch.from_numpy(_initial_value(name, tuple(parameter.shape), rng)))
    logger.debug(f'Initialized model with {sum(p.numel() for p in model.parameters())} parameters')
    return model


def _initial_value(name, shape, rng):
    leaf = name.rsplit('.', 1)[-1]
    if leaf == 'position':
        return rng.normal(0.0, positional_init_std, size=shape)
    if 'norm' in name:
        return np.ones(shape) if leaf == 'weight' else np.zeros(shape)
    if len(shape) == 1:
        return np.zeros(shape)

    receptive_field = int(np.prod(shape[2:])) if len(shape) > 2 else 1
    fan_out, fan_in = shape[0] * receptive_field, shape[1] * receptive_field
    bound = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)
