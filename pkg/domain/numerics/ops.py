import torch
import torch.nn.functional as F

from domain.exceptions.numeric_error import NumericError
from domain.exceptions.shape_mismatch import ShapeMismatch


def ensure_finite(tensor, op_name):
    """
    Raises a NumericError naming the operation if the tensor holds NaN or infinite values
    :param tensor: The tensor to test
    :param op_name: The operation or stage that produced the tensor
    :return: The tensor, so the call can be chained
    """
    if not torch.isfinite(tensor).all():
        raise NumericError(op_name)
    return tensor


def softmax_rows(m):
    """
    Normalizes every row (the last dimension) into a probability distribution
    :param m: A finite tensor
    :return: A tensor of the same shape whose rows sum to 1
    """
    ensure_finite(m, 'softmax_rows input')
    return torch.softmax(m, dim=-1)


def block_softmax(m, blocks):
    """
    Applies softmax_rows to each column block independently, which keeps every block-row of an
    AD image a valid distribution
    :param m: A tensor whose last dimension is covered by the blocks
    :param blocks: A sequence of (offset, width) pairs
    :return: A tensor of the same shape
    """
    if sum(width for _, width in blocks) != m.shape[-1]:
        raise ShapeMismatch(f'blocks cover {sum(w for _, w in blocks)} columns but the input has '
                            f'{m.shape[-1]} (block_softmax).')
    return torch.cat([softmax_rows(m[..., offset:offset + width]) for offset, width in blocks], dim=-1)


def conv1d_rows(m, kernel, bias=None):
    """
    Convolves along the row (frame) axis with a width 3 kernel and zero padding of 1, treating the
    columns as channels. Rows are the second to last dimension, so batched input works too.
    :param m: A (..., rows, in_channels) tensor
    :param kernel: An (out_channels, in_channels, 3) tensor
    :param bias: An optional (out_channels,) tensor
    :return: A (..., rows, out_channels) tensor
    """
    if kernel.dim() != 3 or kernel.shape[2] != 3:
        raise ShapeMismatch(f'kernel must have shape (out, in, 3), got {tuple(kernel.shape)} (conv1d_rows).')
    if kernel.shape[1] != m.shape[-1]:
        raise ShapeMismatch(f'kernel expects {kernel.shape[1]} input channels but the input has '
                            f'{m.shape[-1]} columns (conv1d_rows).')

    leading = m.shape[:-2]
    flat = m.reshape(-1, m.shape[-2], m.shape[-1]).transpose(1, 2)
    result = F.conv1d(flat, kernel, bias, padding=1).transpose(1, 2)
    return result.reshape(*leading, m.shape[-2], kernel.shape[0])


def masked_mse(prediction, target, mask):
    """
    Mean squared error over the valid rows of each example, averaged over examples
    :param prediction: A (batch, rows, cols) tensor
    :param target: A tensor with the same shape as prediction
    :param mask: A (batch, rows) boolean or 0/1 tensor, 1 on valid rows
    :return: A scalar tensor
    """
    if prediction.shape != target.shape:
        raise ShapeMismatch(f'prediction {tuple(prediction.shape)} and target {tuple(target.shape)} '
                            f'differ (masked_mse).')
    weights = mask.to(prediction.dtype)
    squared = ((prediction - target) ** 2).mean(dim=-1)
    per_example = (squared * weights).sum(dim=-1) / weights.sum(dim=-1).clamp(min=1.0)
    return per_example.mean()
