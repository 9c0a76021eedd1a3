from dataclasses import dataclass
from enum import Enum

import numpy as np
from nptyping import NDArray, Shape, Float64

from domain.exceptions.shape_mismatch import ShapeMismatch
from domain.validation.argument_validation import ensure_positive_int, ensure_non_negative_int

# Block layout of each image kind, as (offset, width). The action width depends on the class count.
BOUNDARY_WIDTH = 2


class ImageKind(str, Enum):
    ACTION = 'action'
    START = 'start'
    END = 'end'
    COMBINED = 'combined'


@dataclass(frozen=True)
class AdImage:
    """
    An N x W matrix whose block-rows are discrete distributions. The action image has one block of
    width C, start and end images one block of width 2 (column 0 is "boundary here"), and the
    combined image all three side by side.
    """
    data: NDArray[Shape["*, *"], Float64]
    blocks: tuple
    kind: ImageKind

    @property
    def num_rows(self):
        return self.data.shape[0]

    @property
    def width(self):
        return self.data.shape[1]

    def block(self, index):
        offset, width = self.blocks[index]
        return self.data[:, offset:offset + width]


@dataclass(frozen=True)
class Violation:
    row: int
    block: int
    reason: str


def blocks_for(kind, classes):
    """
    Returns the block layout of an image kind
    :param kind: The ImageKind
    :param classes: The class count C, background included
    :return: A tuple of (offset, width) pairs
    """
    if kind == ImageKind.ACTION:
        return ((0, classes),)
    if kind in (ImageKind.START, ImageKind.END):
        return ((0, BOUNDARY_WIDTH),)
    return (0, classes), (classes, BOUNDARY_WIDTH), (classes + BOUNDARY_WIDTH, BOUNDARY_WIDTH)


def image_width(kind, classes):
    return sum(width for _, width in blocks_for(kind, classes))


def uniform_image(num_rows, kind, classes):
    """
    Builds an image whose every block-row is the uniform distribution
    :param num_rows: The row count N
    :param kind: The ImageKind
    :param classes: The class count C, background included
    :return: The AdImage
    """
    ensure_non_negative_int(num_rows, 'num_rows must be a non-negative integer (uniform_image).')
    ensure_positive_int(classes, 'classes must be a positive integer (uniform_image).')
    blocks = blocks_for(kind, classes)
    data = np.concatenate([np.full((num_rows, width), 1.0 / width) for _, width in blocks], axis=1)
    return AdImage(data, blocks, kind)


def stitch(action, start, end):
    """
    Concatenates the action, start and end images horizontally into the combined image of
    width C + 4
    :return: The combined AdImage
    """
    if not (action.kind == ImageKind.ACTION and start.kind == ImageKind.START and end.kind == ImageKind.END):
        raise ShapeMismatch('stitch expects an action, a start and an end image (stitch).')
    if not (action.num_rows == start.num_rows == end.num_rows):
        raise ShapeMismatch(f'images have {action.num_rows}, {start.num_rows} and {end.num_rows} rows; '
                            f'they must match (stitch).')

    classes = action.width
    data = np.concatenate([action.data, start.data, end.data], axis=1)
    return AdImage(data, blocks_for(ImageKind.COMBINED, classes), ImageKind.COMBINED)


def unstitch(combined):
    """
    Splits a combined image back into its action, start and end images
    :return: A tuple of the three AdImages
    """
    if combined.kind != ImageKind.COMBINED:
        raise ValueError(f'unstitch expects a combined image, got {combined.kind.value} (unstitch).')
    if combined.width < 2 + 2 * BOUNDARY_WIDTH:
        raise ValueError(f'a combined image needs at least 6 columns, got {combined.width} (unstitch).')

    classes = combined.width - 2 * BOUNDARY_WIDTH
    data = combined.data
    return (AdImage(data[:, :classes].copy(), blocks_for(ImageKind.ACTION, classes), ImageKind.ACTION),
            AdImage(data[:, classes:classes + 2].copy(), blocks_for(ImageKind.START, classes), ImageKind.START),
            AdImage(data[:, classes + 2:].copy(), blocks_for(ImageKind.END, classes), ImageKind.END))


def validate(image, tol):
    """
    Reports every block-row that is not a distribution within the tolerance
    :param image: The AdImage to check
    :param tol: The allowed deviation of sums from 1 and of entries from [0, 1]
    :return: A list of Violation, empty when the image is valid
    """
    violations = []
    if sum(width for _, width in image.blocks) != image.width:
        violations.append(Violation(-1, -1, f'blocks cover {sum(w for _, w in image.blocks)} of '
                                            f'{image.width} columns'))
        return violations

    for block_index, (offset, width) in enumerate(image.blocks):
        values = image.data[:, offset:offset + width]
        sums = values.sum(axis=1)
        for row in np.flatnonzero(~np.isfinite(values).all(axis=1)):
            violations.append(Violation(int(row), block_index, 'non-finite entry'))
        for row in np.flatnonzero(np.abs(sums - 1.0) > tol):
            violations.append(Violation(int(row), block_index, f'sum {sums[row]:.12g}'))
        for row in np.flatnonzero(((values < -tol) | (values > 1.0 + tol)).any(axis=1)):
            violations.append(Violation(int(row), block_index, 'entry outside [0, 1]'))

    return violations
