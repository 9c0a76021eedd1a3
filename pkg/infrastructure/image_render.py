import numpy as np

from infrastructure.io_wrapper import logging_wrapper


def to_gray(image):
    """
    Maps every probability to a byte, round(255 v) with halves rounded up. Rows are frames and
    columns are the image columns.
    """
    values = np.clip(image.data, 0.0, 1.0) * 255.0
    return np.floor(values + 0.5).astype(np.uint8)


@logging_wrapper
def write_pgm(path, image, scale=1):
    """
    Writes an AdImage as a binary PGM, each entry drawn as a scale x scale square
    :param path: The output file
    :param image: The AdImage
    :param scale: The pixel size of one entry
    """
    if isinstance(scale, bool) or not isinstance(scale, int) or scale < 1:
        raise ValueError('scale must be a positive integer (write_pgm).')
    gray = np.kron(to_gray(image), np.ones((scale, scale), dtype=np.uint8))
    rows, columns = gray.shape
    with open(path, 'wb') as file:
        file.write(f'P5\n{columns} {rows}\n255\n'.encode('ascii'))
        file.write(gray.tobytes())
