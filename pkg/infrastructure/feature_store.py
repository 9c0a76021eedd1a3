import struct

import numpy as np

from domain.exceptions.format_invalid import FormatInvalid, UnsupportedVersion
from infrastructure.io_wrapper import logging_wrapper

FEATURE_MAGIC = b'ADFT'
FEATURE_VERSION = 1
# magic, version, rows, channels
HEADER = struct.Struct('<4sIII')


@logging_wrapper
def write_features(path, matrix):
    """
    Writes an N x C_ST feature matrix as little-endian float32, row-major, after a 16 byte header
    :param path: The output file
    :param matrix: The features
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0:
        raise ValueError(f'features must be a non-empty N x C_ST matrix, got shape {matrix.shape} (write_features).')

    rows, channels = matrix.shape
    with open(path, 'wb') as file:
        file.write(HEADER.pack(FEATURE_MAGIC, FEATURE_VERSION, rows, channels))
        file.write(np.ascontiguousarray(matrix, dtype='<f4').tobytes())


@logging_wrapper
def read_features(path):
    """
    Reads a feature file written by write_features
    :param path: The feature file
    :return: The N x C_ST matrix as float64
    """
    with open(path, 'rb') as file:
        content = file.read()

    if len(content) < HEADER.size:
        raise FormatInvalid(path, f'{len(content)} bytes is shorter than the header')
    magic, version, rows, channels = HEADER.unpack_from(content)
    if magic != FEATURE_MAGIC:
        raise FormatInvalid(path, f'bad magic {magic!r}')
    if version != FEATURE_VERSION:
        raise UnsupportedVersion(path, version, FEATURE_VERSION)

    expected = HEADER.size + rows * channels * 4
    if len(content) != expected:
        raise FormatInvalid(path, f'expected {expected} bytes for {rows} x {channels} features, found {len(content)}')
    return np.frombuffer(content, dtype='<f4', offset=HEADER.size).reshape(rows, channels).astype(np.float64)
