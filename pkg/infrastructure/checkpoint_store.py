import json
import struct

import numpy as np

from domain.exceptions.format_invalid import FormatInvalid, UnsupportedVersion
from domain.training.checkpoint import Checkpoint, CHECKPOINT_VERSION
from infrastructure.io_wrapper import logging_wrapper

CHECKPOINT_MAGIC = b'ADIC'


@logging_wrapper
def save_checkpoint(path, checkpoint):
    """
    Writes a checkpoint: magic, u32 version, u32 header length, the JSON header, then u32 blob
    count and each blob as u16 name length, name, u32 ndim, u32 dims and little-endian float64 data
    :param path: The output file
    :param checkpoint: The Checkpoint
    """
    header = json.dumps(checkpoint.header(), sort_keys=True, separators=(',', ':')).encode('utf-8')
    with open(path, 'wb') as file:
        file.write(CHECKPOINT_MAGIC)
        file.write(struct.pack('<II', checkpoint.version, len(header)))
        file.write(header)
        file.write(struct.pack('<I', len(checkpoint.blobs)))
        for name in sorted(checkpoint.blobs):
            blob = np.asarray(checkpoint.blobs[name], dtype='<f8')
            encoded = name.encode('utf-8')
            file.write(struct.pack('<H', len(encoded)))
            file.write(encoded)
            file.write(struct.pack('<I', blob.ndim))
            file.write(struct.pack(f'<{blob.ndim}I', *blob.shape))
            file.write(np.ascontiguousarray(blob).tobytes())


@logging_wrapper
def load_checkpoint(path):
    """
    Reads a checkpoint written by save_checkpoint, validating magic, version and length
    :param path: The checkpoint file
    :return: The Checkpoint
    """
    with open(path, 'rb') as file:
        content = file.read()

    reader = _Reader(path, content)
    magic = reader.take(4)
    if magic != CHECKPOINT_MAGIC:
        raise FormatInvalid(path, f'bad magic {magic!r}')
    version, header_length = reader.unpack('<II')
    if version != CHECKPOINT_VERSION:
        raise UnsupportedVersion(path, version, CHECKPOINT_VERSION)

    try:
        header = json.loads(reader.take(header_length).decode('utf-8'))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise FormatInvalid(path, f'unreadable header: {e}') from e

    blobs = {}
    (count,) = reader.unpack('<I')
    for _ in range(count):
        (name_length,) = reader.unpack('<H')
        name = reader.take(name_length).decode('utf-8')
        (ndim,) = reader.unpack('<I')
        shape = reader.unpack(f'<{ndim}I')
        size = int(np.prod(shape)) if ndim else 1
        blobs[name] = np.frombuffer(reader.take(size * 8), dtype='<f8').reshape(shape).astype(np.float64)

    if reader.remaining:
        raise FormatInvalid(path, f'{reader.remaining} unexpected trailing bytes')

    try:
        return Checkpoint.from_header(header, blobs)
    except (KeyError, ValueError) as e:
        raise FormatInvalid(path, f'invalid header: {e}') from e


class _Reader:
    def __init__(self, path, content):
        self.path = path
        self.content = content
        self.offset = 0

    @property
    def remaining(self):
        return len(self.content) - self.offset

    def take(self, size):
        if size > self.remaining:
            raise FormatInvalid(self.path, f'truncated at byte {self.offset}, needed {size} more bytes')
        chunk = self.content[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def unpack(self, layout):
        return struct.unpack(layout, self.take(struct.calcsize(layout)))
