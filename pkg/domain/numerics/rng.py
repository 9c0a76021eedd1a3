from enum import IntEnum

import numpy as np
from nptyping import NDArray, Shape, Int64, Float64
from numpy.random import Generator, Philox, SeedSequence

from domain.exceptions.simplex_invalid import SimplexInvalid
from domain.validation.argument_validation import ensure_non_negative_int, ensure_positive_int

SIMPLEX_TOLERANCE = 1e-9


class Stream(IntEnum):
    """
    Purposes that get their own random substream, so that adding draws for one purpose never
    shifts the numbers seen by another.
    """
    SIGNATURES = 1
    VIDEO = 2
    SPLIT = 3
    MODEL_INIT = 4
    TRAINING = 5
    DETECTION = 6
    DEMO = 7


def create_rng(seed):
    """
    Creates the counter-based generator used for every stochastic operation
    :param seed: A non-negative integer seed
    :return: A numpy Generator backed by Philox
    """
    ensure_non_negative_int(seed, 'seed must be a non-negative integer (create_rng).')
    return Generator(Philox(seed))


def derive_rng(seed, stream, *keys):
    """
    Creates an independent generator for a purpose and optional integer keys, for example
    the video index. Identical arguments always give an identical stream.
    :param seed: The run seed
    :param stream: The Stream the generator is used for
    :param keys: Extra non-negative integers that identify the substream
    :return: A numpy Generator backed by Philox
    """
    ensure_non_negative_int(seed, 'seed must be a non-negative integer (derive_rng).')
    return Generator(Philox(SeedSequence([seed, int(stream), *keys])))


def rng_state(rng):
    """
    Returns the generator state as plain JSON-compatible values
    """
    return _to_plain(rng.bit_generator.state)


def restore_rng(state):
    """
    Rebuilds a generator from the output of rng_state
    """
    bit_generator = Philox()
    plain = dict(state)
    plain['state'] = {
        'counter': np.asarray(state['state']['counter'], dtype=np.uint64),
        'key': np.asarray(state['state']['key'], dtype=np.uint64),
    }
    plain['buffer'] = np.asarray(state['buffer'], dtype=np.uint64)
    bit_generator.state = plain
    return Generator(bit_generator)


def _to_plain(value):
    if isinstance(value, dict):
        return {key: _to_plain(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return [int(item) for item in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    return value


def ensure_simplex(probs, error_message, tolerance=SIMPLEX_TOLERANCE):
    """
    Ensures the vector is a probability distribution
    :param probs: The vector to test
    :param error_message: The message used if the test fails
    :param tolerance: The allowed deviation of the sum from one
    """
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 1 or probs.size == 0 or not np.all(np.isfinite(probs)):
        raise SimplexInvalid(error_message)
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > tolerance:
        raise SimplexInvalid(error_message)


def multinomial_sample(rng, trials, probs) -> NDArray[Shape["*"], Int64]:
    """
    Draws a single multinomial count vector. numpy draws the counts with the exact conditional
    binomial method, so the counts always sum to the trial count.
    :param rng: The generator to draw from
    :param trials: The number of trials
    :param probs: The class probabilities
    :return: The count per class
    """
    ensure_positive_int(trials, 'trials must be a positive integer (multinomial_sample).')
    ensure_simplex(probs, 'probs must be non-negative and sum to 1 (multinomial_sample).')
    return rng.multinomial(trials, _renormalized(probs)).astype(np.int64)


def uniform_multinomial_rows(rng, trials, rows, classes) -> NDArray[Shape["*, *"], Int64]:
    """
    Draws one multinomial count vector per row with uniform class probabilities. Rows are drawn
    in order from the same stream, so the result equals drawing each row with its own call.
    :param rng: The generator to draw from
    :param trials: The number of trials per row
    :param rows: The number of rows
    :param classes: The number of classes
    :return: A rows x classes matrix of counts
    """
    ensure_positive_int(trials, 'trials must be a positive integer (uniform_multinomial_rows).')
    ensure_non_negative_int(rows, 'rows must be a non-negative integer (uniform_multinomial_rows).')
    ensure_positive_int(classes, 'classes must be a positive integer (uniform_multinomial_rows).')
    return rng.multinomial(trials, np.full(classes, 1.0 / classes), size=rows).astype(np.int64)


def _renormalized(probs) -> NDArray[Shape["*"], Float64]:
    # numpy rejects vectors whose leading entries sum past 1 by more than its own epsilon
    probs = np.asarray(probs, dtype=np.float64)
    return probs / probs.sum()
