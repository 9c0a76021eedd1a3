import math

import numpy as np


def extract_boundaries(probs, threshold):
    """
    Finds the boundary points of a start or end column. Frames above the threshold are grouped
    into maximal runs, and each run gives the rounded-half-up mean of its frame indices.
    :param probs: The length N column of boundary probabilities
    :param threshold: The boundary threshold delta
    :return: The boundary frame indices in ascending order
    """
    above = np.asarray(probs, dtype=np.float64) > threshold
    points = []
    run_start = None
    for index, flag in enumerate(above):
        if flag and run_start is None:
            run_start = index
        elif not flag and run_start is not None:
            points.append(_centre(run_start, index - 1))
            run_start = None
    if run_start is not None:
        points.append(_centre(run_start, len(above) - 1))
    return points


def _centre(first, last):
    return int(math.floor((first + last) / 2 + 0.5))
