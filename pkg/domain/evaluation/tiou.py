def tiou(a, b):
    """
    Temporal intersection over union of two inclusive frame intervals. [s, e] covers e - s + 1 frames.
    :param a: A (start, end) pair
    :param b: A (start, end) pair
    :return: The overlap in [0, 1]
    """
    intersection = min(a[1], b[1]) - max(a[0], b[0]) + 1
    if intersection <= 0:
        return 0.0
    union = (a[1] - a[0] + 1) + (b[1] - b[0] + 1) - intersection
    return intersection / union
