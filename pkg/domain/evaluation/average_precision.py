import numpy as np

from domain.evaluation.tiou import tiou


def average_precision(predictions, ground_truths, class_id, threshold):
    """
    Average precision of one class at one tIoU threshold. Predictions are visited by descending
    score and each takes the unmatched ground truth of its video and class with the highest tIoU
    at or above the threshold. AP is the area under the precision envelope.
    :param predictions: ActionInstance detections of any class
    :param ground_truths: ActionInstance ground truths of any class
    :param class_id: The class to score
    :param threshold: The tIoU threshold
    :return: The AP, 0 when the class has no ground truth
    """
    truths = [truth for truth in ground_truths if truth.class_id == class_id]
    if not truths:
        return 0.0
    # stable sort keeps file order among equal scores
    ranked = sorted((prediction for prediction in predictions if prediction.class_id == class_id),
                    key=lambda prediction: -prediction.score)
    if not ranked:
        return 0.0

    matched = [False] * len(truths)
    hits = np.zeros(len(ranked))
    for rank, prediction in enumerate(ranked):
        best, best_overlap = -1, -1.0
        for index, truth in enumerate(truths):
            if matched[index] or truth.video_id != prediction.video_id:
                continue
            overlap = tiou(prediction.interval, truth.interval)
            if overlap >= threshold and overlap > best_overlap:
                best, best_overlap = index, overlap
        if best >= 0:
            matched[best] = True
            hits[rank] = 1.0

    true_positives = np.cumsum(hits)
    recall = true_positives / len(truths)
    precision = true_positives / np.arange(1, len(ranked) + 1)
    return interpolated_area(precision, recall)


def interpolated_area(precision, recall):
    """
    Area under the precision-recall curve after replacing each precision by the best precision
    at any higher recall
    """
    envelope = np.concatenate([[0.0], precision, [0.0]])
    levels = np.concatenate([[0.0], recall, [1.0]])
    for index in range(len(envelope) - 2, -1, -1):
        envelope[index] = max(envelope[index], envelope[index + 1])
    steps = np.flatnonzero(levels[1:] != levels[:-1]) + 1
    return float(np.sum((levels[steps] - levels[steps - 1]) * envelope[steps]))
