import math

from domain.evaluation.tiou import tiou


def soft_nms(candidates, sigma, floor):
    """
    Gaussian Soft-NMS across classes. The best remaining candidate is kept and every other
    candidate's score is multiplied by exp(-tIoU^2 / sigma) against it. Candidates that fall
    below the floor are dropped.
    :param candidates: ActionInstance candidates
    :param sigma: The Gaussian decay parameter
    :param floor: The score below which candidates are discarded
    :return: The kept candidates with their decayed scores, by descending score
    """
    remaining = [candidate.model_copy() for candidate in candidates if candidate.score >= floor]
    kept = []
    while remaining:
        best = max(range(len(remaining)), key=lambda index: remaining[index].score)
        selected = remaining.pop(best)
        kept.append(selected)

        survivors = []
        for candidate in remaining:
            overlap = tiou(selected.interval, candidate.interval)
            candidate.score = candidate.score * math.exp(-overlap * overlap / sigma)
            if candidate.score >= floor:
                survivors.append(candidate)
        remaining = survivors

    return kept
