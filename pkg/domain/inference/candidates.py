from domain.adimage.ad_image import unstitch
from domain.inference.action_instance import ActionInstance
from domain.inference.boundaries import extract_boundaries


def generate_candidates(image, threshold, max_candidates, video_id=''):
    """
    Couples every start point with every end point behind it. The class of a candidate is the
    non-background column with the highest mean over its rows, and its score is the geometric
    mean of the start probability, the end probability and that mean class probability.
    :param image: The combined AdImage
    :param threshold: The boundary threshold delta
    :param max_candidates: Keep at most this many candidates, best scores first
    :param video_id: The video the candidates belong to
    :return: A list of ActionInstance sorted by descending score
    """
    action, start, end = unstitch(image)
    starts = extract_boundaries(start.data[:, 0], threshold)
    ends = extract_boundaries(end.data[:, 0], threshold)

    candidates = []
    for s in starts:
        for e in ends:
            if e <= s:
                continue
            mean = action.data[s:e + 1].mean(axis=0)
            class_id = 1 + int(mean[1:].argmax())
            evidence = start.data[s, 0] * end.data[e, 0] * mean[class_id]
            score = min(1.0, max(0.0, float(evidence) ** (1.0 / 3.0)))
            candidates.append(ActionInstance(video_id=video_id, start=s, end=e, class_id=class_id, score=score))

    candidates.sort(key=lambda candidate: (-candidate.score, candidate.start, candidate.end, candidate.class_id))
    return candidates[:max_candidates]
