from pydantic import BaseModel

from domain.evaluation.average_precision import average_precision
from domain.validation.argument_validation import ensure_not_falsy, ensure_in_range


class EvalReport(BaseModel):
    """
    mAP at each tIoU threshold and their average. Threshold keys are formatted with :g, so 0.5 is "0.5".
    """
    thresholds: list[float]
    mean_ap: dict[str, float]
    average: float
    per_class: dict[str, dict[str, float]]
    num_ground_truth: int
    num_predictions: int


def threshold_key(threshold):
    return f'{threshold:g}'


def map_report(predictions, ground_truths, thresholds):
    """
    Computes the per-class AP and the mAP at every threshold. Classes without ground truth do not
    take part in the mean.
    :param predictions: ActionInstance detections
    :param ground_truths: ActionInstance ground truths
    :param thresholds: Ascending tIoU thresholds
    :return: The EvalReport
    """
    thresholds = [float(threshold) for threshold in thresholds]
    ensure_not_falsy(thresholds, 'thresholds must not be empty (map_report).')
    for threshold in thresholds:
        ensure_in_range(threshold, 0.0, 1.0, 'thresholds must lie in [0, 1] (map_report).')
    if thresholds != sorted(thresholds):
        raise ValueError('thresholds must be ascending (map_report).')

    classes = sorted({truth.class_id for truth in ground_truths})
    per_class = {str(class_id): {threshold_key(threshold): average_precision(predictions, ground_truths, class_id,
                                                                               threshold)
                                 for threshold in thresholds}
                 for class_id in classes}

    mean_ap = {}
    for threshold in thresholds:
        key = threshold_key(threshold)
        values = [per_class[str(class_id)][key] for class_id in classes]
        mean_ap[key] = sum(values) / len(values) if values else 0.0

    return EvalReport(thresholds=thresholds,
                      mean_ap=mean_ap,
                      average=sum(mean_ap.values()) / len(mean_ap),
                      per_class=per_class,
                      num_ground_truth=len(ground_truths),
                      num_predictions=len(predictions))


def format_report_table(report):
    """
    Formats the report as a header line of thresholds and a line of mAP percentages, ending in Avg
    """
    keys = [threshold_key(threshold) for threshold in report.thresholds]
    header = ' '.join(f'{key:>6}' for key in keys) + f' {"Avg":>6}'
    values = ' '.join(f'{report.mean_ap[key] * 100:6.1f}' for key in keys) + f' {report.average * 100:6.1f}'
    return header + '\n' + values
