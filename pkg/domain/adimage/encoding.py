import numpy as np

from domain.adimage.ad_image import AdImage, ImageKind, blocks_for
from domain.exceptions.annotation_invalid import AnnotationInvalid
from domain.validation.argument_validation import ensure_positive_int

BACKGROUND_CLASS = 0


def encode_ground_truth(annotation, classes):
    """
    Encodes an annotation as one-hot action, start and end images. Column 0 of the action image is
    the background class. Where instances overlap, the one that starts later owns the frame.
    :param annotation: The Annotation
    :param classes: The class count C, background included
    :return: A tuple of the action, start and end AdImages
    """
    ensure_positive_int(classes, 'classes must be a positive integer (encode_ground_truth).')
    if classes < 2:
        raise ValueError('classes must count the background plus at least one action (encode_ground_truth).')

    num_frames = annotation.num_frames
    for instance in annotation.instances:
        if not 0 <= instance.start <= instance.end < num_frames:
            raise AnnotationInvalid(annotation.video_id,
                                    f'instance [{instance.start}, {instance.end}] is outside 0..{num_frames - 1}')
        if not 1 <= instance.class_id < classes:
            raise AnnotationInvalid(annotation.video_id,
                                    f'class {instance.class_id} is outside 1..{classes - 1}')

    labels = np.full(num_frames, BACKGROUND_CLASS, dtype=np.int64)
    starts = np.zeros(num_frames, dtype=bool)
    ends = np.zeros(num_frames, dtype=bool)
    # instances are sorted by start, so later starts overwrite earlier ones
    for instance in annotation.instances:
        labels[instance.start:instance.end + 1] = instance.class_id
        starts[instance.start] = True
        ends[instance.end] = True

    action = np.zeros((num_frames, classes))
    action[np.arange(num_frames), labels] = 1.0

    return (AdImage(action, blocks_for(ImageKind.ACTION, classes), ImageKind.ACTION),
            AdImage(_boundary_rows(starts), blocks_for(ImageKind.START, classes), ImageKind.START),
            AdImage(_boundary_rows(ends), blocks_for(ImageKind.END, classes), ImageKind.END))


def _boundary_rows(flags):
    # [1, 0] marks a boundary, [0, 1] marks its absence
    return np.stack([flags, ~flags], axis=1).astype(np.float64)
