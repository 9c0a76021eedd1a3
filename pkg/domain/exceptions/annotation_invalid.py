class AnnotationInvalid(ValueError):
    """
    Represents a ground truth annotation with frames or classes out of range
    """

    def __init__(self, video_id, reason):
        self.video_id = video_id
        self.reason = reason
        super().__init__(f'Annotation for {video_id} is invalid: {reason}')
