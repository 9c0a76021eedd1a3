from pydantic import BaseModel, Field, model_validator


class ActionInstance(BaseModel):
    """
    A detected (or ground truth) action over the inclusive frames start..end. This is also the
    detection record written as one JSON line.
    """
    video_id: str = ''
    start: int = Field(ge=0)
    end: int = Field(ge=0)
    class_id: int = Field(ge=1)
    score: float = Field(ge=0, le=1)

    @model_validator(mode='after')
    def start_before_end(self):
        if self.start > self.end:
            raise ValueError(f'start {self.start} is after end {self.end}')
        return self

    @property
    def interval(self):
        return self.start, self.end


def ground_truth_instances(annotations):
    """
    Converts annotations to instances with score 1
    :param annotations: A list of Annotation
    :return: A list of ActionInstance
    """
    return [ActionInstance(video_id=annotation.video_id, start=instance.start, end=instance.end,
                           class_id=instance.class_id, score=1.0)
            for annotation in annotations
            for instance in annotation.instances]
